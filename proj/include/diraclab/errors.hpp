#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace diraclab {

// Operands live on charts of different dimension.
class ChartMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Tensor degree or kind is wrong for the requested operation.
class DegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A structural precondition failed (not Poisson, not Lagrangian, not closed...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A transversality requirement failed at a specific point.
class TransversalityError : public std::runtime_error {
 public:
  TransversalityError(const std::string& what, std::vector<double> point)
      : std::runtime_error(what), point_(std::move(point)) {}
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

// A numerical trajectory left its admissible domain.
class DomainEscape : public std::runtime_error {
 public:
  DomainEscape(const std::string& what, std::vector<double> point)
      : std::runtime_error(what), point_(std::move(point)) {}
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

std::string format_point(const std::vector<double>& p);

}  // namespace diraclab
