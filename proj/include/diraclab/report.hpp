#pragma once

#include <vector>

#include "json.hpp"

namespace diraclab {

// Worst-case residual over a sample set.
struct ResidualReport {
  double max_residual = 0.0;
  std::vector<double> worst_point;
  std::size_t samples = 0;

  // Records one sample; non-finite residuals always become the worst.
  void record(double residual, const std::vector<double>& point);
  void merge(const ResidualReport& other);
  bool within(double tol) const;

  nlohmann::json to_json() const;
};

}  // namespace diraclab
