#pragma once

#include <functional>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "CLI11.hpp"

#include "diraclab/cli.hpp"
#include "diraclab/dirac.hpp"
#include "diraclab/maningroup.hpp"
#include "diraclab/poisson.hpp"

namespace diraclab::cli {

// Bad input: unreadable file, malformed JSON, wrong shapes. detail locates it.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, Json detail) : std::runtime_error(what), detail_(std::move(detail)) {}
  const Json& detail() const { return detail_; }

 private:
  Json detail_;
};

struct Context {
  std::uint64_t seed = 0;
  std::optional<double> tol;

  double tolerance(double fallback) const { return tol.value_or(fallback); }
};

// Set by the selected subcommand's callback; run() invokes it after parsing.
using Action = std::function<Report(const Context&)>;

void register_poisson(CLI::App& root, Action& action);
void register_dirac(CLI::App& root, Action& action);
void register_flows(CLI::App& root, Action& action);
void register_manin(CLI::App& root, Action& action);

// io.cpp
Json load_json(const std::string& file);
poisson::PoissonBivector load_bivector(const std::string& file);
fields::PolyKVector load_vector_field(const std::string& file);
fields::PolyKForm load_form(const std::string& file);
fields::Poly load_scalar(const std::string& file);
fields::PolyMap load_map(const std::string& file);
dirac::LagrangianFrame load_frame(const std::string& file);
poisson::FormFamily load_family(const std::string& file);

struct LoadedTriple {
  maningroup::ManinTriple triple;
  std::optional<maningroup::GroupChart> chart;
};
// Triple JSON, or {"builtin": name} for a catalog entry. With with_chart,
// the triple must pass the exact Manin check and a group chart is attached.
LoadedTriple load_triple(const std::string& file, bool with_chart = true);
Json load_member(const std::string& file, const Json& j, const char* key);
maningroup::QMatrix columns_from_json(const Json& j, std::size_t rows, const std::string& file,
                                      const std::string& path);

std::vector<double> parse_point(const std::string& text, std::size_t dim, const std::string& option);
// Seeded points uniform in the box [-half_width, half_width]^dim.
std::vector<std::vector<double>> box_samples(std::size_t dim, std::size_t count, double half_width,
                                             std::uint64_t seed);
// Seeded points uniform in the ball of the given radius.
std::vector<std::vector<double>> ball_samples(std::size_t dim, std::size_t count, double radius,
                                              std::uint64_t seed);

Json matrix_json(const Eigen::MatrixXd& m);
Json vector_json(const Eigen::VectorXd& v);

}  // namespace diraclab::cli
