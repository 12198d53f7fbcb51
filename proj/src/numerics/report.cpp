#include "diraclab/report.hpp"

#include <cmath>
#include <limits>

namespace diraclab {

void ResidualReport::record(double residual, const std::vector<double>& point) {
  if (!std::isfinite(residual)) residual = std::numeric_limits<double>::infinity();
  if (samples == 0 || residual > max_residual) {
    max_residual = residual;
    worst_point = point;
  }
  ++samples;
}

void ResidualReport::merge(const ResidualReport& other) {
  if (other.samples == 0) return;
  if (samples == 0 || other.max_residual > max_residual) {
    max_residual = other.max_residual;
    worst_point = other.worst_point;
  }
  samples += other.samples;
}

bool ResidualReport::within(double tol) const { return max_residual <= tol; }

nlohmann::json ResidualReport::to_json() const {
  nlohmann::json j;
  if (std::isfinite(max_residual)) j["max_residual"] = max_residual;
  else j["max_residual"] = "inf";
  j["worst_point"] = worst_point;
  j["samples"] = samples;
  return j;
}

}  // namespace diraclab
