#include "diraclab/dense.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/ode.hpp"
#include "diraclab/parallel.hpp"
#include "diraclab/poisson.hpp"

namespace diraclab::poisson {

void require_euler_like(const PolyKVector& x) {
  if (x.degree() != 1) throw DegreeError("expected a vector field");
  const std::size_t n = x.dim();
  auto comps = fields::components_of(x);
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(comps[j].constant_term()) != 0) {
      throw PreconditionError("vector field does not vanish at the origin (component " + std::to_string(j + 1) + ")");
    }
    if (!(comps[j].homogeneous_part(1) == Poly::variable(n, j))) {
      throw PreconditionError("linear part is not the Euler field (component " + std::to_string(j + 1) + ")");
    }
  }
}

EulerHomotopy::EulerHomotopy(const PolyKVector& x) : dim_(x.dim()) {
  require_euler_like(x);
  auto comps = fields::components_of(x);
  int top = 0;
  for (const auto& c : comps) top = std::max(top, c.degree());
  for (int d = 2; d <= top; ++d) {
    std::vector<fields::CompiledPoly> part, partial;
    for (const auto& c : comps) {
      Poly h = c.homogeneous_part(d);
      part.emplace_back(h);
      for (std::size_t k = 0; k < dim_; ++k) partial.emplace_back(h.derivative(k));
    }
    parts_.push_back(std::move(part));
    partials_.push_back(std::move(partial));
  }
}

Eigen::VectorXd EulerHomotopy::value(double t, const Eigen::VectorXd& p) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
  double tk = 1.0;
  for (const auto& part : parts_) {
    for (std::size_t j = 0; j < dim_; ++j) v(j) += tk * part[j](p.data());
    tk *= t;
  }
  return v;
}

Eigen::MatrixXd EulerHomotopy::jacobian(double t, const Eigen::VectorXd& p) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
  double tk = 1.0;
  for (const auto& partial : partials_) {
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) m(j, k) += tk * partial[j * dim_ + k](p.data());
    tk *= t;
  }
  return m;
}

EulerResult euler_linearize(const PolyKVector& x, const std::vector<std::vector<double>>& samples,
                            const FlowConfig& config) {
  const EulerHomotopy z(x);
  const std::size_t n = x.dim();
  numerics::VectorField field;
  field.dim = n;
  field.value = [&](double t, const Eigen::VectorXd& p, Eigen::VectorXd& out) { out = z.value(t, p); };
  field.jacobian = [&](double t, const Eigen::VectorXd& p, Eigen::MatrixXd& out) { out = z.jacobian(t, p); };

  numerics::IntegratorOptions opts;
  opts.step = config.step;
  opts.escape_bound = config.escape_bound;

  EulerResult result;
  result.images.resize(samples.size());
  std::vector<double> residuals(samples.size());
  numerics::parallel_for(samples.size(), [&](std::size_t s) {
    if (samples[s].size() != n) throw ChartMismatch("sample point has the wrong dimension");
    auto r = numerics::flow(field, numerics::to_eigen(samples[s]), 1.0, opts, false);
    Eigen::VectorXd xv = x.vector_at(samples[s]);
    // (phi_1)_* X at phi_1(p) against the Euler field there.
    residuals[s] = (r.jacobian * xv - r.point).norm();
    result.images[s] = numerics::to_std(r.point);
  });
  for (std::size_t s = 0; s < samples.size(); ++s) result.residual.record(residuals[s], samples[s]);
  return result;
}

}  // namespace diraclab::poisson
