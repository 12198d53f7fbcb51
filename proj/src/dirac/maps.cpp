#include "diraclab/dense.hpp"
#include "diraclab/dirac.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/parallel.hpp"

namespace diraclab::dirac {

Eigen::MatrixXd pullback_fiber(const Eigen::MatrixXd& jacobian, const Eigen::MatrixXd& fiber,
                               const std::vector<double>& point) {
  const Eigen::Index m = jacobian.rows(), k = jacobian.cols();
  if (fiber.rows() != 2 * m || fiber.cols() != m) throw ChartMismatch("fiber does not match the map's target");
  const Eigen::MatrixXd v = fiber.topRows(m), mu = fiber.bottomRows(m);
  Eigen::MatrixXd span(m, m + k);
  span << v, jacobian;
  if (numerics::numeric_rank(span) < static_cast<std::size_t>(m)) {
    throw TransversalityError("pullback is not transverse: a(E) + ran(d phi) is not everything at " +
                                  format_point(point),
                              point);
  }
  // Pairs (c, w) with V c = D w; each gives (w, D^T mu c).
  Eigen::MatrixXd relation(m, m + k);
  relation << v, -jacobian;
  const Eigen::MatrixXd kernel = numerics::null_space(relation);
  Eigen::MatrixXd related(2 * k, kernel.cols());
  related.topRows(k) = kernel.bottomRows(k);
  related.bottomRows(k) = jacobian.transpose() * mu * kernel.topRows(m);
  Eigen::MatrixXd basis = numerics::column_space(related);
  if (basis.cols() != k) throw PreconditionError("pullback did not produce a Lagrangian subspace");
  return basis;
}

LagrangianFrame pullback_dirac_at_point(const fields::PolyMap& phi, const LagrangianFrame& e,
                                        const std::vector<double>& n) {
  if (n.size() != phi.source_dim()) throw ChartMismatch("point is not on the map's source chart");
  if (e.dim() != phi.target_dim()) throw ChartMismatch("frame is not on the map's target chart");
  const Eigen::VectorXd image = phi.value_at(n);
  return LagrangianFrame::pointwise(
      pullback_fiber(phi.jacobian_at(n), e.fiber_at(std::span<const double>(image.data(), image.size())), n));
}

LagrangianFrame pullback_dirac_at_point(const fields::NumericMap& phi, const LagrangianFrame& e,
                                        const std::vector<double>& n) {
  if (n.size() != phi.source_dim) throw ChartMismatch("point is not on the map's source chart");
  if (e.dim() != phi.target_dim) throw ChartMismatch("frame is not on the map's target chart");
  const Eigen::VectorXd x = numerics::to_eigen(n);
  const Eigen::VectorXd image = phi.value(x);
  return LagrangianFrame::pointwise(
      pullback_fiber(phi.jacobian_at(x), e.fiber_at(std::span<const double>(image.data(), image.size())), n));
}

CosymplecticResult cosymplectic_check(const PoissonBivector& pi, const std::vector<std::size_t>& vanishing,
                                      const std::vector<std::vector<double>>& points) {
  const std::size_t n = pi.dim();
  std::vector<bool> fixed(n, false);
  for (auto i : vanishing) {
    if (i >= n) throw std::out_of_range("vanishing coordinate out of range");
    fixed[i] = true;
  }
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i)
    if (!fixed[i]) free.push_back(i);
  std::vector<std::size_t> constrained;
  for (std::size_t i = 0; i < n; ++i)
    if (fixed[i]) constrained.push_back(i);

  CosymplecticResult result;
  for (const auto& q : points) {
    if (q.size() != free.size()) throw ChartMismatch("point is not in the submanifold's coordinates");
    std::vector<double> x(n, 0.0);
    for (std::size_t a = 0; a < free.size(); ++a) x[free[a]] = q[a];
    const Eigen::MatrixXd p = pi.matrix_at(x);
    Eigen::MatrixXd assembled(n, n);
    Eigen::MatrixXd fiber(n, constrained.size());
    for (std::size_t a = 0; a < free.size(); ++a) assembled.col(a) = Eigen::VectorXd::Unit(n, free[a]);
    for (std::size_t b = 0; b < constrained.size(); ++b) {
      // pi#(dx_i) has components pi^{ij}, row i of P.
      fiber.col(b) = p.row(constrained[b]).transpose();
      assembled.col(free.size() + b) = fiber.col(b);
    }
    const std::size_t r = numerics::numeric_rank(assembled);
    result.ranks.push_back(r);
    result.fibers.push_back(fiber);
    if (r < n && result.ok) {
      result.ok = false;
      result.witness = x;
    }
  }
  return result;
}

PoissonMapCheck check_poisson_map(const fields::PolyMap& phi, const PoissonBivector& pi_n,
                                  const PoissonBivector& pi_m, MapKind kind) {
  if (pi_n.dim() != phi.source_dim()) throw ChartMismatch("source bivector not on the map's source chart");
  if (pi_m.dim() != phi.target_dim()) throw ChartMismatch("target bivector not on the map's target chart");
  const auto jac = phi.jacobian();
  const std::size_t k = phi.source_dim(), m = phi.target_dim();
  std::vector<Poly> pn(k * k, Poly(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) pn[a * k + b] = pi_n.entry(a, b);
  PoissonMapCheck out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Poly lhs(k);
      for (std::size_t a = 0; a < k; ++a) {
        if (jac[i][a].is_zero()) continue;
        for (std::size_t b = 0; b < k; ++b) {
          if (pn[a * k + b].is_zero() || jac[j][b].is_zero()) continue;
          lhs += jac[i][a] * pn[a * k + b] * jac[j][b];
        }
      }
      Poly rhs = fields::pullback(phi, pi_m.entry(i, j));
      if (kind == MapKind::AntiPoisson) rhs = -rhs;
      if (!(lhs == rhs)) {
        out.ok = false;
        out.failures.emplace_back(i + 1, j + 1);
      }
    }
  return out;
}

ResidualReport check_poisson_map_numeric(const fields::NumericMap& phi, const PoissonBivector& pi_n,
                                         const PoissonBivector& pi_m, const std::vector<std::vector<double>>& samples,
                                         MapKind kind) {
  if (pi_n.dim() != phi.source_dim) throw ChartMismatch("source bivector not on the map's source chart");
  if (pi_m.dim() != phi.target_dim) throw ChartMismatch("target bivector not on the map's target chart");
  const double sign = kind == MapKind::Poisson ? 1.0 : -1.0;
  std::vector<double> residuals(samples.size());
  numerics::parallel_for(samples.size(), [&](std::size_t s) {
    if (samples[s].size() != phi.source_dim) throw ChartMismatch("sample has the wrong dimension");
    const Eigen::VectorXd x = numerics::to_eigen(samples[s]);
    const Eigen::MatrixXd d = phi.jacobian_at(x);
    const Eigen::VectorXd y = phi.value(x);
    const Eigen::MatrixXd lhs = d * pi_n.matrix_at(samples[s]) * d.transpose();
    const Eigen::MatrixXd rhs = sign * pi_m.matrix_at(std::span<const double>(y.data(), y.size()));
    residuals[s] = numerics::max_abs(lhs - rhs);
  });
  ResidualReport report;
  for (std::size_t s = 0; s < samples.size(); ++s) report.record(residuals[s], samples[s]);
  return report;
}

}  // namespace diraclab::dirac
