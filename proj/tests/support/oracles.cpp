#include "oracles.hpp"

namespace oracle {

std::optional<std::string> metrized_violation(const diraclab::poisson::StructureConstants& c, const QMatrix& metric) {
  const std::size_t n = c.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k)
        if (c.at(a, b, k) + c.at(b, a, k) != 0) return "antisymmetry";
  std::vector<QMatrix> ad(n, QMatrix(n, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k) ad[a](k, b) = c.at(a, b, k);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      QMatrix bracket(n, n);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) bracket(i, j) += c.at(a, b, k) * ad[k](i, j);
      }
      if (!(bracket == ad[a] * ad[b] - ad[b] * ad[a])) return "jacobi";
    }
  if (!(metric == metric.transpose())) return "metric symmetry";
  if (!diraclab::numerics::inverse(metric)) return "metric degenerate";
  for (std::size_t a = 0; a < n; ++a) {
    if (!(ad[a].transpose() * metric + metric * ad[a]).is_zero()) return "ad-invariance";
  }
  return std::nullopt;
}

QMatrix gram(const QMatrix& metric, const QMatrix& basis) { return basis.transpose() * metric * basis; }

Poly bracket(const diraclab::fields::PolyKVector& pi, const Poly& f, const Poly& g) {
  const std::size_t n = pi.dim();
  Poly r(n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      if (a == b) continue;
      r += pi.get({a, b}) * f.derivative(a) * g.derivative(b);
    }
  return r;
}

Poly jacobiator_component(const diraclab::fields::PolyKVector& pi, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t n = pi.dim();
  const Poly xi = Poly::variable(n, i), xj = Poly::variable(n, j), xk = Poly::variable(n, k);
  return bracket(pi, xi, bracket(pi, xj, xk)) + bracket(pi, xj, bracket(pi, xk, xi)) +
         bracket(pi, xk, bracket(pi, xi, xj));
}

Section components(const diraclab::dirac::GeneralizedSection& s) {
  return {diraclab::fields::components_of(s.vector), diraclab::fields::components_of(s.form)};
}

Section courant(const Section& s1, const Section& s2) {
  const std::size_t n = s1.vector.size();
  const Poly zero(s1.vector.empty() ? 0 : s1.vector[0].nvars());
  Section r{std::vector<Poly>(n, zero), std::vector<Poly>(n, zero)};
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      // [X1, X2]
      r.vector[k] += s1.vector[j] * s2.vector[k].derivative(j) - s2.vector[j] * s1.vector[k].derivative(j);
      // L_{X1} a2
      r.form[k] += s1.vector[j] * s2.form[k].derivative(j) + s2.form[j] * s1.vector[j].derivative(k);
      // - i_{X2} d a1, with (d a1)_{jk} = d_j a1_k - d_k a1_j
      r.form[k] -= s2.vector[j] * (s1.form[k].derivative(j) - s1.form[j].derivative(k));
    }
  return r;
}

Eigen::Matrix3d rotation(const Eigen::Vector3d& x) {
  const double angle = x.norm();
  Eigen::Matrix3d hat;
  hat << 0, -x(2), x(1), x(2), 0, -x(0), -x(1), x(0), 0;
  if (angle == 0.0) return Eigen::Matrix3d::Identity();
  return Eigen::Matrix3d::Identity() + std::sin(angle) / angle * hat +
         (1 - std::cos(angle)) / (angle * angle) * hat * hat;
}

}  // namespace oracle
