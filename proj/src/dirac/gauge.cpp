#include "diraclab/dense.hpp"
#include "diraclab/dirac.hpp"
#include "diraclab/errors.hpp"

namespace diraclab::dirac {

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

Poly determinant(const PolyMatrix& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(nvars, 1);
  if (n == 1) return m[0][0];
  Poly det(nvars);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][j] * determinant(minor, nvars);
    if (j % 2 == 0) det += term;
    else det -= term;
  }
  return det;
}

PolyMatrix component_matrix(const fields::PolyKVector& t) {
  const std::size_t n = t.dim();
  PolyMatrix m(n, std::vector<Poly>(n, Poly(n)));
  for (const auto& [idx, p] : t.components()) {
    m[idx[0]][idx[1]] = p;
    m[idx[1]][idx[0]] = -p;
  }
  return m;
}

PolyMatrix component_matrix(const fields::PolyKForm& t) {
  const std::size_t n = t.dim();
  PolyMatrix m(n, std::vector<Poly>(n, Poly(n)));
  for (const auto& [idx, p] : t.components()) {
    m[idx[0]][idx[1]] = p;
    m[idx[1]][idx[0]] = -p;
  }
  return m;
}

}  // namespace

GaugeTransform::GaugeTransform(PolyKForm omega) : omega_(std::move(omega)) {
  if (omega_.degree() != 2) throw DegreeError("a gauge transformation is given by a 2-form");
  if (!fields::exterior_derivative(omega_).is_zero()) throw PreconditionError("gauge 2-form is not closed");
}

Eigen::MatrixXd gauge_fiber(const Eigen::MatrixXd& fiber, const Eigen::MatrixXd& w) {
  const Eigen::Index n = fiber.rows() / 2;
  if (w.rows() != n || w.cols() != n) throw ChartMismatch("2-form matrix has the wrong size");
  Eigen::MatrixXd out = fiber;
  // (i_v omega)_j = omega(v, e_j) = (W^T v)_j.
  out.bottomRows(n) += w.transpose() * fiber.topRows(n);
  return out;
}

LagrangianFrame gauge_transform_fiber(const LagrangianFrame& e, const GaugeTransform& omega, std::span<const double> x) {
  if (omega.form().dim() != e.dim()) throw ChartMismatch("gauge form and frame on different charts");
  return LagrangianFrame::pointwise(gauge_fiber(e.fiber_at(x), omega.form().matrix_at(x)));
}

Eigen::MatrixXd gauge_poisson(const PoissonBivector& pi, const GaugeTransform& omega, const std::vector<double>& x) {
  if (omega.form().dim() != pi.dim()) throw ChartMismatch("gauge form and bivector on different charts");
  return poisson::gauge_bivector_matrix(pi.matrix_at(x), omega.form().matrix_at(x), x);
}

std::optional<PolyKVector> gauge_poisson_symbolic(const PoissonBivector& pi, const GaugeTransform& omega) {
  const std::size_t n = pi.dim();
  if (omega.form().dim() != n) throw ChartMismatch("gauge form and bivector on different charts");
  const PolyMatrix p = component_matrix(pi.tensor());
  const PolyMatrix w = component_matrix(omega.form());
  PolyMatrix m(n, std::vector<Poly>(n, Poly(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) m[i][j] = Poly::constant(n, 1);
      for (std::size_t k = 0; k < n; ++k)
        if (!p[i][k].is_zero() && !w[k][j].is_zero()) m[i][j] += p[i][k] * w[k][j];
    }
  const Poly det = determinant(m, n);
  if (det.is_zero() || !det.is_constant()) return std::nullopt;
  const Rational inv_det = 1 / det.constant_term();
  // adj(M)_{ij} = (-1)^{i+j} minor_{ji}.
  PolyMatrix adj(n, std::vector<Poly>(n, Poly(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Poly> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      Poly c = determinant(minor, n);
      adj[i][j] = ((i + j) % 2 == 0) ? c : -c;
    }
  PolyKVector out(n, 2);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      Poly e(n);
      for (std::size_t k = 0; k < n; ++k)
        if (!adj[i][k].is_zero() && !p[k][j].is_zero()) e += adj[i][k] * p[k][j];
      out.set({i, j}, e * inv_det);
    }
  return out;
}

}  // namespace diraclab::dirac
