#include "diraclab/errors.hpp"
#include "diraclab/maningroup.hpp"

namespace diraclab::maningroup {

namespace {

Eigen::MatrixXd to_dense(const QMatrix& m) {
  Eigen::MatrixXd d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = to_double(m(i, j));
  return d;
}

}  // namespace

CheckResult CheckResult::failure(std::string reason, std::vector<std::size_t> witness) {
  return CheckResult{false, std::move(reason), std::move(witness)};
}

MetrizedLieAlgebra::MetrizedLieAlgebra(StructureConstants c, QMatrix metric)
    : c_(std::move(c)), metric_(std::move(metric)) {
  const std::size_t n = c_.dim();
  if (metric_.rows() != n || metric_.cols() != n) throw ChartMismatch("metric size differs from the algebra");
  metric_d_ = to_dense(metric_);
  for (std::size_t a = 0; a < n; ++a) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) m(l, k) = to_double(c_.at(a, k, l));
    ad_basis_.push_back(std::move(m));
  }
}

std::vector<Rational> MetrizedLieAlgebra::bracket(const std::vector<Rational>& x,
                                                  const std::vector<Rational>& y) const {
  const std::size_t n = dim();
  if (x.size() != n || y.size() != n) throw ChartMismatch("vectors are not in d");
  std::vector<Rational> r(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (sgn(y[b]) == 0) continue;
      const Rational xy = x[a] * y[b];
      for (std::size_t k = 0; k < n; ++k) {
        if (sgn(c_.at(a, b, k)) != 0) r[k] += xy * c_.at(a, b, k);
      }
    }
  }
  return r;
}

Eigen::VectorXd MetrizedLieAlgebra::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  return ad(x) * y;
}

Rational MetrizedLieAlgebra::pairing(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
  Rational s = 0;
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = 0; b < dim(); ++b) s += x[a] * metric_(a, b) * y[b];
  return s;
}

Eigen::MatrixXd MetrizedLieAlgebra::ad(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dim()) throw ChartMismatch("vector is not in d");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    if (x(a) != 0.0) m += x(a) * ad_basis_[a];
  }
  return m;
}

CheckResult check_metrized(const StructureConstants& c, const QMatrix& metric) {
  const std::size_t n = c.dim();
  if (metric.rows() != n || metric.cols() != n) return CheckResult::failure("metric size", {});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k)
        if (c.at(a, b, k) != -c.at(b, a, k)) return CheckResult::failure("antisymmetry", {a, b, k});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          Rational s = 0;
          for (std::size_t l = 0; l < n; ++l) {
            s += c.at(i, j, l) * c.at(l, k, m) + c.at(j, k, l) * c.at(l, i, m) + c.at(k, i, l) * c.at(l, j, m);
          }
          if (sgn(s) != 0) return CheckResult::failure("jacobi", {i, j, k});
        }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (metric(a, b) != metric(b, a)) return CheckResult::failure("metric symmetry", {a, b});
  if (sgn(numerics::determinant(metric)) == 0) return CheckResult::failure("metric degenerate", {});
  // B([e_a, e_b], e_c) + B(e_b, [e_a, e_c]) = 0.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = b; k < n; ++k) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += c.at(a, b, l) * metric(l, k) + c.at(a, k, l) * metric(b, l);
        if (sgn(s) != 0) return CheckResult::failure("ad-invariance", {a, b, k});
      }
  return {};
}

ManinTriple::ManinTriple(MetrizedLieAlgebra d, QMatrix g_basis, QMatrix h_basis)
    : d_(std::move(d)), g_(std::move(g_basis)), h_(std::move(h_basis)) {
  if (g_.rows() != d_.dim() || h_.rows() != d_.dim()) throw ChartMismatch("subspace bases not in the d-basis");
  g_d_ = to_dense(g_);
  h_d_ = to_dense(h_);
  if (g_.cols() + h_.cols() == d_.dim()) {
    if (auto inv = numerics::inverse(numerics::hstack(g_, h_))) split_inverse_ = to_dense(*inv);
  }
  if (split_inverse_.size() > 0) {
    for (std::size_t i = 0; i < half_dim(); ++i) {
      Eigen::MatrixXd m(half_dim(), half_dim());
      for (std::size_t k = 0; k < half_dim(); ++k) {
        m.col(k) = g_coordinates(d_.bracket(Eigen::VectorXd(g_d_.col(i)), Eigen::VectorXd(g_d_.col(k))));
      }
      g_ad_basis_.push_back(std::move(m));
    }
  }
}

ManinTriple ManinTriple::dual() const { return ManinTriple(d_, h_, g_); }

Eigen::VectorXd ManinTriple::split_coordinates(const Eigen::VectorXd& zeta) const {
  if (split_inverse_.size() == 0) throw PreconditionError("g and h do not split d");
  if (static_cast<std::size_t>(zeta.size()) != dim()) throw ChartMismatch("vector is not in d");
  return split_inverse_ * zeta;
}

Eigen::VectorXd ManinTriple::g_coordinates(const Eigen::VectorXd& zeta) const {
  return split_coordinates(zeta).head(half_dim());
}

Eigen::VectorXd ManinTriple::project_g(const Eigen::VectorXd& zeta) const { return g_d_ * g_coordinates(zeta); }

Eigen::VectorXd ManinTriple::project_h(const Eigen::VectorXd& zeta) const {
  return h_d_ * split_coordinates(zeta).tail(h_.cols());
}

Eigen::MatrixXd ManinTriple::ad_g(const Eigen::VectorXd& x) const {
  if (split_inverse_.size() == 0) throw PreconditionError("g and h do not split d");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(half_dim(), half_dim());
  for (std::size_t i = 0; i < half_dim(); ++i) m += x(i) * g_ad_basis_[i];
  return m;
}

CheckResult check_isotropic(const MetrizedLieAlgebra& d, const QMatrix& basis, const std::string& label) {
  for (std::size_t i = 0; i < basis.cols(); ++i)
    for (std::size_t j = i; j < basis.cols(); ++j) {
      if (sgn(d.pairing(basis.column(i), basis.column(j))) != 0) {
        return CheckResult::failure(label + " not Lagrangian", {i, j});
      }
    }
  return {};
}

CheckResult check_subalgebra(const MetrizedLieAlgebra& d, const QMatrix& basis, const std::string& label) {
  const std::size_t r = numerics::rank(basis);
  for (std::size_t i = 0; i < basis.cols(); ++i)
    for (std::size_t j = i + 1; j < basis.cols(); ++j) {
      const auto v = d.bracket(basis.column(i), basis.column(j));
      QMatrix col(v.size(), 1);
      for (std::size_t k = 0; k < v.size(); ++k) col(k, 0) = v[k];
      if (numerics::rank(numerics::hstack(basis, col)) != r) {
        return CheckResult::failure(label + " not a subalgebra", {i, j});
      }
    }
  return {};
}

CheckResult check_manin_triple(const ManinTriple& t) {
  const auto& d = t.algebra();
  if (auto r = check_metrized(d.constants(), d.metric()); !r.ok) return r;
  if (d.dim() % 2 != 0 || t.g_basis().cols() * 2 != d.dim() || t.h_basis().cols() * 2 != d.dim()) {
    return CheckResult::failure("dimension", {});
  }
  if (numerics::rank(numerics::hstack(t.g_basis(), t.h_basis())) != d.dim()) {
    return CheckResult::failure("g + h != d", {});
  }
  for (auto r : {check_isotropic(d, t.g_basis(), "g"), check_isotropic(d, t.h_basis(), "h"),
                 check_subalgebra(d, t.g_basis(), "g"), check_subalgebra(d, t.h_basis(), "h")}) {
    if (!r.ok) return r;
  }
  return {};
}

}  // namespace diraclab::maningroup
