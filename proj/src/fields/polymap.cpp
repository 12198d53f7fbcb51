#include "diraclab/polymap.hpp"

#include "diraclab/errors.hpp"

namespace diraclab::fields {

PolyMap::PolyMap(std::size_t source_dim, std::vector<Poly> components)
    : source_dim_(source_dim), components_(std::move(components)) {
  for (const auto& c : components_) {
    if (c.nvars() != source_dim_) throw ChartMismatch("map component on the wrong source chart");
  }
}

PolyMap PolyMap::identity(std::size_t n) {
  std::vector<Poly> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(Poly::variable(n, i));
  return PolyMap(n, std::move(c));
}

std::vector<std::vector<Poly>> PolyMap::jacobian() const {
  std::vector<std::vector<Poly>> j(target_dim());
  for (std::size_t i = 0; i < target_dim(); ++i) {
    for (std::size_t k = 0; k < source_dim_; ++k) j[i].push_back(components_[i].derivative(k));
  }
  return j;
}

Eigen::VectorXd PolyMap::value_at(std::span<const double> x) const {
  Eigen::VectorXd v(target_dim());
  for (std::size_t i = 0; i < target_dim(); ++i) v(i) = components_[i].eval(x);
  return v;
}

std::vector<Rational> PolyMap::value_at(std::span<const Rational> x) const {
  std::vector<Rational> v;
  for (const auto& c : components_) v.push_back(c.eval(x));
  return v;
}

Eigen::MatrixXd PolyMap::jacobian_at(std::span<const double> x) const {
  Eigen::MatrixXd j(target_dim(), source_dim_);
  for (std::size_t i = 0; i < target_dim(); ++i) {
    for (std::size_t k = 0; k < source_dim_; ++k) j(i, k) = components_[i].derivative(k).eval(x);
  }
  return j;
}

Poly pullback(const PolyMap& phi, const Poly& f) {
  if (f.nvars() != phi.target_dim()) throw ChartMismatch("function not on the map's target chart");
  return f.compose(phi.components());
}

PolyKForm pullback_form(const PolyMap& phi, const PolyKForm& a) {
  if (a.dim() != phi.target_dim()) throw ChartMismatch("form not on the map's target chart");
  std::vector<PolyKForm> dphi;
  for (const auto& c : phi.components()) dphi.push_back(differential(c));
  PolyKForm r(phi.source_dim(), a.degree());
  for (const auto& [idx, p] : a.components()) {
    PolyKForm term = PolyKForm::scalar(pullback(phi, p));
    for (auto i : idx) term = wedge(term, dphi[i]);
    r += term;
  }
  return r;
}

Eigen::VectorXd pushforward_vector_at_point(const PolyMap& phi, std::span<const double> x,
                                            const Eigen::VectorXd& v) {
  if (static_cast<std::size_t>(v.size()) != phi.source_dim()) {
    throw ChartMismatch("tangent vector has the wrong dimension");
  }
  return phi.jacobian_at(x) * v;
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
  if (outer.source_dim() != inner.target_dim()) throw ChartMismatch("maps do not compose");
  std::vector<Poly> c;
  for (const auto& p : outer.components()) c.push_back(p.compose(inner.components()));
  return PolyMap(inner.source_dim(), std::move(c));
}

NumericMap NumericMap::from_poly(const PolyMap& phi) {
  NumericMap m;
  m.source_dim = phi.source_dim();
  m.target_dim = phi.target_dim();
  m.value = [phi](const Eigen::VectorXd& x) {
    return phi.value_at(std::span<const double>(x.data(), x.size()));
  };
  m.jacobian = [phi](const Eigen::VectorXd& x) {
    return phi.jacobian_at(std::span<const double>(x.data(), x.size()));
  };
  return m;
}

Eigen::MatrixXd NumericMap::jacobian_at(const Eigen::VectorXd& x) const {
  if (jacobian) return jacobian(x);
  Eigen::MatrixXd j(target_dim, source_dim);
  for (std::size_t k = 0; k < source_dim; ++k) {
    Eigen::VectorXd xp = x, xm = x;
    xp(k) += fd_step;
    xm(k) -= fd_step;
    j.col(k) = (value(xp) - value(xm)) / (2 * fd_step);
  }
  return j;
}

}  // namespace diraclab::fields
