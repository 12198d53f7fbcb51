#include "diraclab/errors.hpp"
#include "diraclab/realization.hpp"

namespace diraclab::realization {

using fields::Exponents;

namespace {

Poly lift(const Poly& p, std::size_t total) {
  Poly r(total);
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    f.resize(total, 0);
    r.add_term(f, c);
  }
  return r;
}

// Degree of a monomial in the p-variables.
std::uint32_t fiber_degree(const Exponents& e, std::size_t n) {
  std::uint32_t d = 0;
  for (std::size_t k = n; k < 2 * n; ++k) d += e[k];
  return d;
}

}  // namespace

SprayField::SprayField(PoissonBivector pi, std::vector<Poly> gamma) : pi_(std::move(pi)) {
  const std::size_t n = pi_.dim(), total = 2 * n;
  if (!gamma.empty()) {
    if (gamma.size() != n * n * n) throw ChartMismatch("spray coefficients have the wrong shape");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          if (gamma[(i * n + j) * n + k].nvars() != n) throw ChartMismatch("spray coefficient not on the base chart");
          if (!(gamma[(i * n + j) * n + k] == gamma[(j * n + i) * n + k])) {
            throw PreconditionError("spray coefficients must be symmetric in the upper indices");
          }
        }
  }
  std::vector<Poly> comps(total, Poly(total));
  for (std::size_t i = 0; i < n; ++i) {
    const Poly pi_var = Poly::variable(total, n + i);
    for (std::size_t j = 0; j < n; ++j) {
      Poly e = pi_.entry(i, j);
      if (!e.is_zero()) comps[j] += lift(e, total) * pi_var;
    }
  }
  if (!gamma.empty()) {
    const Rational half(1, 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Poly& g = gamma[(i * n + j) * n + k];
          if (g.is_zero()) continue;
          comps[n + k] += lift(g, total) * Poly::variable(total, n + i) * Poly::variable(total, n + j) * half;
        }
  }
  field_ = fields::vector_field(comps);
  for (const auto& c : comps) {
    values_.emplace_back(c);
    for (std::size_t k = 0; k < total; ++k) partials_.emplace_back(c.derivative(k));
  }
}

bool SprayField::is_homogeneous() const {
  const std::size_t n = base_dim();
  for (const auto& [idx, p] : field_.components()) {
    const std::uint32_t want = idx[0] < n ? 1 : 2;
    for (const auto& [e, c] : p.terms())
      if (fiber_degree(e, n) != want) return false;
  }
  return true;
}

bool SprayField::projects_to_sharp() const {
  const std::size_t n = base_dim(), total = 2 * n;
  for (std::size_t j = 0; j < n; ++j) {
    Poly want(total);
    for (std::size_t i = 0; i < n; ++i) want += lift(pi_.entry(i, j), total) * Poly::variable(total, n + i);
    if (!(field_.get({static_cast<std::uint32_t>(j)}) == want)) return false;
  }
  return true;
}

Eigen::VectorXd SprayField::value(const Eigen::VectorXd& x) const {
  Eigen::VectorXd v(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) v(i) = values_[i](x.data());
  return v;
}

Eigen::MatrixXd SprayField::jacobian(const Eigen::VectorXd& x) const {
  const std::size_t total = values_.size();
  Eigen::MatrixXd m(total, total);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t k = 0; k < total; ++k) m(i, k) = partials_[i * total + k](x.data());
  return m;
}

SprayField default_spray(const PoissonBivector& pi) { return SprayField(pi); }

}  // namespace diraclab::realization
