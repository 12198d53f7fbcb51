#include "diraclab/poisson.hpp"

#include "diraclab/errors.hpp"

namespace diraclab::poisson {

using fields::Indices;

PoissonBivector::PoissonBivector(PolyKVector pi) : pi_(std::move(pi)) {
  if (pi_.degree() != 2) throw DegreeError("a Poisson bivector must have degree 2");
}

Poly PoissonBivector::entry(std::size_t i, std::size_t j) const {
  return pi_.get({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
}

PoissonBivector PoissonBivector::checked() const {
  PoissonBivector r = *this;
  r.poisson_ = jacobiator(*this).is_zero();
  return r;
}

void StructureConstants::set_antisymmetric(std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
  if (i == j && sgn(v) != 0) throw PreconditionError("c_ii^k must vanish");
  at(i, j, k) = v;
  at(j, i, k) = -v;
}

bool StructureConstants::is_antisymmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (at(i, j, k) != -at(j, i, k)) return false;
  return true;
}

bool StructureConstants::satisfies_jacobi() const {
  // [[e_i,e_j],e_k] + cyclic = 0, coefficient of e_m.
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t m = 0; m < n_; ++m) {
          Rational s = 0;
          for (std::size_t l = 0; l < n_; ++l) {
            s += at(i, j, l) * at(l, k, m) + at(j, k, l) * at(l, i, m) + at(k, i, l) * at(l, j, m);
          }
          if (sgn(s) != 0) return false;
        }
  return true;
}

StructureConstants StructureConstants::so3() {
  StructureConstants c(3);
  c.set_antisymmetric(0, 1, 2, 1);
  c.set_antisymmetric(1, 2, 0, 1);
  c.set_antisymmetric(2, 0, 1, 1);
  return c;
}

Poly bracket(const PoissonBivector& pi, const Poly& f, const Poly& g) {
  if (f.nvars() != pi.dim() || g.nvars() != pi.dim()) {
    throw ChartMismatch("bracket arguments are not on the bivector's chart");
  }
  Poly r(pi.dim());
  for (const auto& [idx, p] : pi.tensor().components()) {
    Poly t = f.derivative(idx[0]) * g.derivative(idx[1]) - f.derivative(idx[1]) * g.derivative(idx[0]);
    if (!t.is_zero()) r += p * t;
  }
  return r;
}

PolyKVector jacobiator(const PoissonBivector& pi) {
  const std::size_t n = pi.dim();
  PolyKVector jac(n, 3);
  // Cache pi^{ab} and its partial derivatives.
  std::vector<Poly> entries(n * n, Poly(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) entries[a * n + b] = pi.entry(a, b);
  auto hamiltonian_derivative = [&](std::size_t i, const Poly& h) {
    Poly s(n);
    for (std::size_t l = 0; l < n; ++l) {
      const Poly& e = entries[i * n + l];
      if (e.is_zero()) continue;
      Poly d = h.derivative(l);
      if (!d.is_zero()) s += e * d;
    }
    return s;
  };
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      for (std::uint32_t k = j + 1; k < n; ++k) {
        Poly v = hamiltonian_derivative(i, entries[j * n + k]) + hamiltonian_derivative(j, entries[k * n + i]) +
                 hamiltonian_derivative(k, entries[i * n + j]);
        jac.set({i, j, k}, v);
      }
  return jac;
}

bool is_poisson(const PoissonBivector& pi) {
  if (auto known = pi.known_poisson()) return *known;
  return jacobiator(pi).is_zero();
}

PolyKVector sharp(const PoissonBivector& pi, const PolyKForm& a) {
  if (a.degree() != 1) throw DegreeError("sharp expects a 1-form");
  if (a.dim() != pi.dim()) throw ChartMismatch("1-form is not on the bivector's chart");
  PolyKVector v(pi.dim(), 1);
  for (const auto& [idx, p] : pi.tensor().components()) {
    // pi^{ij} d_i ^ d_j contributes a_i pi^{ij} d_j - a_j pi^{ij} d_i.
    Poly ai = a.get({idx[0]});
    Poly aj = a.get({idx[1]});
    if (!ai.is_zero()) v.add({idx[1]}, ai * p);
    if (!aj.is_zero()) v.add({idx[0]}, -(aj * p));
  }
  return v;
}

PolyKVector hamiltonian_vf(const PoissonBivector& pi, const Poly& f) {
  return sharp(pi, fields::differential(f));
}

PolyKForm form_bracket(const PoissonBivector& pi, const PolyKForm& a, const PolyKForm& b) {
  return fields::lie_derivative(sharp(pi, a), b) -
         fields::interior_product(sharp(pi, b), fields::exterior_derivative(a));
}

PoissonBivector lie_poisson(const StructureConstants& c) {
  if (!c.is_antisymmetric()) throw PreconditionError("structure constants are not antisymmetric");
  const std::size_t n = c.dim();
  PolyKVector pi(n, 2);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      Poly p(n);
      for (std::size_t k = 0; k < n; ++k) {
        if (sgn(c.at(i, j, k)) != 0) p += Poly::variable(n, k) * c.at(i, j, k);
      }
      pi.set({i, j}, p);
    }
  return pi;
}

StructureConstants extract_structure_constants(const PoissonBivector& pi) {
  const std::size_t n = pi.dim();
  StructureConstants c(n);
  for (const auto& [idx, p] : pi.tensor().components()) {
    for (const auto& [e, v] : p.terms()) {
      std::uint32_t deg = 0;
      std::size_t var = 0;
      for (std::size_t k = 0; k < n; ++k) {
        deg += e[k];
        if (e[k]) var = k;
      }
      if (deg != 1) {
        throw DegreeError("component (" + std::to_string(idx[0] + 1) + "," + std::to_string(idx[1] + 1) +
                          ") is not linear in the coordinates");
      }
      c.set_antisymmetric(idx[0], idx[1], var, v);
    }
  }
  return c;
}

}  // namespace diraclab::poisson
