#include "diraclab/dirac.hpp"
#include "diraclab/errors.hpp"

namespace diraclab::dirac {

using fields::interior_product;

GeneralizedSection::GeneralizedSection(PolyKVector x, PolyKForm a) : vector(std::move(x)), form(std::move(a)) {
  if (vector.degree() != 1 || form.degree() != 1) throw DegreeError("a section needs a vector field and a 1-form");
  if (vector.dim() != form.dim()) throw ChartMismatch("section parts live on different charts");
}

GeneralizedSection GeneralizedSection::zero(std::size_t n) { return {PolyKVector(n, 1), PolyKForm(n, 1)}; }

GeneralizedSection GeneralizedSection::times(const Poly& f) const { return {vector.times(f), form.times(f)}; }

GeneralizedSection operator+(const GeneralizedSection& a, const GeneralizedSection& b) {
  return {a.vector + b.vector, a.form + b.form};
}

GeneralizedSection operator-(const GeneralizedSection& a, const GeneralizedSection& b) {
  return {a.vector - b.vector, a.form - b.form};
}

Poly pairing(const GeneralizedSection& s1, const GeneralizedSection& s2) {
  if (s1.dim() != s2.dim()) throw ChartMismatch("pairing of sections on different charts");
  return fields::contract(s1.form, {s2.vector}) + fields::contract(s2.form, {s1.vector});
}

GeneralizedSection courant_bracket(const GeneralizedSection& s1, const GeneralizedSection& s2) {
  if (s1.dim() != s2.dim()) throw ChartMismatch("bracket of sections on different charts");
  return {fields::lie_bracket(s1.vector, s2.vector),
          fields::lie_derivative(s1.vector, s2.form) -
              interior_product(s2.vector, fields::exterior_derivative(s1.form))};
}

GeneralizedSection infinitesimal_action(const PolyKForm& gamma, const PolyKVector& x, const GeneralizedSection& tau) {
  if (gamma.degree() != 2) throw DegreeError("the form part of an infinitesimal automorphism is a 2-form");
  return {fields::lie_bracket(x, tau.vector),
          fields::lie_derivative(x, tau.form) - interior_product(tau.vector, gamma)};
}

GeneralizedSection gauge_section(const PolyKForm& omega, const GeneralizedSection& s) {
  if (omega.degree() != 2) throw DegreeError("gauge transformations use a 2-form");
  return {s.vector, s.form + interior_product(s.vector, omega)};
}

}  // namespace diraclab::dirac
