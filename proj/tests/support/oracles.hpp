#pragma once

// Independent reference computations used to pin expected values in tests.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diraclab/dirac.hpp"
#include "diraclab/exact_linalg.hpp"
#include "diraclab/poisson.hpp"

namespace oracle {

using diraclab::Rational;
using diraclab::numerics::QMatrix;

// Lie algebra and metric axioms via exact ad-matrices: ad_[a,b] = [ad_a, ad_b]
// and ad_a^T B + B ad_a = 0. Returns the first failing property.
std::optional<std::string> metrized_violation(const diraclab::poisson::StructureConstants& c, const QMatrix& metric);

// Gram matrix basis^T B basis, exact.
QMatrix gram(const QMatrix& metric, const QMatrix& basis);

using diraclab::fields::Poly;

// {f, g} = sum over all a, b of pi^{ab} d_a f d_b g, from the raw entries.
Poly bracket(const diraclab::fields::PolyKVector& pi, const Poly& f, const Poly& g);
// Jac(x_i, x_j, x_k) by nesting bracket().
Poly jacobiator_component(const diraclab::fields::PolyKVector& pi, std::size_t i, std::size_t j, std::size_t k);

// Coordinate Dorfman bracket of X1 + a1 and X2 + a2, components listed
// as (vector part, form part).
struct Section {
  std::vector<Poly> vector, form;
};
Section courant(const Section& s1, const Section& s2);
Section components(const diraclab::dirac::GeneralizedSection& s);

// Rotation exp(hat(x)) by the Rodrigues formula.
Eigen::Matrix3d rotation(const Eigen::Vector3d& x);

}  // namespace oracle
