#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "diraclab/exact_linalg.hpp"
#include "diraclab/poisson.hpp"
#include "diraclab/report.hpp"

namespace diraclab::maningroup {

using numerics::QMatrix;
using poisson::StructureConstants;

// Outcome of an exact structural check. The witness holds 0-based basis
// indices of the first violation found.
struct CheckResult {
  bool ok = true;
  std::string reason;
  std::vector<std::size_t> witness;

  static CheckResult failure(std::string reason, std::vector<std::size_t> witness);
};

// Lie algebra d with an invariant metric, both exact over the rationals.
class MetrizedLieAlgebra {
 public:
  MetrizedLieAlgebra(StructureConstants c, QMatrix metric);

  std::size_t dim() const { return c_.dim(); }
  const StructureConstants& constants() const { return c_; }
  const QMatrix& metric() const { return metric_; }
  const Eigen::MatrixXd& metric_matrix() const { return metric_d_; }

  std::vector<Rational> bracket(const std::vector<Rational>& x, const std::vector<Rational>& y) const;
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  Rational pairing(const std::vector<Rational>& x, const std::vector<Rational>& y) const;
  // Column k is [x, e_k].
  Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;

 private:
  StructureConstants c_;
  QMatrix metric_;
  Eigen::MatrixXd metric_d_;
  std::vector<Eigen::MatrixXd> ad_basis_;
};

// Antisymmetry, Jacobi, symmetric invertible metric and ad-invariance, exactly.
CheckResult check_metrized(const StructureConstants& c, const QMatrix& metric);

// (d, g, h) with g and h given as basis columns in the d-basis.
class ManinTriple {
 public:
  ManinTriple(MetrizedLieAlgebra d, QMatrix g_basis, QMatrix h_basis);

  const MetrizedLieAlgebra& algebra() const { return d_; }
  std::size_t dim() const { return d_.dim(); }
  std::size_t half_dim() const { return g_.cols(); }
  const QMatrix& g_basis() const { return g_; }
  const QMatrix& h_basis() const { return h_; }
  const Eigen::MatrixXd& g_matrix() const { return g_d_; }
  const Eigen::MatrixXd& h_matrix() const { return h_d_; }

  // Same algebra with the roles of g and h exchanged.
  ManinTriple dual() const;

  // Coordinates along d = g + h: the first half_dim entries are the
  // g-coefficients. Throws PreconditionError unless g + h = d.
  Eigen::VectorXd split_coordinates(const Eigen::VectorXd& zeta) const;
  Eigen::VectorXd g_coordinates(const Eigen::VectorXd& zeta) const;
  Eigen::VectorXd project_g(const Eigen::VectorXd& zeta) const;
  Eigen::VectorXd project_h(const Eigen::VectorXd& zeta) const;
  // Bracket of g in g-coordinates: column k of ad_g(x) is [x, xi_k].
  Eigen::MatrixXd ad_g(const Eigen::VectorXd& x) const;

 private:
  MetrizedLieAlgebra d_;
  QMatrix g_, h_;
  Eigen::MatrixXd g_d_, h_d_;
  Eigen::MatrixXd split_inverse_;  // empty when g + h != d
  std::vector<Eigen::MatrixXd> g_ad_basis_;
};

// Exact: every pairing of basis columns vanishes.
CheckResult check_isotropic(const MetrizedLieAlgebra& d, const QMatrix& basis, const std::string& label);
// Exact: brackets of basis columns stay in their span.
CheckResult check_subalgebra(const MetrizedLieAlgebra& d, const QMatrix& basis, const std::string& label);
CheckResult check_manin_triple(const ManinTriple& t);

// The group G integrating g, reached by exponential coordinates
// x -> exp(sum x_i rho(xi_i)) in a matrix representation rho of d, with Ad
// either conjugation in that representation or, for the adjoint chart, the
// group element itself.
class GroupChart {
 public:
  using Element = Eigen::MatrixXcd;
  enum class Mode { Representation, Adjoint };

  // rep[a] is the image of the d-basis vector e_a. Throws PreconditionError
  // unless rep is a faithful Lie algebra homomorphism.
  static GroupChart representation(const ManinTriple& t, std::vector<Element> rep, std::string name);
  // Element exp(ad X) acting on d; requires ad to be faithful on d.
  static GroupChart adjoint(const ManinTriple& t);

  Mode mode() const { return mode_; }
  const std::string& name() const { return name_; }
  const ManinTriple& triple() const { return triple_; }
  std::size_t dim() const { return triple_.half_dim(); }

  Element element(const Eigen::VectorXd& x) const;
  // Chart inverse by the principal logarithm; throws DomainEscape when the
  // logarithm leaves the image of g.
  Eigen::VectorXd coordinates(const Element& g) const;
  Eigen::MatrixXd ad(const Element& g) const;
  Eigen::MatrixXd ad_at(const Eigen::VectorXd& x) const { return ad(element(x)); }
  // theta^L(d/dx_i) in g-coordinates as column i: int_0^1 exp(-s ad_X) ds.
  Eigen::MatrixXd maurer_cartan(const Eigen::VectorXd& x) const;

 private:
  GroupChart(ManinTriple t, Mode mode, std::vector<Element> rep, std::string name);
  Eigen::VectorXd decompose(const Element& m) const;

  ManinTriple triple_;
  Mode mode_;
  std::string name_;
  std::vector<Element> rep_;
  std::vector<Element> g_rep_;
  Eigen::MatrixXd rep_stacked_;  // real and imaginary parts of rep, one column per basis vector
  Eigen::MatrixXd rep_pinv_;
};

// Worst deviation of Ad from being an isometric automorphism of d.
struct AdResiduals {
  double metric = 0.0;
  double bracket = 0.0;
  double max() const { return std::max(metric, bracket); }
};
AdResiduals ad_residuals(const ManinTriple& t, const Eigen::MatrixXd& ad);
inline constexpr double kAdTolerance = 1e-9;

// pi(<theta^L, nu_i>, <theta^L, nu_j>) at x for the h-basis nu; skew n x n.
// Throws PreconditionError if Ad fails its invariants at x.
Eigen::MatrixXd drinfeld_bivector(const GroupChart& chart, const Eigen::VectorXd& x);
// The same bivector as components pi^{ij} on the chart coordinates.
Eigen::MatrixXd chart_bivector(const GroupChart& chart, const Eigen::VectorXd& x);
// Finite-difference Jacobiator of chart_bivector, worst component per sample.
ResidualReport jacobi_residuals(const GroupChart& chart, const std::vector<Eigen::VectorXd>& samples,
                                double fd_step = 1e-5);

// i_{rho(zeta)} theta^L = Ad_{g^-1} pr_g(Ad_g zeta), in g-coordinates.
Eigen::VectorXd dressing_action(const GroupChart& chart, const Eigen::VectorXd& x, const Eigen::VectorXd& zeta);
// The dressing vector field rho(zeta) on chart coordinates.
Eigen::VectorXd dressing_field(const GroupChart& chart, const Eigen::VectorXd& x, const Eigen::VectorXd& zeta);

struct EMapReport {
  ResidualReport metric;         // <e(z1), e(z2)> = <z1, z2>
  ResidualReport bracket;        // [rho(z1), rho(z2)] = rho([z1, z2])
  ResidualReport maurer_cartan;  // L_{rho(z)} theta^L = Ad_{g^-1} pr_g [Ad_g theta^L, Ad_g z]
};
EMapReport e_map_residuals(const GroupChart& chart, const std::vector<Eigen::VectorXd>& samples,
                           const Eigen::VectorXd& zeta1, const Eigen::VectorXd& zeta2, double fd_step = 1e-5);

// Mult is a Poisson map: J1 pi(g1) J1^T + J2 pi(g2) J2^T = pi(g1 g2), with
// the chart differential of Mult by central differences.
ResidualReport verify_multiplicativity(const GroupChart& chart,
                                       const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& pairs,
                                       double fd_step = 1e-5);

struct HomogeneousSpaceData {
  ManinTriple triple;
  QMatrix k_basis;  // columns in the d-basis, inside g
  QMatrix l_basis;  // columns in the d-basis
};

struct HomogeneousResult {
  CheckResult check;
  double invariance_residual = 0.0;
  // Invariance is tested on exponentials of generators only, which covers
  // the identity component of K.
  bool identity_component_only = true;
};

// Exact: l Lagrangian, l a subalgebra, l meets g in k. Numeric: Ad_{exp(kappa)}
// preserves l for each generator kappa (a d-vector in k), within kAdTolerance.
// Throws PreconditionError unless k is a subalgebra of g.
HomogeneousResult homogeneous_space_check(const HomogeneousSpaceData& data, const GroupChart& chart,
                                          const std::vector<Eigen::VectorXd>& generators);

struct BuiltinTriple {
  std::string name;
  ManinTriple triple;
  GroupChart chart;
};

ManinTriple semidirect_so3();
ManinTriple iwasawa_su2();
ManinTriple standard_sl2();
ManinTriple borel_sl2();
ManinTriple drinfeld_double(const ManinTriple& t);

// Catalog: semidirect-so3, iwasawa-su2, standard-sl2, borel-sl2,
// double-semidirect-so3, each with its chart.
std::vector<BuiltinTriple> builtin_triples();
// Throws PreconditionError on an unknown name.
BuiltinTriple builtin_triple(const std::string& name);
// The representation chart of a built-in applied to a compatible triple.
GroupChart builtin_chart(const std::string& name, const ManinTriple& t);

}  // namespace diraclab::maningroup
