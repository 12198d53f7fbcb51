#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diraclab/polymap.hpp"
#include "diraclab/poisson.hpp"
#include "diraclab/report.hpp"

namespace diraclab::dirac {

using fields::Poly;
using fields::PolyKForm;
using fields::PolyKVector;
using poisson::PoissonBivector;

// X + alpha, a section of TM + T*M.
struct GeneralizedSection {
  PolyKVector vector;
  PolyKForm form;

  GeneralizedSection() = default;
  GeneralizedSection(PolyKVector x, PolyKForm a);
  static GeneralizedSection zero(std::size_t n);

  std::size_t dim() const { return vector.dim(); }
  GeneralizedSection times(const Poly& f) const;

  friend bool operator==(const GeneralizedSection& a, const GeneralizedSection& b) {
    return a.vector == b.vector && a.form == b.form;
  }
};

GeneralizedSection operator+(const GeneralizedSection& a, const GeneralizedSection& b);
GeneralizedSection operator-(const GeneralizedSection& a, const GeneralizedSection& b);

// <X1 + a1, X2 + a2> = a1(X2) + a2(X1).
Poly pairing(const GeneralizedSection& s1, const GeneralizedSection& s2);
// [[s1, s2]] = [X1, X2] + L_{X1} a2 - i_{X2} d a1.
GeneralizedSection courant_bracket(const GeneralizedSection& s1, const GeneralizedSection& s2);
// Infinitesimal automorphism (gamma, X) acting on tau = Y + b:
// [X, Y] + L_X b - i_Y gamma.
GeneralizedSection infinitesimal_action(const PolyKForm& gamma, const PolyKVector& x,
                                        const GeneralizedSection& tau);

// A Dirac structure presented by a frame: n symbolic sections, or a single
// fiber given as a 2n x n matrix whose columns stack (vector; covector).
class LagrangianFrame {
 public:
  enum class Mode { Symbolic, Pointwise };

  static LagrangianFrame symbolic(std::vector<GeneralizedSection> sections);
  static LagrangianFrame pointwise(Eigen::MatrixXd fiber);

  Mode mode() const { return mode_; }
  std::size_t dim() const { return dim_; }
  const std::vector<GeneralizedSection>& sections() const { return sections_; }

  // The 2n x n fiber matrix at a point (the stored one in pointwise mode).
  Eigen::MatrixXd fiber_at(std::span<const double> x) const;

 private:
  Mode mode_ = Mode::Pointwise;
  std::size_t dim_ = 0;
  std::vector<GeneralizedSection> sections_;
  Eigen::MatrixXd fiber_;
};

// Gram matrix of the split pairing on the columns of a fiber matrix.
Eigen::MatrixXd gram(const Eigen::MatrixXd& fiber);
bool is_lagrangian(const Eigen::MatrixXd& fiber, double tol = 1e-10);
// Exact Lagrangian test of a symbolic frame: all pairings vanish identically
// and the frame has full rank at the given point.
bool is_lagrangian(const LagrangianFrame& frame, std::span<const double> x);

LagrangianFrame graph_of_poisson(const PoissonBivector& pi);
LagrangianFrame graph_of_form(const PolyKForm& omega);
// Fiber of Gr(pi) at a point from the component matrix P: columns (P^T e_i; e_i).
Eigen::MatrixXd graph_fiber(const Eigen::MatrixXd& p);

// Upsilon_E(s_a, s_b, s_c) = <s_a, [[s_b, s_c]]> on frame index triples, as a
// degree-3 antisymmetric array whose indices label frame sections.
PolyKVector integrability_symbolic(const LagrangianFrame& frame);
fields::PointValues<double> integrability_tensor(const LagrangianFrame& frame, std::span<const double> x);
fields::PointValues<Rational> integrability_tensor(const LagrangianFrame& frame, std::span<const Rational> x);

// A closed 2-form; construction fails unless d omega = 0 exactly.
class GaugeTransform {
 public:
  explicit GaugeTransform(PolyKForm omega);
  const PolyKForm& form() const { return omega_; }

 private:
  PolyKForm omega_;
};

// X + a -> X + a + i_X omega, for any 2-form (closedness not required).
GeneralizedSection gauge_section(const PolyKForm& omega, const GeneralizedSection& s);
// Column-wise (v; mu) -> (v; mu + W^T v) where omega(u, v) = u^T W v.
Eigen::MatrixXd gauge_fiber(const Eigen::MatrixXd& fiber, const Eigen::MatrixXd& w);
LagrangianFrame gauge_transform_fiber(const LagrangianFrame& e, const GaugeTransform& omega,
                                      std::span<const double> x);
// Matrix of pi^omega = pi# (I + omega-flat pi#)^{-1} at a point.
Eigen::MatrixXd gauge_poisson(const PoissonBivector& pi, const GaugeTransform& omega,
                              const std::vector<double>& x);
// Symbolic pi^omega when det(I + P W) is a nonzero constant; otherwise empty.
std::optional<PolyKVector> gauge_poisson_symbolic(const PoissonBivector& pi, const GaugeTransform& omega);

// phi^! E at a point, from the Jacobian D (dim M x dim N) and the fiber of E
// at phi(n). Returns orthonormal columns; throws TransversalityError unless
// a(E) + ran D spans T M.
Eigen::MatrixXd pullback_fiber(const Eigen::MatrixXd& jacobian, const Eigen::MatrixXd& fiber,
                               const std::vector<double>& point);
LagrangianFrame pullback_dirac_at_point(const fields::PolyMap& phi, const LagrangianFrame& e,
                                        const std::vector<double>& n);
LagrangianFrame pullback_dirac_at_point(const fields::NumericMap& phi, const LagrangianFrame& e,
                                        const std::vector<double>& n);

struct CosymplecticResult {
  bool ok = true;
  std::optional<std::vector<double>> witness;
  std::vector<std::size_t> ranks;
  // Per point: basis of V = pi#(ann TN), one column per vanishing coordinate.
  std::vector<Eigen::MatrixXd> fibers;
};

// N = {x_i = 0 for i in vanishing}; points are given in the remaining
// coordinates of N, in increasing order.
CosymplecticResult cosymplectic_check(const PoissonBivector& pi, const std::vector<std::size_t>& vanishing,
                                      const std::vector<std::vector<double>>& points);

enum class MapKind { Poisson, AntiPoisson };

struct PoissonMapCheck {
  bool ok = true;
  // Entries (i, j), 1-based, where the identity fails.
  std::vector<std::pair<std::size_t, std::size_t>> failures;
};

// Exact: d phi pi_N d phi^T = +-(pi_M o phi) as polynomial matrices.
PoissonMapCheck check_poisson_map(const fields::PolyMap& phi, const PoissonBivector& pi_n,
                                  const PoissonBivector& pi_m, MapKind kind = MapKind::Poisson);
// Sampled: max entry of |D pi_N D^T -+ pi_M(phi(x))|.
ResidualReport check_poisson_map_numeric(const fields::NumericMap& phi, const PoissonBivector& pi_n,
                                         const PoissonBivector& pi_m, const std::vector<std::vector<double>>& samples,
                                         MapKind kind = MapKind::Poisson);

}  // namespace diraclab::dirac
