#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "diraclab/report.hpp"
#include "diraclab/tensor.hpp"

namespace diraclab::poisson {

using fields::Poly;
using fields::PolyKForm;
using fields::PolyKVector;

// A bivector field together with the outcome of an exact Jacobi check, if
// one has been run. Implicitly constructible from a degree-2 PolyKVector.
class PoissonBivector {
 public:
  PoissonBivector(PolyKVector pi);  // NOLINT(google-explicit-constructor)

  const PolyKVector& tensor() const { return pi_; }
  std::size_t dim() const { return pi_.dim(); }
  Poly entry(std::size_t i, std::size_t j) const;

  std::optional<bool> known_poisson() const { return poisson_; }
  // Copy with the exact Jacobiator outcome attached.
  PoissonBivector checked() const;

  Eigen::MatrixXd matrix_at(std::span<const double> x) const { return pi_.matrix_at(x); }

 private:
  PolyKVector pi_;
  std::optional<bool> poisson_;
};

// Structure constants c_{ij}^k of a finite-dimensional Lie algebra, dense.
class StructureConstants {
 public:
  explicit StructureConstants(std::size_t n = 0) : n_(n), c_(n * n * n) {}

  std::size_t dim() const { return n_; }
  Rational& at(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * n_ + j) * n_ + k]; }
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
  // Sets c_ij^k and c_ji^k = -c_ij^k.
  void set_antisymmetric(std::size_t i, std::size_t j, std::size_t k, const Rational& v);

  bool is_antisymmetric() const;
  bool satisfies_jacobi() const;

  static StructureConstants so3();

 private:
  std::size_t n_;
  std::vector<Rational> c_;
};

Poly bracket(const PoissonBivector& pi, const Poly& f, const Poly& g);
PolyKVector jacobiator(const PoissonBivector& pi);
bool is_poisson(const PoissonBivector& pi);

// pi#(a) = pi(a, .) for a 1-form a.
PolyKVector sharp(const PoissonBivector& pi, const PolyKForm& a);
PolyKVector hamiltonian_vf(const PoissonBivector& pi, const Poly& f);
// [a, b]_pi = L_{pi# a} b - i_{pi# b} da on 1-forms.
PolyKForm form_bracket(const PoissonBivector& pi, const PolyKForm& a, const PolyKForm& b);

PoissonBivector lie_poisson(const StructureConstants& c);
// Reads c_ij^k off a bivector linear in the coordinates; inverse of lie_poisson.
StructureConstants extract_structure_constants(const PoissonBivector& pi);

// Symplectic leaf data at a point, from the numeric matrix pi^{ij}(m).
struct LeafData {
  std::vector<double> point;
  std::size_t rank = 0;
  Eigen::MatrixXd basis;        // n x rank, orthonormal columns spanning ran(pi#)
  Eigen::MatrixXd leaf_poisson;  // rank x rank, pi restricted to the basis
  Eigen::MatrixXd leaf_form;     // rank x rank, equals -(leaf_poisson)^{-1}
};

LeafData leaf_data_at_point(const PoissonBivector& pi, const std::vector<double>& m);

// a_t = sum_k t^k terms[k].
struct FormFamily {
  std::vector<PolyKForm> terms;

  std::size_t dim() const;
  Eigen::VectorXd at(double t, std::span<const double> x) const;
  // omega_t = -int_0^t d a_s ds, exact in t.
  Eigen::MatrixXd gauge_form_at(double t, std::span<const double> x) const;
};

struct FlowConfig {
  double step = 1e-3;
  double escape_bound = 1e8;
};

// Gauge-transformed bivector matrix (I + P W)^{-1} P at one point; throws
// TransversalityError when I + P W is (numerically) singular.
Eigen::MatrixXd gauge_bivector_matrix(const Eigen::MatrixXd& p, const Eigen::MatrixXd& w,
                                      const std::vector<double>& point);

// Flows X_t = pi_t#(a_t) with pi_t = pi0 gauged by omega_t and reports
// |(Phi_T)_* pi_T - pi0| at Phi_T(x) for every grid point x.
ResidualReport moser_verify(const PoissonBivector& pi0, const FormFamily& a, double t_final,
                            const std::vector<std::vector<double>>& grid,
                            const FlowConfig& config = {});

struct EulerResult {
  std::vector<std::vector<double>> images;  // phi_1(x) per sample
  ResidualReport residual;                  // |D phi_1(x) X(x) - phi_1(x)|
};

// Checks that X(0) = 0 and that the linear part of X is the Euler field.
void require_euler_like(const PolyKVector& x);
// Time-dependent field Z_t(x) = Z(t x) / t^2 with Z = X - E.
struct EulerHomotopy {
  explicit EulerHomotopy(const PolyKVector& x);
  Eigen::VectorXd value(double t, const Eigen::VectorXd& p) const;
  Eigen::MatrixXd jacobian(double t, const Eigen::VectorXd& p) const;

 private:
  std::size_t dim_;
  // Entry d holds the degree-(d+2) homogeneous part of Z, and its partials.
  std::vector<std::vector<fields::CompiledPoly>> parts_;
  std::vector<std::vector<fields::CompiledPoly>> partials_;
};

EulerResult euler_linearize(const PolyKVector& x, const std::vector<std::vector<double>>& samples,
                            const FlowConfig& config = {});

}  // namespace diraclab::poisson
