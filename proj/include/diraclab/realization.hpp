#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "diraclab/ode.hpp"
#include "diraclab/poisson.hpp"
#include "diraclab/report.hpp"

namespace diraclab::realization {

using fields::Poly;
using fields::PolyKForm;
using fields::PolyKVector;
using poisson::PoissonBivector;

// Poisson spray on the cotangent chart (q_1..q_n, p_1..p_n):
// X = sum pi^{ij}(q) p_i d/dq_j + 1/2 sum Gamma^{ij}_k(q) p_i p_j d/dp_k.
class SprayField {
 public:
  // gamma[(i * n + j) * n + k] = Gamma^{ij}_k on the base chart; empty means zero.
  SprayField(PoissonBivector pi, std::vector<Poly> gamma = {});

  const PoissonBivector& base() const { return pi_; }
  std::size_t base_dim() const { return pi_.dim(); }
  const PolyKVector& field() const { return field_; }

  // Degree 1 in p on the q-part and degree 2 on the p-part.
  bool is_homogeneous() const;
  // q-components equal pi#(p), exactly.
  bool projects_to_sharp() const;

  Eigen::VectorXd value(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

 private:
  PoissonBivector pi_;
  PolyKVector field_;
  std::vector<fields::CompiledPoly> values_;
  std::vector<fields::CompiledPoly> partials_;
};

SprayField default_spray(const PoissonBivector& pi);

struct RealizationConfig {
  double step = 1e-3;
  std::size_t quadrature_order = 8;
  double radius = 0.2;  // admissible p-ball radius for sampling
  double escape_bound = 1e6;
};

// Phi_t of the spray (x' = -X), with its Jacobian.
numerics::FlowResult flow(const SprayField& spray, const std::vector<double>& point, double t,
                          const RealizationConfig& config = {});

struct RealizationSample {
  std::vector<double> point;
  Eigen::MatrixXd omega;          // omega_p, omega(u, v) = u^T omega v
  Eigen::MatrixXd poisson;        // -omega^{-1}
  double condition = 0.0;         // 2-norm condition number of omega
  Eigen::VectorXd source, target;  // s(p), t(p)
  Eigen::MatrixXd ds, dt;         // n x 2n
};

// omega_p = int_0^1 (Phi_{-s})^* omega_can ds by Gauss-Legendre quadrature.
Eigen::MatrixXd realization_form(const SprayField& spray, const std::vector<double>& point,
                                 const RealizationConfig& config = {});

struct SourceTarget {
  Eigen::VectorXd source, target;
  Eigen::MatrixXd ds, dt;
};
SourceTarget source_target(const SprayField& spray, const std::vector<double>& point,
                           const RealizationConfig& config = {});

// Everything at one point from a single backward integration. Throws
// PreconditionError when omega_p is numerically degenerate.
RealizationSample sample(const SprayField& spray, const std::vector<double>& point,
                         const RealizationConfig& config = {});

struct DualPairReport {
  ResidualReport target_poisson;     // dt pi_P dt^T = pi(t)
  ResidualReport source_antipoisson;  // ds pi_P ds^T = -pi(s)
  ResidualReport orthogonality;      // omega(ker dt, ker ds) = 0
  ResidualReport graph_condition;    // R_omega(t^! Gr pi) = s^! Gr pi
  double worst_condition = 0.0;

  double max_residual() const;
};

DualPairReport verify_dual_pair(const SprayField& spray, const PoissonBivector& pi,
                                const std::vector<std::vector<double>>& samples,
                                const RealizationConfig& config = {});

// Sample points (q, p) with q in a box of half-width q_box and |p| <= radius.
std::vector<std::vector<double>> random_samples(std::size_t n, std::size_t count, double q_box, double radius,
                                                std::uint64_t seed);

struct InvariantFields {
  Eigen::VectorXd alpha_left, alpha_right, beta_left, beta_right;
  // alpha^L ~s pi# alpha, alpha^R ~t -pi# alpha,
  // omega(alpha^L, beta^L) = -s^* pi(alpha, beta), omega(alpha^R, beta^R) = t^* pi(alpha, beta),
  // omega(alpha^L, beta^R) = 0.
  std::vector<double> residuals;
};

// alpha^L = -pi_P#(s^* alpha), alpha^R = -pi_P#(t^* alpha).
Eigen::VectorXd left_field(const RealizationSample& s, const PolyKForm& alpha);
Eigen::VectorXd right_field(const RealizationSample& s, const PolyKForm& alpha);

InvariantFields invariant_vector_fields(const SprayField& spray, const PolyKForm& alpha, const PolyKForm& beta,
                                        const std::vector<double>& point, const RealizationConfig& config = {});

// Residuals of [a^L, b^L] = [a, b]^L, [a^R, b^R] = -[a, b]^R and
// [a^L, b^R] = 0, with Lie brackets by central differences.
std::vector<double> invariant_bracket_residuals(const SprayField& spray, const PolyKForm& alpha,
                                                const PolyKForm& beta, const std::vector<double>& point,
                                                const RealizationConfig& config = {}, double fd_step = 1e-5);

}  // namespace diraclab::realization
