#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace diraclab::numerics {

// A possibly time-dependent vector field X_t on R^n. The Jacobian callback
// is optional; when absent, central differences are used.
struct VectorField {
  std::size_t dim = 0;
  std::function<void(double t, const Eigen::VectorXd& x, Eigen::VectorXd& out)> value;
  std::function<void(double t, const Eigen::VectorXd& x, Eigen::MatrixXd& out)> jacobian;
  double fd_step = 1e-6;

  Eigen::VectorXd operator()(double t, const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian_at(double t, const Eigen::VectorXd& x) const;
};

struct IntegratorOptions {
  double step = 1e-3;
  bool variational = true;
  // Trajectories whose norm exceeds this bound, or turn non-finite, escape.
  double escape_bound = 1e8;
};

struct FlowResult {
  Eigen::VectorXd point;
  Eigen::MatrixXd jacobian;  // empty when not requested
};

// Classical RK4 for x' = F(t, x) from t0 to t1 with a uniform step no larger
// than opts.step, together with the variational equation J' = DF J.
FlowResult rk4(const VectorField& rhs, const Eigen::VectorXd& x0, double t0, double t1,
               const IntegratorOptions& opts);

// Same, reporting the state at each of the increasing times in `stops`
// (all on the same side of t0).
std::vector<FlowResult> rk4_dense(const VectorField& rhs, const Eigen::VectorXd& x0, double t0,
                                  const std::vector<double>& stops, const IntegratorOptions& opts);

// The flow Phi_t of X in the library convention: d/dt (Phi_t)_* =
// (Phi_t)_* o L_{X_t}. For autonomous X this integrates x' = -X(x); for
// time-dependent X it integrates w' = -X_{t - s}(w) over s in [0, t].
FlowResult flow(const VectorField& x, const Eigen::VectorXd& p, double t,
                const IntegratorOptions& opts, bool autonomous);

}  // namespace diraclab::numerics
