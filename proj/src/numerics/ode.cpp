#include "diraclab/ode.hpp"

#include <cmath>

#include "diraclab/dense.hpp"
#include "diraclab/errors.hpp"

namespace diraclab::numerics {

Eigen::VectorXd VectorField::operator()(double t, const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(dim);
  value(t, x, out);
  return out;
}

Eigen::MatrixXd VectorField::jacobian_at(double t, const Eigen::VectorXd& x) const {
  Eigen::MatrixXd j(dim, dim);
  if (jacobian) {
    jacobian(t, x, j);
    return j;
  }
  for (std::size_t k = 0; k < dim; ++k) {
    Eigen::VectorXd xp = x, xm = x;
    xp(k) += fd_step;
    xm(k) -= fd_step;
    j.col(k) = ((*this)(t, xp) - (*this)(t, xm)) / (2 * fd_step);
  }
  return j;
}

namespace {

struct State {
  Eigen::VectorXd x;
  Eigen::MatrixXd j;
};

void check_domain(const Eigen::VectorXd& x, const IntegratorOptions& opts) {
  if (!x.allFinite() || x.norm() > opts.escape_bound) {
    throw DomainEscape("trajectory left the admissible domain", to_std(x));
  }
}

void step(const VectorField& f, double t, double h, State& s, bool var) {
  const Eigen::VectorXd& x = s.x;
  Eigen::VectorXd k1 = f(t, x);
  Eigen::VectorXd k2 = f(t + h / 2, x + h / 2 * k1);
  Eigen::VectorXd k3 = f(t + h / 2, x + h / 2 * k2);
  Eigen::VectorXd k4 = f(t + h, x + h * k3);
  if (var) {
    // Variational stages evaluated along the same RK stages.
    Eigen::MatrixXd l1 = f.jacobian_at(t, x) * s.j;
    Eigen::MatrixXd l2 = f.jacobian_at(t + h / 2, x + h / 2 * k1) * (s.j + h / 2 * l1);
    Eigen::MatrixXd l3 = f.jacobian_at(t + h / 2, x + h / 2 * k2) * (s.j + h / 2 * l2);
    Eigen::MatrixXd l4 = f.jacobian_at(t + h, x + h * k3) * (s.j + h * l3);
    s.j += h / 6 * (l1 + 2 * l2 + 2 * l3 + l4);
  }
  s.x += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

void advance(const VectorField& f, double t0, double t1, State& s, const IntegratorOptions& opts) {
  const double span = t1 - t0;
  if (span == 0.0) return;
  const auto n = static_cast<long>(std::ceil(std::abs(span) / opts.step - 1e-9));
  const long steps = std::max(1L, n);
  const double h = span / static_cast<double>(steps);
  for (long i = 0; i < steps; ++i) {
    step(f, t0 + h * static_cast<double>(i), h, s, opts.variational);
    check_domain(s.x, opts);
  }
}

}  // namespace

FlowResult rk4(const VectorField& rhs, const Eigen::VectorXd& x0, double t0, double t1,
               const IntegratorOptions& opts) {
  auto r = rk4_dense(rhs, x0, t0, {t1}, opts);
  return r.front();
}

std::vector<FlowResult> rk4_dense(const VectorField& rhs, const Eigen::VectorXd& x0, double t0,
                                  const std::vector<double>& stops, const IntegratorOptions& opts) {
  if (static_cast<std::size_t>(x0.size()) != rhs.dim) throw ChartMismatch("initial point has the wrong dimension");
  check_domain(x0, opts);
  State s{x0, opts.variational ? Eigen::MatrixXd::Identity(rhs.dim, rhs.dim) : Eigen::MatrixXd()};
  std::vector<FlowResult> out;
  double t = t0;
  for (double stop : stops) {
    advance(rhs, t, stop, s, opts);
    t = stop;
    out.push_back({s.x, s.j});
  }
  return out;
}

FlowResult flow(const VectorField& x, const Eigen::VectorXd& p, double t,
                const IntegratorOptions& opts, bool autonomous) {
  VectorField rhs;
  rhs.dim = x.dim;
  rhs.fd_step = x.fd_step;
  if (autonomous) {
    rhs.value = [&x](double s, const Eigen::VectorXd& w, Eigen::VectorXd& out) {
      x.value(s, w, out);
      out = -out;
    };
    rhs.jacobian = [&x](double s, const Eigen::VectorXd& w, Eigen::MatrixXd& out) {
      out = -x.jacobian_at(s, w);
    };
  } else {
    rhs.value = [&x, t](double s, const Eigen::VectorXd& w, Eigen::VectorXd& out) {
      x.value(t - s, w, out);
      out = -out;
    };
    rhs.jacobian = [&x, t](double s, const Eigen::VectorXd& w, Eigen::MatrixXd& out) {
      out = -x.jacobian_at(t - s, w);
    };
  }
  return rk4(rhs, p, 0.0, t, opts);
}

}  // namespace diraclab::numerics
