#include <random>

#include "diraclab/dense.hpp"
#include "diraclab/dirac.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/parallel.hpp"
#include "diraclab/quadrature.hpp"
#include "diraclab/realization.hpp"

namespace diraclab::realization {

namespace {

numerics::VectorField as_field(const SprayField& spray, double sign) {
  numerics::VectorField f;
  f.dim = 2 * spray.base_dim();
  f.value = [&spray, sign](double, const Eigen::VectorXd& x, Eigen::VectorXd& out) { out = sign * spray.value(x); };
  f.jacobian = [&spray, sign](double, const Eigen::VectorXd& x, Eigen::MatrixXd& out) {
    out = sign * spray.jacobian(x);
  };
  return f;
}

numerics::IntegratorOptions options(const RealizationConfig& config) {
  if (!(config.step > 0)) throw PreconditionError("integration step must be positive");
  numerics::IntegratorOptions o;
  o.step = config.step;
  o.escape_bound = config.escape_bound;
  return o;
}

void check_point(const SprayField& spray, const std::vector<double>& point) {
  if (point.size() != 2 * spray.base_dim()) throw ChartMismatch("point is not on the cotangent chart");
}

Eigen::VectorXd form_at(const PolyKForm& a, const Eigen::VectorXd& x) {
  return a.vector_at(std::span<const double>(x.data(), x.size()));
}

Eigen::MatrixXd base_poisson(const PoissonBivector& pi, const Eigen::VectorXd& x) {
  return pi.matrix_at(std::span<const double>(x.data(), x.size()));
}

}  // namespace

numerics::FlowResult flow(const SprayField& spray, const std::vector<double>& point, double t,
                          const RealizationConfig& config) {
  check_point(spray, point);
  return numerics::flow(as_field(spray, 1.0), numerics::to_eigen(point), t, options(config), true);
}

RealizationSample sample(const SprayField& spray, const std::vector<double>& point, const RealizationConfig& config) {
  check_point(spray, point);
  const std::size_t n = spray.base_dim();
  const auto rule = numerics::gauss_legendre(config.quadrature_order, 0.0, 1.0);
  std::vector<double> stops = rule.nodes;
  stops.push_back(1.0);
  // Phi_{-s} solves x' = +X forward in s.
  const auto states = numerics::rk4_dense(as_field(spray, 1.0), numerics::to_eigen(point), 0.0, stops, options(config));
  const Eigen::MatrixXd can = numerics::canonical_symplectic(n);
  RealizationSample out;
  out.point = point;
  out.omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const auto& j = states[k].jacobian;
    out.omega += rule.weights[k] * (j.transpose() * can * j);
  }
  out.omega = 0.5 * (out.omega - out.omega.transpose());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.omega);
  const auto& sv = svd.singularValues();
  out.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(sv(sv.size() - 1) > 1e-12 * sv(0))) {
    throw PreconditionError("realization form is degenerate at " + format_point(point));
  }
  out.poisson = -out.omega.inverse();
  const auto& end = states.back();
  out.source = numerics::to_eigen(point).head(n);
  out.target = end.point.head(n);
  out.ds = Eigen::MatrixXd::Zero(n, 2 * n);
  out.ds.leftCols(n) = Eigen::MatrixXd::Identity(n, n);
  out.dt = end.jacobian.topRows(n);
  return out;
}

Eigen::MatrixXd realization_form(const SprayField& spray, const std::vector<double>& point,
                                 const RealizationConfig& config) {
  return sample(spray, point, config).omega;
}

SourceTarget source_target(const SprayField& spray, const std::vector<double>& point, const RealizationConfig& config) {
  check_point(spray, point);
  const std::size_t n = spray.base_dim();
  auto end = flow(spray, point, -1.0, config);
  SourceTarget st;
  st.source = numerics::to_eigen(point).head(n);
  st.target = end.point.head(n);
  st.ds = Eigen::MatrixXd::Zero(n, 2 * n);
  st.ds.leftCols(n) = Eigen::MatrixXd::Identity(n, n);
  st.dt = end.jacobian.topRows(n);
  return st;
}

double DualPairReport::max_residual() const {
  return std::max({target_poisson.max_residual, source_antipoisson.max_residual, orthogonality.max_residual,
                   graph_condition.max_residual});
}

DualPairReport verify_dual_pair(const SprayField& spray, const PoissonBivector& pi,
                                const std::vector<std::vector<double>>& samples, const RealizationConfig& config) {
  if (pi.dim() != spray.base_dim()) throw ChartMismatch("bivector and spray on different charts");
  struct Row {
    double poisson_t, poisson_s, orth, graph, cond;
  };
  std::vector<Row> rows(samples.size());
  numerics::parallel_for(samples.size(), [&](std::size_t i) {
    const auto sm = sample(spray, samples[i], config);
    Row r{};
    const Eigen::MatrixXd pt = base_poisson(pi, sm.target), ps = base_poisson(pi, sm.source);
    r.poisson_t = numerics::max_abs(sm.dt * sm.poisson * sm.dt.transpose() - pt);
    r.poisson_s = numerics::max_abs(sm.ds * sm.poisson * sm.ds.transpose() + ps);
    const Eigen::MatrixXd kt = numerics::null_space(sm.dt), ks = numerics::null_space(sm.ds);
    r.orth = numerics::max_abs(kt.transpose() * sm.omega * ks);
    const Eigen::MatrixXd lhs =
        numerics::column_space(dirac::gauge_fiber(dirac::pullback_fiber(sm.dt, dirac::graph_fiber(pt), samples[i]),
                                                  sm.omega));
    const Eigen::MatrixXd rhs = dirac::pullback_fiber(sm.ds, dirac::graph_fiber(ps), samples[i]);
    r.graph = std::max(numerics::subspace_distance(lhs, rhs), numerics::subspace_distance(rhs, lhs));
    r.cond = sm.condition;
    rows[i] = r;
  });
  DualPairReport rep;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    rep.target_poisson.record(rows[i].poisson_t, samples[i]);
    rep.source_antipoisson.record(rows[i].poisson_s, samples[i]);
    rep.orthogonality.record(rows[i].orth, samples[i]);
    rep.graph_condition.record(rows[i].graph, samples[i]);
    rep.worst_condition = std::max(rep.worst_condition, rows[i].cond);
  }
  return rep;
}

std::vector<std::vector<double>> random_samples(std::size_t n, std::size_t count, double q_box, double radius,
                                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<std::vector<double>> out;
  while (out.size() < count) {
    std::vector<double> x(2 * n);
    for (std::size_t i = 0; i < n; ++i) x[i] = q_box * unit(rng);
    double norm2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[n + i] = radius * unit(rng);
      norm2 += x[n + i] * x[n + i];
    }
    if (norm2 <= radius * radius) out.push_back(std::move(x));
  }
  return out;
}

Eigen::VectorXd left_field(const RealizationSample& s, const PolyKForm& alpha) {
  return -s.poisson.transpose() * (s.ds.transpose() * form_at(alpha, s.source));
}

Eigen::VectorXd right_field(const RealizationSample& s, const PolyKForm& alpha) {
  return -s.poisson.transpose() * (s.dt.transpose() * form_at(alpha, s.target));
}

InvariantFields invariant_vector_fields(const SprayField& spray, const PolyKForm& alpha, const PolyKForm& beta,
                                        const std::vector<double>& point, const RealizationConfig& config) {
  const PoissonBivector& pi = spray.base();
  if (alpha.dim() != pi.dim() || beta.dim() != pi.dim()) throw ChartMismatch("1-forms not on the base chart");
  const auto s = sample(spray, point, config);
  InvariantFields f;
  f.alpha_left = left_field(s, alpha);
  f.alpha_right = right_field(s, alpha);
  f.beta_left = left_field(s, beta);
  f.beta_right = right_field(s, beta);
  const Eigen::MatrixXd ps = base_poisson(pi, s.source), pt = base_poisson(pi, s.target);
  const Eigen::VectorXd a_s = form_at(alpha, s.source), b_s = form_at(beta, s.source);
  const Eigen::VectorXd a_t = form_at(alpha, s.target), b_t = form_at(beta, s.target);
  // pi#(a) has components sum_i a_i pi^{ij}, i.e. P^T a.
  f.residuals.push_back((s.ds * f.alpha_left - ps.transpose() * a_s).cwiseAbs().maxCoeff());
  f.residuals.push_back((s.dt * f.alpha_right + pt.transpose() * a_t).cwiseAbs().maxCoeff());
  f.residuals.push_back(std::abs(f.alpha_left.dot(s.omega * f.beta_left) + a_s.dot(ps * b_s)));
  f.residuals.push_back(std::abs(f.alpha_right.dot(s.omega * f.beta_right) - a_t.dot(pt * b_t)));
  f.residuals.push_back(std::abs(f.alpha_left.dot(s.omega * f.beta_right)));
  return f;
}

std::vector<double> invariant_bracket_residuals(const SprayField& spray, const PolyKForm& alpha,
                                                const PolyKForm& beta, const std::vector<double>& point,
                                                const RealizationConfig& config, double fd_step) {
  const PoissonBivector& pi = spray.base();
  const PolyKForm ab = poisson::form_bracket(pi, alpha, beta);
  const std::size_t dim = point.size();
  // Samples at the point (index 0) and at +-fd_step along each axis.
  std::vector<std::vector<double>> pts{point};
  for (std::size_t k = 0; k < dim; ++k) {
    for (double sgn : {1.0, -1.0}) {
      auto q = point;
      q[k] += sgn * fd_step;
      pts.push_back(q);
    }
  }
  std::vector<RealizationSample> samples(pts.size());
  numerics::parallel_for(pts.size(), [&](std::size_t i) { samples[i] = sample(spray, pts[i], config); });

  using FieldFn = Eigen::VectorXd (*)(const RealizationSample&, const PolyKForm&);
  auto derivative = [&](FieldFn fn, const PolyKForm& a) {
    Eigen::MatrixXd d(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
      d.col(k) = (fn(samples[1 + 2 * k], a) - fn(samples[2 + 2 * k], a)) / (2 * fd_step);
    }
    return d;
  };
  auto lie = [&](FieldFn f1, const PolyKForm& a1, FieldFn f2, const PolyKForm& a2) {
    const Eigen::VectorXd u = f1(samples[0], a1), v = f2(samples[0], a2);
    return Eigen::VectorXd(derivative(f2, a2) * u - derivative(f1, a1) * v);
  };
  std::vector<double> res;
  res.push_back((lie(left_field, alpha, left_field, beta) - left_field(samples[0], ab)).cwiseAbs().maxCoeff());
  res.push_back((lie(right_field, alpha, right_field, beta) + right_field(samples[0], ab)).cwiseAbs().maxCoeff());
  res.push_back(lie(left_field, alpha, right_field, beta).cwiseAbs().maxCoeff());
  return res;
}

}  // namespace diraclab::realization
