#include "diraclab/dense.hpp"
#include "diraclab/dirac.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/maningroup.hpp"
#include "diraclab/parallel.hpp"

namespace diraclab::maningroup {

namespace {

constexpr double kSkewTolerance = 1e-12;

std::vector<double> as_point(const Eigen::VectorXd& x) { return numerics::to_std(x); }

Eigen::MatrixXd checked_ad(const GroupChart& chart, const Eigen::VectorXd& x) {
  const Eigen::MatrixXd ad = chart.ad_at(x);
  if (ad_residuals(chart.triple(), ad).max() > kAdTolerance) {
    throw PreconditionError("Ad is not an isometric automorphism of d at " + format_point(as_point(x)));
  }
  return ad;
}

// Central difference of a matrix-valued function along each chart axis.
template <class F>
std::vector<Eigen::MatrixXd> partials(const F& f, const Eigen::VectorXd& x, double h) {
  std::vector<Eigen::MatrixXd> d;
  for (Eigen::Index l = 0; l < x.size(); ++l) {
    Eigen::VectorXd xp = x, xm = x;
    xp(l) += h;
    xm(l) -= h;
    d.push_back((f(xp) - f(xm)) / (2 * h));
  }
  return d;
}

template <class F>
Eigen::MatrixXd field_jacobian(const F& f, const Eigen::VectorXd& x, double h) {
  const auto d = partials([&](const Eigen::VectorXd& y) { return Eigen::MatrixXd(f(y)); }, x, h);
  Eigen::MatrixXd j(x.size(), x.size());
  for (Eigen::Index l = 0; l < x.size(); ++l) j.col(l) = d[l].col(0);
  return j;
}

}  // namespace

AdResiduals ad_residuals(const ManinTriple& t, const Eigen::MatrixXd& ad) {
  const auto& d = t.algebra();
  const std::size_t n = d.dim();
  if (static_cast<std::size_t>(ad.rows()) != n || static_cast<std::size_t>(ad.cols()) != n) {
    throw ChartMismatch("Ad matrix has the wrong size");
  }
  AdResiduals r;
  r.metric = numerics::max_abs(ad.transpose() * d.metric_matrix() * ad - d.metric_matrix());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const Eigen::VectorXd ea = Eigen::VectorXd::Unit(n, a), eb = Eigen::VectorXd::Unit(n, b);
      const Eigen::VectorXd lhs = ad * d.bracket(ea, eb);
      const Eigen::VectorXd rhs = d.bracket(Eigen::VectorXd(ad.col(a)), Eigen::VectorXd(ad.col(b)));
      r.bracket = std::max(r.bracket, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return r;
}

Eigen::MatrixXd drinfeld_bivector(const GroupChart& chart, const Eigen::VectorXd& x) {
  const ManinTriple& t = chart.triple();
  const Eigen::MatrixXd moved = checked_ad(chart, x) * t.h_matrix();
  Eigen::MatrixXd pg(t.dim(), t.half_dim()), ph(t.dim(), t.half_dim());
  for (std::size_t i = 0; i < t.half_dim(); ++i) {
    pg.col(i) = t.project_g(moved.col(i));
    ph.col(i) = t.project_h(moved.col(i));
  }
  const Eigen::MatrixXd w = pg.transpose() * t.algebra().metric_matrix() * ph;
  if (numerics::max_abs(w + w.transpose()) > kSkewTolerance * std::max(1.0, numerics::max_abs(w))) {
    throw PreconditionError("Drinfeld bivector is not skew at " + format_point(as_point(x)));
  }
  return w;
}

Eigen::MatrixXd chart_bivector(const GroupChart& chart, const Eigen::VectorXd& x) {
  const ManinTriple& t = chart.triple();
  // Column j of q is <theta^L, nu_j> on the chart coordinates.
  const Eigen::MatrixXd pairing = t.g_matrix().transpose() * t.algebra().metric_matrix() * t.h_matrix();
  const Eigen::MatrixXd q = chart.maurer_cartan(x).transpose() * pairing;
  const Eigen::MatrixXd q_inv = q.partialPivLu().inverse();
  return q_inv.transpose() * drinfeld_bivector(chart, x) * q_inv;
}

ResidualReport jacobi_residuals(const GroupChart& chart, const std::vector<Eigen::VectorXd>& samples,
                                double fd_step) {
  std::vector<double> values(samples.size());
  numerics::parallel_for(samples.size(), [&](std::size_t s) {
    const Eigen::VectorXd& x = samples[s];
    const Eigen::MatrixXd p = chart_bivector(chart, x);
    const auto dp = partials([&](const Eigen::VectorXd& y) { return chart_bivector(chart, y); }, x, fd_step);
    const Eigen::Index n = x.size();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        for (Eigen::Index k = j + 1; k < n; ++k) {
          double v = 0.0;
          for (Eigen::Index l = 0; l < n; ++l) {
            v += p(i, l) * dp[l](j, k) + p(j, l) * dp[l](k, i) + p(k, l) * dp[l](i, j);
          }
          worst = std::max(worst, std::abs(v));
        }
    values[s] = worst;
  });
  ResidualReport r;
  for (std::size_t s = 0; s < samples.size(); ++s) r.record(values[s], as_point(samples[s]));
  return r;
}

Eigen::VectorXd dressing_action(const GroupChart& chart, const Eigen::VectorXd& x, const Eigen::VectorXd& zeta) {
  const ManinTriple& t = chart.triple();
  if (static_cast<std::size_t>(zeta.size()) != t.dim()) throw ChartMismatch("zeta is not in d");
  const Eigen::MatrixXd ad = chart.ad_at(x);
  return t.g_coordinates(ad.partialPivLu().solve(t.project_g(ad * zeta)));
}

Eigen::VectorXd dressing_field(const GroupChart& chart, const Eigen::VectorXd& x, const Eigen::VectorXd& zeta) {
  return chart.maurer_cartan(x).partialPivLu().solve(dressing_action(chart, x, zeta));
}

EMapReport e_map_residuals(const GroupChart& chart, const std::vector<Eigen::VectorXd>& samples,
                           const Eigen::VectorXd& zeta1, const Eigen::VectorXd& zeta2, double fd_step) {
  const ManinTriple& t = chart.triple();
  const auto& d = t.algebra();
  const Eigen::MatrixXd& metric = d.metric_matrix();
  const Eigen::VectorXd zeta12 = d.bracket(zeta1, zeta2);
  struct Row {
    double metric, bracket, maurer_cartan;
  };
  std::vector<Row> rows(samples.size());
  numerics::parallel_for(samples.size(), [&](std::size_t s) {
    const Eigen::VectorXd& x = samples[s];
    const std::size_t n = t.half_dim();
    const Eigen::MatrixXd theta = chart.maurer_cartan(x);
    const Eigen::MatrixXd theta_d = t.g_matrix() * theta;  // theta^L(d/dx_i) as d-vectors
    auto field = [&](const Eigen::VectorXd& z) {
      return [&chart, z](const Eigen::VectorXd& y) { return dressing_field(chart, y, z); };
    };
    Row row{};

    Eigen::MatrixXd fiber(2 * n, 2);
    fiber.col(0) << field(zeta1)(x), theta_d.transpose() * metric * zeta1;
    fiber.col(1) << field(zeta2)(x), theta_d.transpose() * metric * zeta2;
    row.metric = std::abs(dirac::gram(fiber)(0, 1) - zeta1.dot(metric * zeta2));

    const Eigen::MatrixXd j1 = field_jacobian(field(zeta1), x, fd_step);
    const Eigen::MatrixXd j2 = field_jacobian(field(zeta2), x, fd_step);
    const Eigen::VectorXd v1 = field(zeta1)(x), v2 = field(zeta2)(x);
    row.bracket = (j2 * v1 - j1 * v2 - field(zeta12)(x)).cwiseAbs().maxCoeff();

    const auto dtheta = partials([&](const Eigen::VectorXd& y) { return chart.maurer_cartan(y); }, x, fd_step);
    const Eigen::MatrixXd ad = chart.ad_at(x);
    const Eigen::PartialPivLU<Eigen::MatrixXd> ad_lu(ad);
    for (const auto* z : {&zeta1, &zeta2}) {
      const Eigen::VectorXd v = field(*z)(x);
      const Eigen::MatrixXd jv = field_jacobian(field(*z), x, fd_step);
      Eigen::MatrixXd lhs = theta * jv;
      for (std::size_t l = 0; l < n; ++l) lhs += v(l) * dtheta[l];
      const Eigen::VectorXd moved = ad * *z;
      for (std::size_t i = 0; i < n; ++i) {
        const Eigen::VectorXd inner = d.bracket(Eigen::VectorXd(ad * theta_d.col(i)), moved);
        const Eigen::VectorXd rhs = t.g_coordinates(ad_lu.solve(t.project_g(inner)));
        row.maurer_cartan = std::max(row.maurer_cartan, (lhs.col(i) - rhs).cwiseAbs().maxCoeff());
      }
    }
    rows[s] = row;
  });
  EMapReport r;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    r.metric.record(rows[s].metric, as_point(samples[s]));
    r.bracket.record(rows[s].bracket, as_point(samples[s]));
    r.maurer_cartan.record(rows[s].maurer_cartan, as_point(samples[s]));
  }
  return r;
}

ResidualReport verify_multiplicativity(const GroupChart& chart,
                                       const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& pairs,
                                       double fd_step) {
  auto mult = [&chart](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return chart.coordinates(chart.element(a) * chart.element(b));
  };
  std::vector<double> values(pairs.size());
  numerics::parallel_for(pairs.size(), [&](std::size_t s) {
    const auto& [x1, x2] = pairs[s];
    const Eigen::MatrixXd j1 = field_jacobian([&](const Eigen::VectorXd& y) { return mult(y, x2); }, x1, fd_step);
    const Eigen::MatrixXd j2 = field_jacobian([&](const Eigen::VectorXd& y) { return mult(x1, y); }, x2, fd_step);
    const Eigen::MatrixXd pushed = j1 * chart_bivector(chart, x1) * j1.transpose() +
                                   j2 * chart_bivector(chart, x2) * j2.transpose();
    values[s] = numerics::max_abs(pushed - chart_bivector(chart, mult(x1, x2)));
  });
  ResidualReport r;
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    std::vector<double> point = as_point(pairs[s].first);
    for (double v : as_point(pairs[s].second)) point.push_back(v);
    r.record(values[s], point);
  }
  return r;
}

HomogeneousResult homogeneous_space_check(const HomogeneousSpaceData& data, const GroupChart& chart,
                                          const std::vector<Eigen::VectorXd>& generators) {
  const ManinTriple& t = data.triple;
  const auto& d = t.algebra();
  if (chart.triple().dim() != t.dim()) throw ChartMismatch("chart belongs to a different triple");
  if (data.k_basis.rows() != t.dim() || data.l_basis.rows() != t.dim()) {
    throw ChartMismatch("subspace bases not in the d-basis");
  }
  using numerics::hstack;
  using numerics::rank;
  const std::size_t rank_g = rank(t.g_basis()), rank_k = rank(data.k_basis);
  if (rank(hstack(t.g_basis(), data.k_basis)) != rank_g) throw PreconditionError("k is not contained in g");
  if (!check_subalgebra(d, data.k_basis, "k").ok) throw PreconditionError("k is not a subalgebra");

  HomogeneousResult result;
  const std::size_t rank_l = rank(data.l_basis);
  if (rank_l * 2 != t.dim()) {
    result.check = CheckResult::failure("l dimension", {});
    return result;
  }
  if (auto r = check_isotropic(d, data.l_basis, "l"); !r.ok) return {r, 0.0, true};
  if (auto r = check_subalgebra(d, data.l_basis, "l"); !r.ok) return {r, 0.0, true};
  const std::size_t meet = rank_l + rank_g - rank(hstack(data.l_basis, t.g_basis()));
  if (meet != rank_k || rank(hstack(data.l_basis, data.k_basis)) != rank_l) {
    result.check = CheckResult::failure("l meets g outside k", {});
    return result;
  }

  Eigen::MatrixXd k_dense(t.dim(), data.k_basis.cols()), l_dense(t.dim(), data.l_basis.cols());
  for (std::size_t i = 0; i < t.dim(); ++i) {
    for (std::size_t j = 0; j < data.k_basis.cols(); ++j) k_dense(i, j) = to_double(data.k_basis(i, j));
    for (std::size_t j = 0; j < data.l_basis.cols(); ++j) l_dense(i, j) = to_double(data.l_basis(i, j));
  }
  const Eigen::MatrixXd k_span = numerics::column_space(k_dense);
  const Eigen::MatrixXd l_span = numerics::column_space(l_dense);
  const Eigen::MatrixXd l_complement =
      Eigen::MatrixXd::Identity(t.dim(), t.dim()) - l_span * l_span.transpose();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Eigen::VectorXd& kappa = generators[i];
    if (static_cast<std::size_t>(kappa.size()) != t.dim()) throw ChartMismatch("generator is not in d");
    const double outside = k_span.size() ? (kappa - k_span * (k_span.transpose() * kappa)).norm() : kappa.norm();
    if (outside > kAdTolerance * (1.0 + kappa.norm())) {
      throw PreconditionError("generator " + std::to_string(i + 1) + " is not in k");
    }
    const Eigen::MatrixXd ad = chart.ad_at(t.g_coordinates(kappa));
    const double residual = numerics::max_abs(l_complement * ad * l_span);
    result.invariance_residual = std::max(result.invariance_residual, residual);
    if (residual > kAdTolerance && result.check.ok) {
      result.check = CheckResult::failure("l not invariant under Ad of generator", {i});
    }
  }
  return result;
}

}  // namespace diraclab::maningroup
