#include <cmath>

#include "diraclab/dense.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/ode.hpp"
#include "diraclab/parallel.hpp"
#include "diraclab/poisson.hpp"

namespace diraclab::poisson {

namespace {

using fields::CompiledPoly;

// Dense n x n table of compiled polynomials.
struct CompiledMatrix {
  std::size_t n = 0;
  std::vector<CompiledPoly> entries;

  CompiledMatrix() = default;
  template <fields::TensorKind K>
  explicit CompiledMatrix(const fields::Multi<K>& t) : n(t.dim()), entries(n * n) {
    for (const auto& [idx, p] : t.components()) {
      entries[idx[0] * n + idx[1]] = CompiledPoly(p);
      entries[idx[1] * n + idx[0]] = CompiledPoly(-p);
    }
  }
  Eigen::MatrixXd at(const double* x) const {
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entries[i * n + j](x);
    return m;
  }
};

struct CompiledForms {
  std::vector<std::vector<CompiledPoly>> one;  // per power of t, per component
  std::vector<CompiledMatrix> two;             // d of each term

  explicit CompiledForms(const FormFamily& a) {
    for (const auto& term : a.terms) {
      std::vector<CompiledPoly> comps;
      for (const auto& p : fields::components_of(term)) comps.emplace_back(p);
      one.push_back(std::move(comps));
      two.emplace_back(fields::exterior_derivative(term));
    }
  }
  Eigen::VectorXd form(double t, const double* x, std::size_t n) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    double tk = 1.0;
    for (const auto& comps : one) {
      for (std::size_t i = 0; i < n; ++i) v(i) += tk * comps[i](x);
      tk *= t;
    }
    return v;
  }
  Eigen::MatrixXd gauge(double t, const double* x, std::size_t n) const {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    double tk = t;
    for (std::size_t k = 0; k < two.size(); ++k) {
      w -= tk / static_cast<double>(k + 1) * two[k].at(x);
      tk *= t;
    }
    return w;
  }
};

}  // namespace

std::size_t FormFamily::dim() const { return terms.empty() ? 0 : terms.front().dim(); }

Eigen::VectorXd FormFamily::at(double t, std::span<const double> x) const {
  return CompiledForms(*this).form(t, x.data(), dim());
}

Eigen::MatrixXd FormFamily::gauge_form_at(double t, std::span<const double> x) const {
  return CompiledForms(*this).gauge(t, x.data(), dim());
}

Eigen::MatrixXd gauge_bivector_matrix(const Eigen::MatrixXd& p, const Eigen::MatrixXd& w,
                                      const std::vector<double>& point) {
  const Eigen::Index n = p.rows();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) + p * w;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s(n - 1) <= 1e-12 * std::max(1.0, s(0))) {
    throw TransversalityError("gauge transformation is not defined: I + pi# omega-flat is singular at " +
                                  format_point(point),
                              point);
  }
  return m.partialPivLu().solve(p);
}

ResidualReport moser_verify(const PoissonBivector& pi0, const FormFamily& a, double t_final,
                            const std::vector<std::vector<double>>& grid, const FlowConfig& config) {
  const std::size_t n = pi0.dim();
  for (const auto& term : a.terms) {
    if (term.degree() != 1) throw DegreeError("the primitive family must consist of 1-forms");
    if (term.dim() != n) throw ChartMismatch("primitive family is not on the bivector's chart");
  }
  const CompiledMatrix p0(pi0.tensor());
  const CompiledForms forms(a);

  auto gauged = [&](double t, const double* x) {
    return gauge_bivector_matrix(p0.at(x), forms.gauge(t, x, n), std::vector<double>(x, x + n));
  };
  numerics::VectorField field;
  field.dim = n;
  field.value = [&](double t, const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    // X_t = pi_t#(a_t), component j = sum_i a_i pi_t^{ij}.
    out = gauged(t, x.data()).transpose() * forms.form(t, x.data(), n);
  };

  numerics::IntegratorOptions opts;
  opts.step = config.step;
  opts.escape_bound = config.escape_bound;

  std::vector<double> residuals(grid.size());
  numerics::parallel_for(grid.size(), [&](std::size_t s) {
    const auto& x = grid[s];
    if (x.size() != n) throw ChartMismatch("grid point has the wrong dimension");
    Eigen::MatrixXd pt = gauged(t_final, x.data());
    auto r = numerics::flow(field, numerics::to_eigen(x), t_final, opts, false);
    Eigen::MatrixXd pushed = r.jacobian * pt * r.jacobian.transpose();
    residuals[s] = numerics::max_abs(pushed - p0.at(r.point.data()));
  });
  ResidualReport report;
  for (std::size_t s = 0; s < grid.size(); ++s) report.record(residuals[s], grid[s]);
  return report;
}

}  // namespace diraclab::poisson
