#include "commands.hpp"
#include "diraclab/dense.hpp"
#include "diraclab/tensor_json.hpp"

namespace diraclab::cli {

namespace {

struct DiracOptions {
  std::string frame, poisson, form, map, source, target, point;
  std::size_t samples = 20;
  double box = 1.0;
  bool anti = false;
};

// Exactly one presentation of the Dirac structure.
dirac::LagrangianFrame load_structure(const DiracOptions& o) {
  const int given = !o.frame.empty() + !o.poisson.empty() + !o.form.empty();
  if (given != 1) {
    throw InputError("give exactly one of --frame, --poisson, --form", {{"kind", "usage"}});
  }
  if (!o.frame.empty()) return load_frame(o.frame);
  if (!o.poisson.empty()) return dirac::graph_of_poisson(load_bivector(o.poisson));
  const auto omega = load_form(o.form);
  if (omega.degree() != 2) throw InputError(o.form + ": expected a 2-form", {{"kind", "format"}, {"file", o.form}});
  return dirac::graph_of_form(omega);
}

std::vector<double> point_or_origin(const std::string& text, std::size_t dim) {
  if (text.empty()) return std::vector<double>(dim, 0.0);
  return parse_point(text, dim, "--point");
}

Report check_integrability(const DiracOptions& o) {
  const auto frame = load_structure(o);
  const auto x = point_or_origin(o.point, frame.dim());
  Report r;
  r.criteria.push_back(Criterion::exact_check("lagrangian", dirac::is_lagrangian(frame, x), Json{{"point", x}}));
  const auto upsilon = dirac::integrability_symbolic(frame);
  Json detail;
  if (!upsilon.is_zero()) {
    const auto& [idx, value] = *upsilon.components().begin();
    Json w = Json::array();
    for (auto i : idx) w.push_back(i + 1);
    detail = {{"witness", w}, {"component", value.str()}};
  }
  r.criteria.push_back(Criterion::exact_check("integrability", upsilon.is_zero(), detail));
  r.result = {{"integrability_tensor", fields::tensor_to_json(upsilon)}};
  return r;
}

Report gauge(const DiracOptions& o, const Context& ctx) {
  const auto pi = load_bivector(o.poisson);
  const auto omega = load_form(o.form);
  if (omega.degree() != 2 || omega.dim() != pi.dim()) {
    throw InputError(o.form + ": expected a 2-form on the bivector's chart", {{"kind", "format"}, {"file", o.form}});
  }
  Report r;
  const bool closed = fields::exterior_derivative(omega).is_zero();
  r.criteria.push_back(Criterion::exact_check("closed", closed));
  if (!closed) return r;
  const dirac::GaugeTransform transform(omega);

  // R_omega(Gr pi) and Gr(pi^omega) must span the same fibers.
  ResidualReport graph;
  const auto points = box_samples(pi.dim(), o.samples, o.box, ctx.seed);
  for (const auto& x : points) {
    const Eigen::MatrixXd p = pi.matrix_at(x);
    const Eigen::MatrixXd w = omega.matrix_at(x);
    const Eigen::MatrixXd gauged = dirac::gauge_poisson(pi, transform, x);
    const Eigen::MatrixXd lhs = numerics::column_space(dirac::gauge_fiber(dirac::graph_fiber(p), w));
    const Eigen::MatrixXd rhs = numerics::column_space(dirac::graph_fiber(gauged));
    graph.record(std::max(numerics::subspace_distance(lhs, rhs), numerics::subspace_distance(rhs, lhs)), x);
  }
  r.criteria.push_back(Criterion::numeric("graph", graph, ctx.tolerance(1e-9)));
  if (auto symbolic = dirac::gauge_poisson_symbolic(pi, transform)) {
    r.result["gauged"] = fields::tensor_to_json(*symbolic);
  } else if (!o.point.empty()) {
    const auto x = parse_point(o.point, pi.dim(), "--point");
    r.result["gauged_at_point"] = {{"point", x}, {"matrix", matrix_json(dirac::gauge_poisson(pi, transform, x))}};
  }
  return r;
}

Report pullback(const DiracOptions& o, const Context& ctx) {
  const auto phi = load_map(o.map);
  const auto frame = load_structure(o);
  if (frame.dim() != phi.target_dim()) {
    throw InputError("map target and Dirac structure live on different charts", {{"kind", "input"}});
  }
  const auto n = point_or_origin(o.point, phi.source_dim());
  const auto pulled = dirac::pullback_dirac_at_point(phi, frame, n);
  const Eigen::MatrixXd fiber = pulled.fiber_at(n);
  Report r;
  ResidualReport lagrangian;
  lagrangian.record(numerics::max_abs(dirac::gram(fiber)), n);
  r.criteria.push_back(Criterion::numeric("lagrangian", lagrangian, ctx.tolerance(1e-10)));
  // A graph of a bivector exactly when the covector block of the
  // orthonormal fiber is invertible.
  const std::size_t dim = phi.source_dim();
  const Eigen::MatrixXd covectors = fiber.bottomRows(static_cast<Eigen::Index>(dim));
  const bool graph = Eigen::JacobiSVD<Eigen::MatrixXd>(covectors).singularValues().minCoeff() > numerics::kRankThreshold;
  r.result = {{"point", n}, {"fiber", matrix_json(fiber)}, {"graph_of_bivector", graph}};
  return r;
}

Report poisson_map(const DiracOptions& o) {
  const auto phi = load_map(o.map);
  const auto pi_n = load_bivector(o.source);
  const auto pi_m = load_bivector(o.target);
  if (phi.source_dim() != pi_n.dim() || phi.target_dim() != pi_m.dim()) {
    throw InputError("map does not go between the bivectors' charts", {{"kind", "input"}});
  }
  const auto check = dirac::check_poisson_map(phi, pi_n, pi_m,
                                              o.anti ? dirac::MapKind::AntiPoisson : dirac::MapKind::Poisson);
  Json failures = Json::array();
  for (const auto& [i, j] : check.failures) failures.push_back({i, j});
  Report r;
  r.criteria.push_back(Criterion::exact_check(o.anti ? "anti_poisson_map" : "poisson_map", check.ok,
                                              check.ok ? Json() : Json{{"failures", failures}}));
  return r;
}

}  // namespace

void register_dirac(CLI::App& root, Action& action) {
  auto opts = std::make_shared<DiracOptions>();
  auto* group = root.add_subcommand("dirac", "Dirac structures: integrability, gauge, pullback");
  group->require_subcommand(1);
  auto structure = [opts](CLI::App* c) {
    c->add_option("--frame", opts->frame, "Frame JSON");
    c->add_option("--poisson", opts->poisson, "Bivector JSON, for Gr(pi)");
    c->add_option("--form", opts->form, "2-form JSON, for Gr(omega)");
  };

  auto* ci = group->add_subcommand("check-integrability", "Exact Lagrangian and Courant closure checks");
  structure(ci);
  ci->add_option("--point", opts->point, "Point for the rank test (default origin)");
  ci->callback([&action, opts] { action = [opts](const Context&) { return check_integrability(*opts); }; });

  auto* g = group->add_subcommand("gauge", "Gauge transform of Gr(pi) by a closed 2-form");
  g->add_option("--poisson", opts->poisson, "Bivector JSON")->required();
  g->add_option("--form", opts->form, "2-form JSON")->required();
  g->add_option("--samples", opts->samples, "Sample count")->capture_default_str();
  g->add_option("--box", opts->box, "Half-width of the sample box")->capture_default_str();
  g->add_option("--point", opts->point, "Evaluate the gauged bivector here when no closed form exists");
  g->callback([&action, opts] { action = [opts](const Context& ctx) { return gauge(*opts, ctx); }; });

  auto* p = group->add_subcommand("pullback", "Pullback of a Dirac structure at a point");
  p->add_option("--map", opts->map, "Map JSON")->required();
  structure(p);
  p->add_option("--point", opts->point, "Point of the source chart (default origin)");
  p->callback([&action, opts] { action = [opts](const Context& ctx) { return pullback(*opts, ctx); }; });

  auto* pm = group->add_subcommand("poisson-map", "Exact Poisson map check");
  pm->add_option("--map", opts->map, "Map JSON")->required();
  pm->add_option("--source", opts->source, "Bivector on the source chart")->required();
  pm->add_option("--target", opts->target, "Bivector on the target chart")->required();
  pm->add_flag("--anti", opts->anti, "Check the anti-Poisson identity");
  pm->callback([&action, opts] { action = [opts](const Context&) { return poisson_map(*opts); }; });
}

}  // namespace diraclab::cli
