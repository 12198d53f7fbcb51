#include "commands.hpp"
#include "diraclab/dense.hpp"

namespace diraclab::cli {

namespace {

struct ManinOptions {
  std::string triple, homspace, zeta, zeta2, point;
  std::size_t samples = 10;
  double box = 0.5;
};

std::vector<Eigen::VectorXd> chart_samples(std::size_t dim, std::size_t count, double box, std::uint64_t seed) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& p : box_samples(dim, count, box, seed)) out.push_back(numerics::to_eigen(p));
  return out;
}

Report check(const ManinOptions& o) {
  const auto t = load_triple(o.triple, false);
  const auto res = maningroup::check_manin_triple(t.triple);
  Report r;
  Json detail;
  if (!res.ok) {
    Json w = Json::array();
    for (auto i : res.witness) w.push_back(i + 1);
    detail = {{"reason", res.reason}, {"witness", w}};
  }
  r.criteria.push_back(Criterion::exact_check("manin_triple", res.ok, detail));
  r.result = {{"dim", t.triple.dim()}};
  return r;
}

Report bivector(const ManinOptions& o, const Context& ctx) {
  const auto t = load_triple(o.triple);
  const std::size_t n = t.chart->dim();
  const auto samples = chart_samples(n, o.samples, o.box, ctx.seed);
  ResidualReport skew, unit;
  for (const auto& x : samples) {
    const Eigen::MatrixXd w = maningroup::drinfeld_bivector(*t.chart, x);
    skew.record(numerics::max_abs(w + w.transpose()), numerics::to_std(x));
  }
  const Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  unit.record(numerics::max_abs(maningroup::drinfeld_bivector(*t.chart, e)), numerics::to_std(e));
  Report r;
  r.criteria.push_back(Criterion::numeric("skew", skew, ctx.tolerance(1e-12)));
  r.criteria.push_back(Criterion::numeric("vanishes_at_unit", unit, ctx.tolerance(1e-12)));
  r.criteria.push_back(Criterion::numeric("jacobi", maningroup::jacobi_residuals(*t.chart, samples), ctx.tolerance(1e-5)));
  if (!o.point.empty()) {
    const auto x = numerics::to_eigen(parse_point(o.point, n, "--point"));
    r.result = {{"point", numerics::to_std(x)},
                {"drinfeld", matrix_json(maningroup::drinfeld_bivector(*t.chart, x))},
                {"chart", matrix_json(maningroup::chart_bivector(*t.chart, x))}};
  }
  return r;
}

Report dressing(const ManinOptions& o, const Context& ctx) {
  const auto t = load_triple(o.triple);
  const std::size_t n = t.chart->dim();
  const std::size_t d = t.triple.dim();
  const auto zeta = numerics::to_eigen(parse_point(o.zeta, d, "--zeta"));
  // Without a second element, pair zeta with a seeded one.
  const Eigen::VectorXd zeta2 = o.zeta2.empty() ? numerics::to_eigen(box_samples(d, 1, 1.0, ctx.seed + 1).front())
                                                : numerics::to_eigen(parse_point(o.zeta2, d, "--zeta2"));
  const auto samples = chart_samples(n, o.samples, o.box, ctx.seed);
  const auto rep = maningroup::e_map_residuals(*t.chart, samples, zeta, zeta2);
  Report r;
  r.criteria.push_back(Criterion::numeric("e_map_metric", rep.metric, ctx.tolerance(1e-9)));
  r.criteria.push_back(Criterion::numeric("e_map_bracket", rep.bracket, ctx.tolerance(1e-4)));
  r.criteria.push_back(Criterion::numeric("maurer_cartan", rep.maurer_cartan, ctx.tolerance(1e-4)));
  const Eigen::VectorXd x = o.point.empty() ? Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))
                                            : numerics::to_eigen(parse_point(o.point, n, "--point"));
  r.result = {{"point", numerics::to_std(x)},
              {"zeta2", numerics::to_std(zeta2)},
              {"dressing_action", vector_json(maningroup::dressing_action(*t.chart, x, zeta))},
              {"dressing_field", vector_json(maningroup::dressing_field(*t.chart, x, zeta))}};
  return r;
}

Report multiplicativity(const ManinOptions& o, const Context& ctx) {
  const auto t = load_triple(o.triple);
  const std::size_t n = t.chart->dim();
  const auto first = chart_samples(n, o.samples, o.box, ctx.seed);
  const auto second = chart_samples(n, o.samples, o.box, ctx.seed + 1);
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
  for (std::size_t i = 0; i < first.size(); ++i) pairs.emplace_back(first[i], second[i]);
  Report r;
  r.criteria.push_back(
      Criterion::numeric("multiplicative", maningroup::verify_multiplicativity(*t.chart, pairs), ctx.tolerance(1e-5)));
  return r;
}

Report homspace(const ManinOptions& o, const Context& ctx) {
  const auto t = load_triple(o.triple);
  const Json j = load_json(o.homspace);
  const std::size_t d = t.triple.dim();
  maningroup::HomogeneousSpaceData data{t.triple, columns_from_json(load_member(o.homspace, j, "k_basis"), d, o.homspace, "k_basis"),
                                        columns_from_json(load_member(o.homspace, j, "l_basis"), d, o.homspace, "l_basis")};
  std::vector<Eigen::VectorXd> gens;
  const Json gj = j.value("generators", Json::array());
  for (std::size_t c = 0; c < gj.size(); ++c) {
    const std::string path = "generators[" + std::to_string(c) + "]";
    if (!gj[c].is_array() || gj[c].size() != d) {
      throw InputError(o.homspace + ": " + path + " must have " + std::to_string(d) + " numbers",
                       {{"kind", "format"}, {"file", o.homspace}, {"path", path}});
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
      if (!gj[c][i].is_number()) {
        throw InputError(o.homspace + ": " + path + " must hold numbers",
                         {{"kind", "format"}, {"file", o.homspace}, {"path", path + "[" + std::to_string(i) + "]"}});
      }
      v(static_cast<Eigen::Index>(i)) = gj[c][i].get<double>();
    }
    gens.push_back(v);
  }
  const auto res = maningroup::homogeneous_space_check(data, *t.chart, gens);
  Report r;
  Json detail;
  if (!res.check.ok) {
    Json w = Json::array();
    for (auto i : res.check.witness) w.push_back(i + 1);
    detail = {{"reason", res.check.reason}, {"witness", w}};
  }
  r.criteria.push_back(Criterion::exact_check("lagrangian_subalgebra", res.check.ok, detail));
  ResidualReport inv;
  inv.record(res.invariance_residual, {});
  r.criteria.push_back(Criterion::numeric("ad_invariance", inv, ctx.tolerance(maningroup::kAdTolerance)));
  r.result = {{"identity_component_only", res.identity_component_only}, {"generators", gens.size()}};
  return r;
}

}  // namespace

void register_manin(CLI::App& root, Action& action) {
  auto* group = root.add_subcommand("manin", "Manin triples and Poisson Lie groups");
  group->require_subcommand(1);
  auto add = [&](const char* name, const char* help, auto run, bool sampled) {
    auto opts = std::make_shared<ManinOptions>();
    auto* c = group->add_subcommand(name, help);
    c->add_option("--triple", opts->triple, "Triple JSON, or {\"builtin\": name}")->required();
    if (sampled) {
      c->add_option("--samples", opts->samples, "Sample count")->capture_default_str();
      c->add_option("--box", opts->box, "Half-width of the chart sample box")->capture_default_str();
    }
    c->callback([&action, opts, run] { action = [opts, run](const Context& ctx) { return run(*opts, ctx); }; });
    return std::make_pair(c, opts);
  };
  add("check", "Exact Manin triple check", [](const ManinOptions& o, const Context&) { return check(o); }, false);
  auto [b, bo] = add("bivector", "Drinfeld bivector: skewness, unit, Jacobi", bivector, true);
  b->add_option("--point", bo->point, "Report the bivector at this chart point");
  auto [d, dopt] = add("dressing", "Dressing action and e-map identities", dressing, true);
  d->add_option("--zeta", dopt->zeta, "Element of d, comma-separated")->required();
  d->add_option("--zeta2", dopt->zeta2, "Second element of d for the bracket identities");
  d->add_option("--point", dopt->point, "Chart point for the dressing field (default unit)");
  add("multiplicativity", "Group multiplication is a Poisson map", multiplicativity, true);
  auto [h, hopt] = add("homspace", "Lagrangian subalgebra defining a Poisson homogeneous space", homspace, false);
  h->add_option("--homspace", hopt->homspace, "Homogeneous space JSON")->required();
}

}  // namespace diraclab::cli
