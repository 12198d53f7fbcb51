#include "commands.hpp"
#include "diraclab/realization.hpp"

namespace diraclab::cli {

namespace {

struct FlowOptions {
  std::string poisson, family, field, report;
  std::size_t samples = 20;
  double radius = 0.2;
  double step = 1e-3;
  double box = 1.0;
  double time = 0.5;
};

Report realize(const FlowOptions& o, const Context& ctx) {
  const auto pi = load_bivector(o.poisson);
  const auto spray = realization::default_spray(pi);
  realization::RealizationConfig config;
  config.step = o.step;
  config.radius = o.radius;
  const auto samples = realization::random_samples(pi.dim(), o.samples, o.box, o.radius, ctx.seed);
  const auto rep = realization::verify_dual_pair(spray, pi, samples, config);
  const double tol = ctx.tolerance(1e-6);
  Report r;
  r.criteria.push_back(Criterion::numeric("target_poisson", rep.target_poisson, tol));
  r.criteria.push_back(Criterion::numeric("source_anti_poisson", rep.source_antipoisson, tol));
  r.criteria.push_back(Criterion::numeric("fiber_orthogonality", rep.orthogonality, tol));
  r.criteria.push_back(Criterion::numeric("graph_condition", rep.graph_condition, tol));
  r.result = {{"samples", samples.size()},
              {"radius", o.radius},
              {"step", o.step},
              {"worst_condition", rep.worst_condition}};
  r.copy_path = o.report;
  return r;
}

Report moser(const FlowOptions& o, const Context& ctx) {
  const auto pi = load_bivector(o.poisson);
  const auto family = load_family(o.family);
  if (family.dim() != pi.dim()) throw InputError("family and bivector live on different charts", {{"kind", "input"}});
  poisson::FlowConfig config;
  config.step = o.step;
  const auto grid = box_samples(pi.dim(), o.samples, o.box, ctx.seed);
  const auto res = poisson::moser_verify(pi, family, o.time, grid, config);
  Report r;
  r.criteria.push_back(Criterion::numeric("moser_pushforward", res, ctx.tolerance(1e-6)));
  r.result = {{"time", o.time}, {"step", o.step}, {"samples", grid.size()}};
  return r;
}

Report linearize(const FlowOptions& o, const Context& ctx) {
  const auto x = load_vector_field(o.field);
  poisson::FlowConfig config;
  config.step = o.step;
  const auto samples = ball_samples(x.dim(), o.samples, o.radius, ctx.seed);
  const auto res = poisson::euler_linearize(x, samples, config);
  Report r;
  r.criteria.push_back(Criterion::numeric("euler_conjugation", res.residual, ctx.tolerance(1e-5)));
  Json images = Json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) images.push_back({{"point", samples[i]}, {"image", res.images[i]}});
  r.result = {{"images", images}};
  return r;
}

}  // namespace

void register_flows(CLI::App& root, Action& action) {
  auto opts = std::make_shared<FlowOptions>();
  auto* re = root.add_subcommand("realize", "Certify the spray realization of a Poisson structure");
  re->add_option("--poisson", opts->poisson, "Bivector JSON")->required();
  re->add_option("--samples", opts->samples, "Sample count")->capture_default_str();
  re->add_option("--radius", opts->radius, "Cotangent fiber radius")->capture_default_str();
  re->add_option("--step", opts->step, "RK4 step")->capture_default_str();
  re->add_option("--box", opts->box, "Half-width of the base sample box")->capture_default_str();
  re->add_option("--report", opts->report, "Also write the report to this file");
  re->callback([&action, opts] { action = [opts](const Context& ctx) { return realize(*opts, ctx); }; });

  opts = std::make_shared<FlowOptions>();
  opts->box = 0.5;
  auto* mo = root.add_subcommand("moser", "Moser flow relating gauge-equivalent bivectors");
  mo->add_option("--poisson", opts->poisson, "Initial bivector JSON")->required();
  mo->add_option("--family", opts->family, "Form family JSON")->required();
  mo->add_option("--time", opts->time, "Final time")->capture_default_str();
  mo->add_option("--step", opts->step, "RK4 step")->capture_default_str();
  mo->add_option("--samples", opts->samples, "Grid size")->capture_default_str();
  mo->add_option("--box", opts->box, "Half-width of the sample box")->capture_default_str();
  mo->callback([&action, opts] { action = [opts](const Context& ctx) { return moser(*opts, ctx); }; });

  opts = std::make_shared<FlowOptions>();
  opts->radius = 0.3;
  auto* li = root.add_subcommand("linearize", "Linearize an Euler-like vector field");
  li->add_option("--field", opts->field, "Vector field JSON")->required();
  li->add_option("--samples", opts->samples, "Sample count")->capture_default_str();
  li->add_option("--radius", opts->radius, "Sample ball radius")->capture_default_str();
  li->add_option("--step", opts->step, "RK4 step")->capture_default_str();
  li->callback([&action, opts] { action = [opts](const Context& ctx) { return linearize(*opts, ctx); }; });
}

}  // namespace diraclab::cli
