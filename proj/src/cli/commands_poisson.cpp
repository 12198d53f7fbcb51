#include "commands.hpp"
#include "diraclab/dense.hpp"
#include "diraclab/tensor_json.hpp"

namespace diraclab::cli {

namespace {

struct PoissonOptions {
  std::string file, f_file, g_file, point;
};

Json witness_json(const fields::Indices& idx) {
  Json w = Json::array();
  for (auto i : idx) w.push_back(i + 1);
  return w;
}

Report check(const PoissonOptions& o) {
  const auto pi = load_bivector(o.file);
  const auto jac = poisson::jacobiator(pi);
  Report r;
  Json detail;
  if (!jac.is_zero()) {
    const auto& [idx, value] = *jac.components().begin();
    detail = {{"witness", witness_json(idx)}, {"component", value.str()}};
  }
  r.criteria.push_back(Criterion::exact_check("jacobi", jac.is_zero(), detail));
  r.result = {{"poisson", jac.is_zero()}, {"dim", pi.dim()}};
  return r;
}

Report bracket(const PoissonOptions& o) {
  const auto pi = load_bivector(o.file);
  const auto f = load_scalar(o.f_file);
  const auto g = load_scalar(o.g_file);
  if (f.nvars() != pi.dim() || g.nvars() != pi.dim()) {
    throw InputError("functions and bivector live on different charts", {{"kind", "input"}});
  }
  Report r;
  const auto b = poisson::bracket(pi, f, g);
  r.result = {{"bracket", fields::poly_to_json(b)}, {"text", b.str()}};
  return r;
}

Report jacobiator(const PoissonOptions& o) {
  const auto pi = load_bivector(o.file);
  Report r;
  r.result = {{"jacobiator", fields::tensor_to_json(poisson::jacobiator(pi))}};
  return r;
}

Report leaf(const PoissonOptions& o, const Context& ctx) {
  const auto pi = load_bivector(o.file);
  const auto m = parse_point(o.point, pi.dim(), "--point");
  const auto d = poisson::leaf_data_at_point(pi, m);
  Report r;
  ResidualReport inverse;
  if (d.rank > 0) {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d.rank, d.rank);
    inverse.record(numerics::max_abs(d.leaf_form * d.leaf_poisson + id), m);
  } else {
    inverse.record(0.0, m);
  }
  r.criteria.push_back(Criterion::numeric("leaf_form_inverts_poisson", inverse, ctx.tolerance(1e-10)));
  r.result = {{"point", m},
              {"rank", d.rank},
              {"basis", matrix_json(d.basis)},
              {"leaf_poisson", matrix_json(d.leaf_poisson)},
              {"leaf_form", matrix_json(d.leaf_form)},
              {"basis_dependent", {"basis", "leaf_poisson", "leaf_form"}}};
  return r;
}

}  // namespace

void register_poisson(CLI::App& root, Action& action) {
  auto opts = std::make_shared<PoissonOptions>();
  auto* group = root.add_subcommand("poisson", "Bivector fields: Jacobi identity, brackets, leaves");
  group->require_subcommand(1);

  auto* c = group->add_subcommand("check", "Exact Jacobi identity check");
  c->add_option("--file", opts->file, "Bivector JSON")->required();
  c->callback([&action, opts] { action = [opts](const Context&) { return check(*opts); }; });

  auto* b = group->add_subcommand("bracket", "Poisson bracket of two functions");
  b->add_option("--file", opts->file, "Bivector JSON")->required();
  b->add_option("--f", opts->f_file, "Scalar JSON")->required();
  b->add_option("--g", opts->g_file, "Scalar JSON")->required();
  b->callback([&action, opts] { action = [opts](const Context&) { return bracket(*opts); }; });

  auto* j = group->add_subcommand("jacobiator", "The Jacobiator trivector");
  j->add_option("--file", opts->file, "Bivector JSON")->required();
  j->callback([&action, opts] { action = [opts](const Context&) { return jacobiator(*opts); }; });

  auto* l = group->add_subcommand("leaf", "Symplectic leaf data at a point");
  l->add_option("--file", opts->file, "Bivector JSON")->required();
  l->add_option("--point", opts->point, "Comma-separated coordinates")->required();
  l->callback([&action, opts] { action = [opts](const Context& ctx) { return leaf(*opts, ctx); }; });
}

}  // namespace diraclab::cli
