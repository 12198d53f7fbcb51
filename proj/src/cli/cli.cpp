#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#include "commands.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/tensor_json.hpp"

namespace diraclab::cli {

namespace {

constexpr const char* kExactZero = "exact-zero";
constexpr const char* kExactNonzero = "exact-nonzero";

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) {
    if (!s.empty()) s += ' ';
    s += a;
  }
  return s;
}

Json residual_json(double r) {
  if (std::isfinite(r)) return r;
  return "inf";
}

}  // namespace

Criterion Criterion::exact_check(std::string name, bool pass, Json detail) {
  Criterion c;
  c.name = std::move(name);
  c.exact = true;
  c.pass = pass;
  c.detail = std::move(detail);
  return c;
}

Criterion Criterion::numeric(std::string name, const ResidualReport& r, double tolerance, Json detail) {
  Criterion c;
  c.name = std::move(name);
  c.max_residual = r.max_residual;
  c.worst_point = r.worst_point;
  c.tolerance = tolerance;
  c.pass = r.within(tolerance);
  c.detail = std::move(detail);
  return c;
}

Json Criterion::to_json() const {
  Json j = {{"name", name},
            {"status", pass ? "pass" : "fail"},
            {"max_residual", exact ? Json(pass ? kExactZero : kExactNonzero) : residual_json(max_residual)},
            {"worst_point", worst_point},
            {"tolerance", tolerance}};
  if (!detail.is_null()) j["detail"] = detail;
  return j;
}

bool Report::all_pass() const {
  if (!error.is_null()) return false;
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return true;
}

Json Report::to_json() const {
  Json crit = Json::array();
  for (const auto& c : criteria) crit.push_back(c.to_json());
  Json j = {{"schema_version", kSchemaVersion},
            {"command", command},
            {"seed", seed},
            {"status", all_pass() ? "pass" : "fail"},
            {"criteria", crit},
            {"result", result}};
  if (!error.is_null()) j["error"] = error;
  if (wall_seconds) j["wall_time_s"] = *wall_seconds;
  return j;
}

std::vector<std::string> validate_report(const Json& j) {
  std::vector<std::string> problems;
  auto need = [&](const char* key, auto&& pred, const char* what) {
    if (!j.contains(key)) {
      problems.push_back(std::string("missing ") + key);
    } else if (!pred(j[key])) {
      problems.push_back(std::string(key) + " must be " + what);
    }
  };
  if (!j.is_object()) return {"report must be an object"};
  need("schema_version", [](const Json& v) { return v.is_number_integer() && v.get<int>() == kSchemaVersion; },
       "the current schema version");
  need("command", [](const Json& v) { return v.is_string(); }, "a string");
  need("seed", [](const Json& v) { return v.is_number_unsigned() || v.is_number_integer(); }, "an integer");
  need("status", [](const Json& v) { return v == "pass" || v == "fail"; }, "pass or fail");
  need("result", [](const Json& v) { return v.is_object(); }, "an object");
  need("criteria", [](const Json& v) { return v.is_array(); }, "an array");
  if (j.contains("wall_time_s") && !j["wall_time_s"].is_number()) problems.push_back("wall_time_s must be a number");
  if (j.contains("error") && !j["error"].is_object()) problems.push_back("error must be an object");
  if (!problems.empty()) return problems;

  bool all = !j.contains("error");
  for (std::size_t i = 0; i < j["criteria"].size(); ++i) {
    const Json& c = j["criteria"][i];
    const std::string at = "criteria[" + std::to_string(i) + "]";
    if (!c.is_object()) {
      problems.push_back(at + " must be an object");
      continue;
    }
    for (const char* key : {"name", "status", "max_residual", "worst_point", "tolerance"}) {
      if (!c.contains(key)) problems.push_back(at + " missing " + key);
    }
    if (!problems.empty()) continue;
    if (!c["name"].is_string()) problems.push_back(at + ".name must be a string");
    if (c["status"] != "pass" && c["status"] != "fail") problems.push_back(at + ".status must be pass or fail");
    if (!c["tolerance"].is_number() || c["tolerance"].get<double>() < 0) {
      problems.push_back(at + ".tolerance must be a non-negative number");
    }
    bool points_ok = c["worst_point"].is_array();
    if (points_ok)
      for (const auto& v : c["worst_point"]) points_ok = points_ok && v.is_number();
    if (!points_ok) problems.push_back(at + ".worst_point must be an array of numbers");
    const Json& r = c["max_residual"];
    bool expected_pass = false;
    if (r.is_number()) {
      expected_pass = c["tolerance"].is_number() && r.get<double>() <= c["tolerance"].get<double>();
    } else if (r == kExactZero) {
      expected_pass = true;
    } else if (r != kExactNonzero && r != "inf") {
      problems.push_back(at + ".max_residual must be a number, inf, exact-zero or exact-nonzero");
      continue;
    }
    if ((c["status"] == "pass") != expected_pass) problems.push_back(at + ".status disagrees with max_residual");
    all = all && expected_pass;
  }
  if (problems.empty() && (j["status"] == "pass") != all) problems.push_back("status disagrees with criteria");
  return problems;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certify Poisson, Dirac and Poisson Lie group constructions", "diraclab"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  double tol = 0.0;
  bool timing = false;
  app.add_option("--seed", ctx.seed, "Seed for all sampled points")->capture_default_str();
  auto* tol_opt = app.add_option("--tol", tol, "Override every numeric tolerance")->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", timing, "Add wall time to the report");
  Action action;
  register_poisson(app, action);
  register_dirac(app, action);
  register_flows(app, action);
  register_manin(app, action);

  Report report;
  report.command = join_args(args);
  auto emit = [&](int code) {
    const std::string text = report.to_json().dump(2);
    out << text << '\n';
    if (!report.copy_path.empty()) {
      std::ofstream file(report.copy_path);
      file << text << '\n';
      if (!file) {
        err << "diraclab: cannot write " << report.copy_path << '\n';
        return static_cast<int>(kInputError);
      }
    }
    return code;
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kPass;
    }
    err << "diraclab: " << e.what() << '\n';
    report.error = {{"kind", "usage"}, {"message", e.what()}};
    return emit(kInputError);
  }
  if (tol_opt->count() > 0) ctx.tol = tol;
  report.seed = ctx.seed;
  if (!action) {
    report.error = {{"kind", "usage"}, {"message", "no command selected"}};
    return emit(kInputError);
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Report r = action(ctx);
    report.criteria = std::move(r.criteria);
    report.result = std::move(r.result);
    report.copy_path = std::move(r.copy_path);
  } catch (const InputError& e) {
    err << "diraclab: " << e.what() << '\n';
    report.error = e.detail();
    report.error["kind"] = report.error.value("kind", "input");
    report.error["message"] = e.what();
    return emit(kInputError);
  } catch (const fields::FormatError& e) {
    err << "diraclab: " << e.what() << '\n';
    report.error = {{"kind", "format"}, {"path", e.path()}, {"message", e.what()}};
    return emit(kInputError);
  } catch (const std::invalid_argument& e) {
    // ChartMismatch, DegreeError and PreconditionError on user input.
    err << "diraclab: " << e.what() << '\n';
    report.error = {{"kind", "input"}, {"message", e.what()}};
    return emit(kInputError);
  } catch (const TransversalityError& e) {
    err << "diraclab: " << e.what() << '\n';
    report.error = {{"kind", "numerical"}, {"message", e.what()}, {"point", e.point()}};
    return emit(kCheckFailed);
  } catch (const DomainEscape& e) {
    err << "diraclab: " << e.what() << '\n';
    report.error = {{"kind", "numerical"}, {"message", e.what()}, {"point", e.point()}};
    return emit(kCheckFailed);
  }
  if (timing) {
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return emit(report.all_pass() ? kPass : kCheckFailed);
}

}  // namespace diraclab::cli
