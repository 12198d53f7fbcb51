#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "diraclab/report.hpp"

namespace diraclab::cli {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kInputError = 2 };

// One certified property. Exact checks carry no residual and serialize as
// "exact-zero" (pass) or "exact-nonzero" (fail).
struct Criterion {
  std::string name;
  bool exact = false;
  bool pass = false;
  double max_residual = 0.0;
  std::vector<double> worst_point;
  double tolerance = 0.0;
  Json detail;

  static Criterion exact_check(std::string name, bool pass, Json detail = nullptr);
  static Criterion numeric(std::string name, const ResidualReport& r, double tolerance, Json detail = nullptr);

  Json to_json() const;
};

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<Criterion> criteria;
  Json result = Json::object();
  Json error;  // null unless the run aborted
  std::optional<double> wall_seconds;
  // When set, the serialized report is also written to this file.
  std::string copy_path;

  bool all_pass() const;
  Json to_json() const;
};

// Problems found in a serialized report; empty when it conforms to the schema.
std::vector<std::string> validate_report(const Json& report);

// Parses args (without the program name), runs the subcommand, writes the
// JSON report to out and diagnostics to err. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diraclab::cli
