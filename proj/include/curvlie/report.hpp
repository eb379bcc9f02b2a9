#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvlie/einstein.hpp"

namespace curvlie {

enum class OutputFormat { Json, Text };

inline constexpr const char* kReportSchema = "curvlie-report/1";

struct RunConfig {
  /// curvature, groebner, invariant-space, solve, verify, catalog; empty is a no-op run.
  std::string subcommand;
  /// Case label for invariant-space/solve, input file for groebner.
  std::vector<std::string> arguments;
  /// Named input files: "algebra", "metric".
  std::map<std::string, std::string> inputs;
  int det_sign = 1;
  std::vector<Rational> r_samples;
  std::vector<int> q_blocks;
  GroebnerBudget budget;
  unsigned jobs = 1;
  OutputFormat format = OutputFormat::Json;
  int verbosity = 0;

  bool ricci = false;
  bool nabla_r = false;
  bool signature = false;
  bool certificate = false;
  bool catalog = false;
  /// "name=value,..." assignments for curvature.
  std::string eval;
  std::optional<std::string> lambda;
};

struct Report {
  std::string command;
  /// ok, solved, partial, verified, failed or error.
  std::string status = "ok";
  int exit_code = 0;
  /// Command specific fields in a fixed order.
  nlohmann::ordered_json body = nlohmann::ordered_json::object();
  double seconds = 0;
};

/// Runs the configured pipeline. Errors are reported with exit code 2
/// instead of being thrown.
Report run(const RunConfig& config);

/// JSON output is byte-identical for identical configs; timing is only
/// emitted when verbosity > 0.
std::string emit_report(const Report& report, OutputFormat format, int verbosity = 0);

// JSON encodings shared with the tests.
nlohmann::ordered_json to_json(const QSqrt3& x);
nlohmann::ordered_json to_json(const QuadExt& x);
nlohmann::ordered_json to_json(const SolutionRecord& s);
QSqrt3 qsqrt3_from_json(const nlohmann::ordered_json& j);

}  // namespace curvlie
