#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "sqpqc/model.hpp"

namespace sqpqc {

/// Malformed instance or report document. The message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceDocument {
  ProblemInstance instance;
  std::optional<Vector> witness;
};

/// Instance JSON: n, m, delta, alpha, theta (m rows of n), beta, sigma, lower,
/// upper, and an optional witness array ignored by the solvers.
nlohmann::json instance_to_json(const ProblemInstance& instance,
                                const std::optional<Vector>& witness = std::nullopt);
InstanceDocument instance_from_json(const nlohmann::json& doc);

/// Serialized solve result. Also carries y and eps so `check` can recompute
/// the certificate without re-solving.
struct ReportDocument {
  SolveStatus status = SolveStatus::InvalidInstance;
  double objective = 0.0;
  Vector lambda;
  Vector y;
  int iterations = 0;
  double max_residual = 0.0;
  double wall_time_s = 0.0;
  double eps = 1e-6;
};

nlohmann::json report_to_json(const SolveReport& report, double eps, double wall_time_s,
                              bool include_trace);
ReportDocument report_from_json(const nlohmann::json& doc);

/// Reads and parses a JSON file; ParseError on I/O or syntax failure.
nlohmann::json read_json_file(const std::filesystem::path& path);
/// Writes `doc` followed by a newline; std::runtime_error if the path is unwritable.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace sqpqc
