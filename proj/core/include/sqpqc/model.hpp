#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sqpqc {

using Vector = std::vector<double>;

/// Separable convex QP with separable quadratic constraints and box bounds:
///
///   min   sum_j delta_j y_j^2 + alpha_j y_j
///   s.t.  sum_j theta[i][j] y_j^2 + beta[i][j] y_j + sigma_i <= 0,  i < m
///         lower <= y <= upper
///
/// Constraint rows are stored densely, one row of length n per constraint.
struct ProblemInstance {
  std::size_t n = 0;
  std::size_t m = 0;
  Vector delta;
  Vector alpha;
  std::vector<Vector> theta;
  std::vector<Vector> beta;
  Vector sigma;
  Vector lower;
  Vector upper;
};

/// One constraint k kept explicit, the others folded into the objective with
/// fixed multipliers. `const_offset` is the folded sum of lambda_i * sigma_i.
struct SingleConstraintProblem {
  Vector delta_eff;
  Vector alpha_eff;
  Vector theta_k;
  Vector beta_k;
  double sigma_k = 0.0;
  Vector lower;
  Vector upper;
  double const_offset = 0.0;

  [[nodiscard]] std::size_t size() const { return delta_eff.size(); }
};

/// Nonnegative constraint multipliers, one per quadratic constraint.
struct DualVector {
  Vector values;

  DualVector() = default;
  explicit DualVector(std::size_t m) : values(m, 0.0) {}
  explicit DualVector(Vector v) : values(std::move(v)) {}

  [[nodiscard]] std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

struct KKTCertificate {
  Vector stationarity_residual;
  Vector eta_lower;
  Vector eta_upper;
  Vector comp_slack;   // lambda_i * g_i(y)
  Vector feasibility;  // g_i(y)
  double box_violation = 0.0;
  double max_residual = 0.0;
};

enum class SolveStatus {
  Converged,
  IterationCapReached,
  BracketFailure,
  InvalidInstance,
};

std::string_view to_string(SolveStatus status);
std::optional<SolveStatus> parse_status(std::string_view text);

/// One subproblem solve of the cyclic dual ascent.
struct IterationTrace {
  int iteration = 0;
  std::size_t k_updated = 0;  // 0-based constraint index
  DualVector lambda_after;
  std::optional<double> dual_value;
  std::size_t index_count = 0;  // constraints passing the stop test
};

struct SolveReport {
  Vector y;
  DualVector lambda;
  int iterations = 0;
  KKTCertificate certificate;
  double objective = 0.0;
  SolveStatus status = SolveStatus::InvalidInstance;
  std::optional<std::size_t> failed_constraint;
  std::vector<std::string> violations;
  std::vector<IterationTrace> trace;
};

struct ValidationReport {
  std::vector<std::string> violations;

  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Lists every violated shape, finiteness, convexity and box invariant.
ValidationReport validate(const ProblemInstance& instance);

double eval_objective(const ProblemInstance& instance, std::span<const double> y);
double eval_constraint(const ProblemInstance& instance, std::size_t i,
                       std::span<const double> y);

/// Folds every multiplier except lambda[k] into the objective.
SingleConstraintProblem aggregate(const ProblemInstance& instance,
                                  const DualVector& lambda, std::size_t k);

}  // namespace sqpqc
