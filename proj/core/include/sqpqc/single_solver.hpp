#pragma once

#include <optional>
#include <span>

#include "sqpqc/model.hpp"

namespace sqpqc {

inline constexpr double kBracketStart = 1.0;
inline constexpr double kBracketCap = 1e12;
inline constexpr int kMaxBisectionSteps = 200;

/// Multiplier interval with g(y*(lo)) >= 0 > g(y*(hi)).
struct BisectionBracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct SingleSolveResult {
  double lambda_star = 0.0;
  Vector y_star;
  double g_at_solution = 0.0;
  int bisection_iters = 0;
  SolveStatus status = SolveStatus::Converged;
  /// Bracket handed to the bisection and the one it ended with. Both are
  /// [0, 0] when the multiplier is zero without searching.
  BisectionBracket initial_bracket;
  BisectionBracket final_bracket;
};

/// Box-clamped minimizer of the subproblem Lagrangian at `lambda`:
///   y_j = clamp(-(alpha_eff_j + lambda beta_k_j) / (2 (delta_eff_j + lambda theta_k_j)))
/// Throws std::invalid_argument for negative or non-finite lambda.
Vector inner_minimizer(const SingleConstraintProblem& sub, double lambda);

/// Same as inner_minimizer, writing into `out` (length n).
void inner_minimizer_into(const SingleConstraintProblem& sub, double lambda,
                          std::span<double> out);

/// g_k(y) for the explicit constraint of the subproblem.
double subproblem_constraint(const SingleConstraintProblem& sub,
                             std::span<const double> y);

/// g_k(y*(lambda)) without materializing y*. This is the dual derivative.
double constraint_response(const SingleConstraintProblem& sub, double lambda);

/// Folded objective f(y) + sum_{i != k} lambda_i g_i(y), including const_offset.
double subproblem_objective(const SingleConstraintProblem& sub,
                            std::span<const double> y);

/// Subproblem dual function min_box { folded objective + lambda g_k }.
double subproblem_dual_value(const SingleConstraintProblem& sub, double lambda);

/// Doubles hi from 1 until g(y*(hi)) < 0. Returns nullopt past 1e12, which
/// means the subproblem is infeasible or violates Slater's condition.
std::optional<BisectionBracket> bracket(const SingleConstraintProblem& sub);

/// Unique dual multiplier of the subproblem by bisection on g(y*(lambda)) = 0,
/// stopping once |g| <= eps.
SingleSolveResult solve_single(const SingleConstraintProblem& sub, double eps);

}  // namespace sqpqc
