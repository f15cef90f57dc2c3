#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "sqpqc/model.hpp"

namespace sqpqc {

/// How a constraint is counted as settled by the stop test.
/// `And`: g_i(y) <= eps and |lambda_i g_i(y)| <= eps (the eps-KKT reading).
/// `Or`:  g_i(y) <= eps or |lambda_i g_i(y)| <= eps (literal pseudocode).
enum class StopRule { And, Or };

struct SolverConfig {
  double eps = 1e-6;
  int max_iters = 1000;
  bool track_dual_values = false;
  bool record_trace = false;
  StopRule stop_rule = StopRule::And;
  /// Starting multipliers; zeros when absent.
  std::optional<DualVector> warm_start;
  /// First constraint visited by the cyclic sweep.
  std::size_t start_index = 0;
};

/// Cyclic dual coordinate ascent. Each iteration folds all multipliers but
/// one into the objective, solves the single-constraint subproblem by
/// bisection and writes back its multiplier. Stops once every constraint
/// passes the stop test, but never before each multiplier has been updated
/// once in this run.
SolveReport solve(const ProblemInstance& instance, const SolverConfig& config = {});

/// Box-clamped minimizer of f + sum_i lambda_i g_i.
Vector lagrangian_minimizer(const ProblemInstance& instance, const DualVector& lambda);

/// L(lambda) = min_box f + sum_i lambda_i g_i, evaluated by the closed form.
double dual_value(const ProblemInstance& instance, const DualVector& lambda);

/// (g_1(y*(lambda)), ..., g_m(y*(lambda))).
Vector dual_gradient(const ProblemInstance& instance, const DualVector& lambda);

/// Residuals of the full KKT system at (lambda, y). Box multipliers are
/// recovered from the Lagrangian gradient where y_j lies within `eps` of a bound.
KKTCertificate kkt_residuals(const ProblemInstance& instance, const DualVector& lambda,
                             std::span<const double> y, double eps = 1e-6);

/// Number of constraints passing the stop test at (lambda, y).
std::size_t settled_constraints(const ProblemInstance& instance, const DualVector& lambda,
                                std::span<const double> y, double eps, StopRule rule);

}  // namespace sqpqc
