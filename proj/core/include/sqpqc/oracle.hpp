#pragma once

#include "sqpqc/model.hpp"

namespace sqpqc {

inline constexpr std::size_t kOracleMaxConstraints = 3;
inline constexpr int kOracleGridPoints = 101;
inline constexpr double kOracleShrink = 10.0;
inline constexpr double kOracleLambdaLimit = 1e6;

struct OracleResult {
  DualVector lambda_hat;
  Vector y_hat;
  double value = 0.0;  // L(lambda_hat)
  double grid_resolution = 0.0;
  /// max_i max(g_i(y_hat), 0); y_hat is only grid-accurate.
  double max_violation = 0.0;
  double lambda_max = 0.0;  // upper grid bound actually used
};

/// Reference dual solver for m <= 3: evaluates L on a 101^m grid over
/// [0, lambda_max]^m and re-grids `levels` times around the best point,
/// shrinking the box by 10x each time. If the best point sits on the upper
/// face of the first grid, lambda_max grows 10x and the search restarts;
/// past 1e6 this throws std::runtime_error.
OracleResult oracle_dual_grid(const ProblemInstance& instance, double lambda_max = 10.0,
                              int levels = 4);

/// max_i |(L(lambda + h e_i) - L(lambda - h e_i)) / 2h - dL/dlambda_i|.
/// Requires lambda_i >= h for every i.
double finite_difference_check(const ProblemInstance& instance, const DualVector& lambda,
                               double h = 1e-5);

}  // namespace sqpqc
