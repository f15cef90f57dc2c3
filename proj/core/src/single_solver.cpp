#include "sqpqc/single_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sqpqc/summation.hpp"

namespace sqpqc {
namespace {

void require_multiplier(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("multiplier must be finite and >= 0, got " +
                                std::to_string(lambda));
  }
}

inline double clamped_coordinate(const SingleConstraintProblem& sub, double lambda,
                                 std::size_t j) {
  const double num = sub.alpha_eff[j] + lambda * sub.beta_k[j];
  const double den = 2.0 * (sub.delta_eff[j] + lambda * sub.theta_k[j]);
  return std::clamp(-num / den, sub.lower[j], sub.upper[j]);
}

}  // namespace

void inner_minimizer_into(const SingleConstraintProblem& sub, double lambda,
                          std::span<double> out) {
  require_multiplier(lambda);
  if (out.size() != sub.size()) {
    throw std::invalid_argument("output span has wrong dimension");
  }
  for (std::size_t j = 0; j < sub.size(); ++j) {
    out[j] = clamped_coordinate(sub, lambda, j);
  }
}

Vector inner_minimizer(const SingleConstraintProblem& sub, double lambda) {
  Vector y(sub.size());
  inner_minimizer_into(sub, lambda, y);
  return y;
}

double subproblem_constraint(const SingleConstraintProblem& sub,
                             std::span<const double> y) {
  CompensatedSum acc(sub.sigma_k);
  for (std::size_t j = 0; j < sub.size(); ++j) {
    acc += (sub.theta_k[j] * y[j] + sub.beta_k[j]) * y[j];
  }
  return acc.value();
}

double constraint_response(const SingleConstraintProblem& sub, double lambda) {
  require_multiplier(lambda);
  CompensatedSum acc(sub.sigma_k);
  for (std::size_t j = 0; j < sub.size(); ++j) {
    const double y = clamped_coordinate(sub, lambda, j);
    acc += (sub.theta_k[j] * y + sub.beta_k[j]) * y;
  }
  return acc.value();
}

double subproblem_objective(const SingleConstraintProblem& sub,
                            std::span<const double> y) {
  CompensatedSum acc(sub.const_offset);
  for (std::size_t j = 0; j < sub.size(); ++j) {
    acc += (sub.delta_eff[j] * y[j] + sub.alpha_eff[j]) * y[j];
  }
  return acc.value();
}

double subproblem_dual_value(const SingleConstraintProblem& sub, double lambda) {
  require_multiplier(lambda);
  CompensatedSum acc(sub.const_offset + lambda * sub.sigma_k);
  for (std::size_t j = 0; j < sub.size(); ++j) {
    const double y = clamped_coordinate(sub, lambda, j);
    const double d = sub.delta_eff[j] + lambda * sub.theta_k[j];
    const double a = sub.alpha_eff[j] + lambda * sub.beta_k[j];
    acc += (d * y + a) * y;
  }
  return acc.value();
}

std::optional<BisectionBracket> bracket(const SingleConstraintProblem& sub) {
  for (double hi = kBracketStart; hi <= kBracketCap; hi *= 2.0) {
    if (constraint_response(sub, hi) < 0.0) return BisectionBracket{0.0, hi};
  }
  return std::nullopt;
}

SingleSolveResult solve_single(const SingleConstraintProblem& sub, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");

  SingleSolveResult result;
  const double g0 = constraint_response(sub, 0.0);
  // g0 < 0: inactive constraint. 0 <= g0 <= eps: the loop guard already holds
  // at the zero end of the bracket.
  if (g0 <= eps) {
    result.lambda_star = 0.0;
    result.y_star = inner_minimizer(sub, 0.0);
    result.g_at_solution = g0;
    return result;
  }

  const auto initial = bracket(sub);
  if (!initial) {
    result.status = SolveStatus::BracketFailure;
    result.lambda_star = kBracketCap;
    result.y_star = inner_minimizer(sub, kBracketCap);
    result.g_at_solution = subproblem_constraint(sub, result.y_star);
    return result;
  }

  double lo = initial->lo;
  double hi = initial->hi;
  double mid = 0.5 * (lo + hi);
  double g = constraint_response(sub, mid);
  int steps = 0;
  while (std::abs(g) * std::max(1.0, mid) > eps) {
    if (steps == kMaxBisectionSteps) {
      result.status = SolveStatus::IterationCapReached;
      break;
    }
    if (g > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++steps;
    mid = 0.5 * (lo + hi);
    g = constraint_response(sub, mid);
  }

  result.lambda_star = mid;
  result.y_star = inner_minimizer(sub, mid);
  result.g_at_solution = g;
  result.bisection_iters = steps;
  result.initial_bracket = *initial;
  result.final_bracket = {lo, hi};
  return result;
}

}  // namespace sqpqc
