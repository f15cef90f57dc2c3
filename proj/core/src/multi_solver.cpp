#include "sqpqc/multi_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sqpqc/single_solver.hpp"
#include "sqpqc/summation.hpp"

namespace sqpqc {
namespace {

void require_dual(const ProblemInstance& instance, const DualVector& lambda) {
  if (lambda.size() != instance.m) {
    throw std::invalid_argument("dual vector has length " + std::to_string(lambda.size()) +
                                ", expected m = " + std::to_string(instance.m));
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!(lambda[i] >= 0.0) || !std::isfinite(lambda[i])) {
      throw std::invalid_argument("lambda[" + std::to_string(i) + "] must be finite and >= 0");
    }
  }
}

// Diagonal of the fully aggregated Lagrangian at coordinate j.
struct Coefficients {
  double quad;
  double lin;
};

inline Coefficients aggregated(const ProblemInstance& instance, const DualVector& lambda,
                               std::size_t j) {
  Coefficients c{instance.delta[j], instance.alpha[j]};
  for (std::size_t i = 0; i < instance.m; ++i) {
    c.quad += lambda[i] * instance.theta[i][j];
    c.lin += lambda[i] * instance.beta[i][j];
  }
  return c;
}

inline double minimizer_coordinate(const ProblemInstance& instance, Coefficients c,
                                   std::size_t j) {
  return std::clamp(-c.lin / (2.0 * c.quad), instance.lower[j], instance.upper[j]);
}

bool settled(double g, double lambda, double eps, StopRule rule) {
  const bool feasible = g <= eps;
  const bool complementary = std::abs(lambda * g) <= eps;
  return rule == StopRule::And ? (feasible && complementary) : (feasible || complementary);
}

void finish(const ProblemInstance& instance, double eps, SolveReport& report) {
  report.objective = eval_objective(instance, report.y);
  report.certificate = kkt_residuals(instance, report.lambda, report.y, eps);
}

}  // namespace

Vector lagrangian_minimizer(const ProblemInstance& instance, const DualVector& lambda) {
  require_dual(instance, lambda);
  Vector y(instance.n);
  for (std::size_t j = 0; j < instance.n; ++j) {
    y[j] = minimizer_coordinate(instance, aggregated(instance, lambda, j), j);
  }
  return y;
}

double dual_value(const ProblemInstance& instance, const DualVector& lambda) {
  require_dual(instance, lambda);
  CompensatedSum acc;
  for (std::size_t i = 0; i < instance.m; ++i) acc += lambda[i] * instance.sigma[i];
  for (std::size_t j = 0; j < instance.n; ++j) {
    const Coefficients c = aggregated(instance, lambda, j);
    const double y = minimizer_coordinate(instance, c, j);
    acc += (c.quad * y + c.lin) * y;
  }
  return acc.value();
}

Vector dual_gradient(const ProblemInstance& instance, const DualVector& lambda) {
  const Vector y = lagrangian_minimizer(instance, lambda);
  Vector grad(instance.m);
  for (std::size_t i = 0; i < instance.m; ++i) grad[i] = eval_constraint(instance, i, y);
  return grad;
}

KKTCertificate kkt_residuals(const ProblemInstance& instance, const DualVector& lambda,
                             std::span<const double> y, double eps) {
  if (y.size() != instance.n) {
    throw std::invalid_argument("point has dimension " + std::to_string(y.size()) +
                                ", instance has n = " + std::to_string(instance.n));
  }
  if (lambda.size() != instance.m) {
    throw std::invalid_argument("dual vector has length " + std::to_string(lambda.size()) +
                                ", expected m = " + std::to_string(instance.m));
  }

  KKTCertificate cert;
  cert.stationarity_residual.resize(instance.n);
  cert.eta_lower.assign(instance.n, 0.0);
  cert.eta_upper.assign(instance.n, 0.0);
  double worst = 0.0;

  for (std::size_t j = 0; j < instance.n; ++j) {
    const Coefficients c = aggregated(instance, lambda, j);
    const double s = 2.0 * c.quad * y[j] + c.lin;
    if (std::abs(y[j] - instance.lower[j]) <= eps) cert.eta_lower[j] = std::max(s, 0.0);
    if (std::abs(y[j] - instance.upper[j]) <= eps) cert.eta_upper[j] = std::max(-s, 0.0);
    const double r = s - cert.eta_lower[j] + cert.eta_upper[j];
    cert.stationarity_residual[j] = r;
    worst = std::max(worst, std::abs(r));

    const double outside =
        std::max({instance.lower[j] - y[j], y[j] - instance.upper[j], 0.0});
    cert.box_violation = std::max(cert.box_violation, outside);
  }
  worst = std::max(worst, cert.box_violation);

  cert.comp_slack.resize(instance.m);
  cert.feasibility.resize(instance.m);
  for (std::size_t i = 0; i < instance.m; ++i) {
    const double g = eval_constraint(instance, i, y);
    cert.feasibility[i] = g;
    cert.comp_slack[i] = lambda[i] * g;
    worst = std::max({worst, std::max(g, 0.0), std::abs(cert.comp_slack[i]),
                      std::max(-lambda[i], 0.0)});
  }
  cert.max_residual = worst;
  return cert;
}

std::size_t settled_constraints(const ProblemInstance& instance, const DualVector& lambda,
                                std::span<const double> y, double eps, StopRule rule) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < instance.m; ++i) {
    if (settled(eval_constraint(instance, i, y), lambda[i], eps, rule)) ++count;
  }
  return count;
}

SolveReport solve(const ProblemInstance& instance, const SolverConfig& config) {
  if (!(config.eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (config.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

  SolveReport report;
  if (auto v = validate(instance); !v.ok()) {
    report.status = SolveStatus::InvalidInstance;
    report.violations = std::move(v.violations);
    return report;
  }

  report.lambda = config.warm_start.value_or(DualVector(instance.m));
  require_dual(instance, report.lambda);

  if (instance.m == 0) {
    report.y = lagrangian_minimizer(instance, report.lambda);
    report.status = SolveStatus::Converged;
    finish(instance, config.eps, report);
    return report;
  }

  const bool tracing = config.record_trace || config.track_dual_values;
  const std::size_t m = instance.m;
  std::size_t k = config.start_index % m;
  report.status = SolveStatus::IterationCapReached;

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    const SingleConstraintProblem sub = aggregate(instance, report.lambda, k);
    SingleSolveResult step;
    const double current = report.lambda[k];
    const double g_current = constraint_response(sub, current);
    if (current > 0.0 && settled(g_current, current, config.eps, StopRule::And)) {
      // Already an eps-solution of this subproblem; keep it.
      step.lambda_star = current;
      step.y_star = inner_minimizer(sub, current);
      step.g_at_solution = g_current;
    } else {
      step = solve_single(sub, config.eps);
    }
    report.iterations = iter;
    if (step.status == SolveStatus::BracketFailure) {
      report.status = SolveStatus::BracketFailure;
      report.failed_constraint = k;
      report.y = std::move(step.y_star);
      break;
    }
    report.lambda[k] = step.lambda_star;
    report.y = std::move(step.y_star);

    const std::size_t count =
        settled_constraints(instance, report.lambda, report.y, config.eps, config.stop_rule);
    if (tracing) {
      IterationTrace t;
      t.iteration = iter;
      t.k_updated = k;
      t.lambda_after = report.lambda;
      t.index_count = count;
      if (config.track_dual_values) t.dual_value = dual_value(instance, report.lambda);
      report.trace.push_back(std::move(t));
    }
    if (count == m && static_cast<std::size_t>(iter) >= m) {
      report.status = SolveStatus::Converged;
      break;
    }
    k = (k + 1) % m;
  }

  finish(instance, config.eps, report);
  return report;
}

}  // namespace sqpqc
