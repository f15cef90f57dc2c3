#include "sqpqc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sqpqc/multi_solver.hpp"

namespace sqpqc {
namespace {

struct Box {
  Vector lo;
  Vector hi;
};

struct GridBest {
  DualVector lambda;
  double value = -std::numeric_limits<double>::infinity();
  std::vector<int> index;
};

// Exhaustive scan of a (kOracleGridPoints)^m lattice spanning `box`.
GridBest scan(const ProblemInstance& instance, const Box& box) {
  const std::size_t m = instance.m;
  constexpr int last = kOracleGridPoints - 1;
  std::vector<int> idx(m, 0);
  DualVector lambda(m);
  GridBest best;
  best.lambda = DualVector(m);
  best.index.assign(m, 0);

  while (true) {
    for (std::size_t i = 0; i < m; ++i) {
      lambda[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * idx[i] / last;
    }
    const double v = dual_value(instance, lambda);
    if (v > best.value) {
      best.value = v;
      best.lambda = lambda;
      best.index = idx;
    }
    std::size_t i = 0;
    while (i < m && idx[i] == last) idx[i++] = 0;
    if (i == m) break;
    ++idx[i];
  }
  return best;
}

}  // namespace

OracleResult oracle_dual_grid(const ProblemInstance& instance, double lambda_max, int levels) {
  if (instance.m > kOracleMaxConstraints) {
    throw std::invalid_argument("dual grid oracle supports m <= 3, got m = " +
                                std::to_string(instance.m));
  }
  if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_max must be > 0");
  if (levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (auto v = validate(instance); !v.ok()) {
    throw std::invalid_argument("invalid instance: " + v.violations.front());
  }

  const std::size_t m = instance.m;
  OracleResult result;
  if (m == 0) {
    result.lambda_hat = DualVector(0);
    result.y_hat = lagrangian_minimizer(instance, result.lambda_hat);
    result.value = dual_value(instance, result.lambda_hat);
    return result;
  }

  GridBest best;
  Box box;
  while (true) {
    box.lo.assign(m, 0.0);
    box.hi.assign(m, lambda_max);
    best = scan(instance, box);
    const bool on_upper_face = std::any_of(best.index.begin(), best.index.end(), [](int i) {
      return i == kOracleGridPoints - 1;
    });
    if (!on_upper_face) break;
    lambda_max *= 10.0;
    if (lambda_max > kOracleLambdaLimit) {
      throw std::runtime_error("dual optimum not bracketed by lambda_max <= 1e6");
    }
  }

  double width = lambda_max;
  for (int level = 0; level < levels; ++level) {
    width /= kOracleShrink;
    for (std::size_t i = 0; i < m; ++i) {
      box.lo[i] = std::max(0.0, best.lambda[i] - 0.5 * width);
      box.hi[i] = box.lo[i] + width;
    }
    GridBest refined = scan(instance, box);
    if (refined.value >= best.value) best = std::move(refined);
  }

  result.lambda_hat = best.lambda;
  result.value = best.value;
  result.y_hat = lagrangian_minimizer(instance, result.lambda_hat);
  result.grid_resolution = width / (kOracleGridPoints - 1);
  result.lambda_max = lambda_max;
  for (std::size_t i = 0; i < m; ++i) {
    result.max_violation =
        std::max(result.max_violation, eval_constraint(instance, i, result.y_hat));
  }
  return result;
}

double finite_difference_check(const ProblemInstance& instance, const DualVector& lambda,
                               double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step h must be > 0");
  if (lambda.size() != instance.m) {
    throw std::invalid_argument("dual vector has length " + std::to_string(lambda.size()) +
                                ", expected m = " + std::to_string(instance.m));
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!(lambda[i] >= h)) {
      throw std::invalid_argument("lambda[" + std::to_string(i) +
                                  "] < h; central difference would leave lambda >= 0");
    }
  }
  const Vector grad = dual_gradient(instance, lambda);
  double worst = 0.0;
  DualVector probe = lambda;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    probe[i] = lambda[i] + h;
    const double up = dual_value(instance, probe);
    probe[i] = lambda[i] - h;
    const double down = dual_value(instance, probe);
    probe[i] = lambda[i];
    worst = std::max(worst, std::abs((up - down) / (2.0 * h) - grad[i]));
  }
  return worst;
}

}  // namespace sqpqc
