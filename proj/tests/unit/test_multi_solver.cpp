#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "brute_force.hpp"
#include "sqpqc/generator.hpp"
#include "sqpqc/multi_solver.hpp"
#include "sqpqc/oracle.hpp"
#include "sqpqc/single_solver.hpp"

using namespace sqpqc;

namespace {

Vector clamped_unconstrained(const ProblemInstance& p) {
  Vector y(p.n);
  for (std::size_t j = 0; j < p.n; ++j) {
    y[j] = std::clamp(-p.alpha[j] / (2.0 * p.delta[j]), p.lower[j], p.upper[j]);
  }
  return y;
}

// Generated instance with the offsets loosened until no constraint binds.
ProblemInstance all_inactive(std::size_t n, std::size_t m, std::uint64_t seed) {
  auto p = generate({n, m, seed}).instance;
  const Vector y0 = clamped_unconstrained(p);
  for (std::size_t i = 0; i < m; ++i) p.sigma[i] -= eval_constraint(p, i, y0) + 1.0;
  return p;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

}  // namespace

TEST_CASE("solve with one constraint reproduces solve_single") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = generate({8, 1, seed}).instance;
    const auto single = solve_single(aggregate(p, DualVector(1), 0), 1e-6);
    const auto report = solve(p);
    CHECK(report.status == SolveStatus::Converged);
    CHECK(report.iterations <= 2);
    CHECK(std::abs(report.lambda[0] - single.lambda_star) <= 1e-9);
    CHECK(report.y == single.y_star);
  }
}

TEST_CASE("solve with every constraint inactive stops after one sweep") {
  const auto p = all_inactive(6, 3, 5);
  const auto report = solve(p);
  CHECK(report.status == SolveStatus::Converged);
  CHECK(report.iterations == 3);
  CHECK(report.lambda.values == Vector(3, 0.0));
  CHECK(report.y == clamped_unconstrained(p));
}

TEST_CASE("solve on a random n=2, m=2 instance matches the dual grid oracle") {
  const auto p = generate({2, 2, 42}).instance;
  const auto report = solve(p);
  REQUIRE(report.status == SolveStatus::Converged);
  const auto oracle = oracle_dual_grid(p);
  CHECK(relative_gap(oracle.value, report.objective) <= 1e-5);
}

TEST_CASE("solve without constraints returns the clamped minimizer") {
  ProblemInstance p;
  p.n = 3;
  p.m = 0;
  p.delta = {1.0, 2.0, 0.5};
  p.alpha = {-4.0, 1.0, 0.25};
  p.lower = {-1.0, -1.0, -1.0};
  p.upper = {1.0, 1.0, 1.0};
  const auto report = solve(p);
  CHECK(report.status == SolveStatus::Converged);
  CHECK(report.iterations == 0);
  CHECK(report.y == Vector{1.0, -0.25, -0.25});
  CHECK(report.certificate.max_residual <= 1e-12);
}

TEST_CASE("solve rejects an invalid instance with its violations") {
  auto p = generate({3, 2, 1}).instance;
  p.delta[1] = -0.5;
  const auto report = solve(p);
  CHECK(report.status == SolveStatus::InvalidInstance);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0] == "delta[1] not > 0");
}

TEST_CASE("solve reports the constraint whose bracket failed") {
  auto p = generate({3, 2, 1}).instance;
  // Second constraint becomes sum theta y^2 + 1 > 0 everywhere.
  p.beta[1] = Vector(3, 0.0);
  p.sigma[1] = 1.0;
  const auto report = solve(p);
  CHECK(report.status == SolveStatus::BracketFailure);
  REQUIRE(report.failed_constraint.has_value());
  CHECK(*report.failed_constraint == 1);
}

TEST_CASE("solve stops at the iteration cap") {
  const auto p = generate({50, 2, 3}).instance;
  SolverConfig config;
  config.max_iters = 3;
  const auto report = solve(p, config);
  CHECK(report.status == SolveStatus::IterationCapReached);
  CHECK(report.iterations == 3);
}

TEST_CASE("the literal OR stop rule stops earlier than AND") {
  const auto p = generate({100, 2, 8}).instance;
  SolverConfig config;
  config.stop_rule = StopRule::Or;
  const auto loose = solve(p, config);
  const auto strict = solve(p);
  CHECK(loose.status == SolveStatus::Converged);
  CHECK(strict.status == SolveStatus::Converged);
  CHECK(loose.iterations <= strict.iterations);
}

TEST_CASE("dual_value examples") {
  const auto p = generate({6, 2, 9}).instance;
  const Vector y0 = clamped_unconstrained(p);
  CHECK(dual_value(p, DualVector(2)) == doctest::Approx(eval_objective(p, y0)).epsilon(1e-14));

  // 3y^2 - 2 on [-1, 1] with lambda = 2.
  ProblemInstance q = testing::worked_instance();
  q.alpha = {0.0};
  q.sigma = {-1.0};
  CHECK(dual_value(q, DualVector(Vector{2.0})) == -2.0);
}

TEST_CASE("strong duality at the returned multipliers") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = generate({10, 2, seed}).instance;
    const auto report = solve(p);
    REQUIRE(report.status == SolveStatus::Converged);
    CHECK(std::abs(dual_value(p, report.lambda) - report.objective) <= 1e-4);
  }
}

TEST_CASE("dual_gradient examples") {
  const auto p1 = generate({5, 1, 4}).instance;
  const auto sub = aggregate(p1, DualVector(1), 0);
  for (double l : {0.0, 0.3, 2.0}) {
    CHECK(dual_gradient(p1, DualVector(Vector{l}))[0] == constraint_response(sub, l));
  }

  const auto p = generate({5, 3, 4}).instance;
  const Vector y0 = clamped_unconstrained(p);
  const Vector g = dual_gradient(p, DualVector(3));
  for (std::size_t i = 0; i < 3; ++i) CHECK(g[i] == eval_constraint(p, i, y0));

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> lam(0.01, 3.0);
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const auto q = generate({7, 2, static_cast<std::uint64_t>(100 + trial)}).instance;
    DualVector l(2);
    for (auto& v : l.values) v = lam(rng);
    const Vector grad = dual_gradient(q, l);
    for (std::size_t i = 0; i < 2; ++i) {
      DualVector up = l, down = l;
      up[i] += h;
      down[i] -= h;
      const double fd = (dual_value(q, up) - dual_value(q, down)) / (2.0 * h);
      CHECK(std::abs(fd - grad[i]) <= 1e-4);
    }
  }
}

TEST_CASE("kkt_residuals vanish at the worked KKT point") {
  const auto p = testing::worked_instance();
  const auto cert = kkt_residuals(p, DualVector(Vector{3.0}), Vector{0.5});
  CHECK(cert.max_residual == 0.0);
  CHECK(cert.stationarity_residual == Vector{0.0});
  CHECK(cert.comp_slack == Vector{0.0});
}

TEST_CASE("kkt_residuals expose the raw gradient at an interior point") {
  const auto p = testing::worked_instance();
  const auto cert = kkt_residuals(p, DualVector(1), Vector{0.25});
  // s = 2 * 1 * 0.25 - 4
  CHECK(cert.stationarity_residual == Vector{-3.5});
  CHECK(cert.eta_lower == Vector{0.0});
  CHECK(cert.eta_upper == Vector{0.0});
  CHECK(cert.max_residual == 3.5);
}

TEST_CASE("kkt_residuals assign the upper box multiplier") {
  auto p = testing::worked_instance();
  p.sigma = {-5.0};
  // y = u = 1, lambda = 0: s = 2 - 4 = -2.
  const auto cert = kkt_residuals(p, DualVector(1), Vector{1.0});
  CHECK(cert.eta_upper == Vector{2.0});
  CHECK(cert.eta_lower == Vector{0.0});
  CHECK(cert.stationarity_residual == Vector{0.0});
  CHECK(cert.feasibility == Vector{-4.0});
  CHECK(cert.max_residual == 0.0);
}

TEST_CASE("kkt_residuals flag box violations and negative multipliers") {
  const auto p = testing::worked_instance();
  const auto out_of_box = kkt_residuals(p, DualVector(Vector{3.0}), Vector{1.5});
  CHECK(out_of_box.box_violation == doctest::Approx(0.5));
  const auto negative = kkt_residuals(p, DualVector(Vector{-2.0}), Vector{0.5});
  CHECK(negative.max_residual >= 2.0);
}

TEST_CASE("property: dual values never decrease along the sweep") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = generate({50, 3, seed}).instance;
    SolverConfig config;
    config.track_dual_values = true;
    const auto report = solve(p, config);
    REQUIRE(report.trace.size() == static_cast<std::size_t>(report.iterations));
    double previous = dual_value(p, DualVector(3));
    for (const auto& t : report.trace) {
      REQUIRE(t.dual_value.has_value());
      CHECK(*t.dual_value >= previous - 1e-9);
      previous = *t.dual_value;
    }
  }
}

TEST_CASE("property: convergence certifies an eps-KKT point") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = generate({20 + seed, 1 + seed % 3, seed}).instance;
    const auto report = solve(p);
    REQUIRE(report.status == SolveStatus::Converged);
    CHECK(report.certificate.max_residual <= 1e-6);
    for (double e : report.certificate.eta_lower) CHECK(e >= 0.0);
    for (double e : report.certificate.eta_upper) CHECK(e >= 0.0);
  }
}

TEST_CASE("property: weak duality along the iterates") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = generate({12, 2, seed});
    SolverConfig config;
    config.record_trace = true;
    const auto report = solve(g.instance, config);
    const double witness_value = eval_objective(g.instance, g.witness);
    for (const auto& t : report.trace) {
      CHECK(dual_value(g.instance, t.lambda_after) <= witness_value + 1e-9);
    }
  }
}

TEST_CASE("property: a converged point stays converged under warm start") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = generate({30, 3, seed}).instance;
    const auto cold = solve(p);
    REQUIRE(cold.status == SolveStatus::Converged);
    CHECK(settled_constraints(p, cold.lambda, cold.y, 1e-6, StopRule::And) == 3);
    for (std::size_t offset = 0; offset < 3; ++offset) {
      SolverConfig config;
      config.warm_start = cold.lambda;
      config.start_index = offset;
      const auto warm = solve(p, config);
      CHECK(warm.status == SolveStatus::Converged);
      CHECK(warm.iterations == 3);
      CHECK(std::abs(warm.objective - cold.objective) <= 1e-5);
    }
  }
}

TEST_CASE("solve rejects a malformed warm start") {
  const auto p = generate({4, 2, 0}).instance;
  SolverConfig config;
  config.warm_start = DualVector(Vector{1.0, -1.0});
  CHECK_THROWS_AS(solve(p, config), std::invalid_argument);
}
