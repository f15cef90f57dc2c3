#include "sqpqc/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sqpqc/summation.hpp"

namespace sqpqc {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return "Converged";
    case SolveStatus::IterationCapReached:
      return "IterationCapReached";
    case SolveStatus::BracketFailure:
      return "BracketFailure";
    case SolveStatus::InvalidInstance:
      return "InvalidInstance";
  }
  return "InvalidInstance";
}

std::optional<SolveStatus> parse_status(std::string_view text) {
  for (auto s : {SolveStatus::Converged, SolveStatus::IterationCapReached,
                 SolveStatus::BracketFailure, SolveStatus::InvalidInstance}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

namespace {

class Collector {
 public:
  void add(const std::string& msg) { report_.violations.push_back(msg); }

  template <typename... Args>
  void addf(const Args&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    add(os.str());
  }

  // Returns false when the length is wrong so element checks can be skipped.
  bool check_length(std::string_view name, std::size_t got, std::size_t want) {
    if (got == want) return true;
    addf(name, " has length ", got, ", expected ", want);
    return false;
  }

  void check_finite(std::string_view name, const Vector& v) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!std::isfinite(v[j])) addf(name, "[", j, "] not finite");
    }
  }

  ValidationReport take() { return std::move(report_); }

 private:
  ValidationReport report_;
};

void require_length(const ProblemInstance& instance, std::span<const double> y) {
  if (y.size() != instance.n) {
    std::ostringstream os;
    os << "point has dimension " << y.size() << ", instance has n = " << instance.n;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

ValidationReport validate(const ProblemInstance& instance) {
  Collector c;
  const std::size_t n = instance.n;
  const std::size_t m = instance.m;
  if (n == 0) c.add("n must be positive");

  if (c.check_length("delta", instance.delta.size(), n)) {
    c.check_finite("delta", instance.delta);
    for (std::size_t j = 0; j < n; ++j) {
      // NaN fails the finiteness check already.
      if (std::isfinite(instance.delta[j]) && !(instance.delta[j] > 0.0)) {
        c.addf("delta[", j, "] not > 0");
      }
    }
  }
  if (c.check_length("alpha", instance.alpha.size(), n)) {
    c.check_finite("alpha", instance.alpha);
  }

  const bool lower_ok = c.check_length("lower", instance.lower.size(), n);
  const bool upper_ok = c.check_length("upper", instance.upper.size(), n);
  if (lower_ok) c.check_finite("lower", instance.lower);
  if (upper_ok) c.check_finite("upper", instance.upper);
  if (lower_ok && upper_ok) {
    for (std::size_t j = 0; j < n; ++j) {
      if (instance.lower[j] > instance.upper[j]) {
        c.addf("lower[", j, "] > upper[", j, "]");
      }
    }
  }

  if (c.check_length("theta", instance.theta.size(), m)) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto& row = instance.theta[i];
      std::ostringstream name;
      name << "theta[" << i << "]";
      if (!c.check_length(name.str(), row.size(), n)) continue;
      c.check_finite(name.str(), row);
      for (std::size_t j = 0; j < n; ++j) {
        if (row[j] < 0.0) c.addf("theta[", i, "][", j, "] < 0");
      }
    }
  }
  if (c.check_length("beta", instance.beta.size(), m)) {
    for (std::size_t i = 0; i < m; ++i) {
      std::ostringstream name;
      name << "beta[" << i << "]";
      if (c.check_length(name.str(), instance.beta[i].size(), n)) {
        c.check_finite(name.str(), instance.beta[i]);
      }
    }
  }
  if (c.check_length("sigma", instance.sigma.size(), m)) {
    c.check_finite("sigma", instance.sigma);
  }
  return c.take();
}

double eval_objective(const ProblemInstance& instance, std::span<const double> y) {
  require_length(instance, y);
  CompensatedSum acc;
  for (std::size_t j = 0; j < instance.n; ++j) {
    acc += (instance.delta[j] * y[j] + instance.alpha[j]) * y[j];
  }
  return acc.value();
}

double eval_constraint(const ProblemInstance& instance, std::size_t i,
                       std::span<const double> y) {
  if (i >= instance.m) {
    throw std::out_of_range("constraint index " + std::to_string(i) +
                            " out of range for m = " + std::to_string(instance.m));
  }
  require_length(instance, y);
  const auto& theta = instance.theta[i];
  const auto& beta = instance.beta[i];
  CompensatedSum acc(instance.sigma[i]);
  for (std::size_t j = 0; j < instance.n; ++j) {
    acc += (theta[j] * y[j] + beta[j]) * y[j];
  }
  return acc.value();
}

SingleConstraintProblem aggregate(const ProblemInstance& instance,
                                  const DualVector& lambda, std::size_t k) {
  if (k >= instance.m) {
    throw std::out_of_range("constraint index " + std::to_string(k) +
                            " out of range for m = " + std::to_string(instance.m));
  }
  if (lambda.size() != instance.m) {
    throw std::invalid_argument("dual vector has length " + std::to_string(lambda.size()) +
                                ", expected m = " + std::to_string(instance.m));
  }
  SingleConstraintProblem sub;
  sub.delta_eff = instance.delta;
  sub.alpha_eff = instance.alpha;
  sub.theta_k = instance.theta[k];
  sub.beta_k = instance.beta[k];
  sub.sigma_k = instance.sigma[k];
  sub.lower = instance.lower;
  sub.upper = instance.upper;

  CompensatedSum offset;
  for (std::size_t i = 0; i < instance.m; ++i) {
    if (i == k || lambda[i] == 0.0) continue;
    const double li = lambda[i];
    const auto& theta = instance.theta[i];
    const auto& beta = instance.beta[i];
    for (std::size_t j = 0; j < instance.n; ++j) {
      sub.delta_eff[j] += li * theta[j];
      sub.alpha_eff[j] += li * beta[j];
    }
    offset += li * instance.sigma[i];
  }
  sub.const_offset = offset.value();
  return sub;
}

}  // namespace sqpqc
