#include "sqpqc/generator.hpp"

#include <random>
#include <stdexcept>

#include "sqpqc/summation.hpp"

namespace sqpqc {

GeneratedInstance generate(const GeneratorSpec& spec) {
  if (spec.n == 0 || spec.m == 0) {
    throw std::invalid_argument("generator needs n >= 1 and m >= 1");
  }
  const std::size_t n = spec.n;
  const std::size_t m = spec.m;
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&rng](double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
  };

  GeneratedInstance out;
  ProblemInstance& p = out.instance;
  p.n = n;
  p.m = m;

  p.delta.resize(n);
  for (auto& d : p.delta) {
    do {
      d = uniform(0.0, 1.0);
    } while (d == 0.0);
  }
  p.alpha.resize(n);
  for (auto& a : p.alpha) a = uniform(-5.0, -2.0);

  p.theta.assign(m, Vector(n));
  for (auto& row : p.theta) {
    for (auto& t : row) t = uniform(0.0, 2.0);
  }
  p.beta.assign(m, Vector(n));
  for (auto& row : p.beta) {
    for (auto& b : row) b = uniform(0.0, 5.0);
  }
  p.lower.assign(n, -1.0);
  p.upper.assign(n, 1.0);

  out.witness.resize(n);
  for (auto& y : out.witness) y = uniform(-1.0, 1.0);

  p.sigma.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    CompensatedSum v;
    for (std::size_t j = 0; j < n; ++j) {
      const double y = out.witness[j];
      v += (p.theta[i][j] * y + p.beta[i][j]) * y;
    }
    const double vi = v.value();
    p.sigma[i] = uniform(-vi - 1.0, -vi);
  }
  return out;
}

}  // namespace sqpqc
