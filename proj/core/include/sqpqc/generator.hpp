#pragma once

#include <cstddef>
#include <cstdint>

#include "sqpqc/model.hpp"

namespace sqpqc {

struct GeneratorSpec {
  std::size_t n = 1;
  std::size_t m = 1;
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  ProblemInstance instance;
  /// The point y0 the constraint offsets were fitted around; g_i(y0) is in [-1, 0].
  Vector witness;
};

/// Random feasible instance:
///   delta_j ~ U(0, 1], alpha_j ~ U[-5, -2], theta_ij ~ U[0, 2], beta_ij ~ U[0, 5],
///   box [-1, 1], y0 ~ U[-1, 1]^n, sigma_i ~ U[-v_i - 1, -v_i] with
///   v_i = y0' Theta_i y0 + beta_i' y0.
/// Deterministic in (n, m, seed) for a given standard library.
GeneratedInstance generate(const GeneratorSpec& spec);

}  // namespace sqpqc
