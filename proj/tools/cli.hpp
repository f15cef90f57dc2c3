#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqpqc/model.hpp"
#include "sqpqc/multi_solver.hpp"

namespace sqpqc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitIterationCap = 3,
  kExitBracketFailure = 4,
};

/// Entry point shared by the executable and the tests. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a over the bytes, as 16 lowercase hex digits.
std::string fnv1a_digest(std::string_view bytes);

struct BenchCase {
  std::size_t n = 0;
  std::size_t m = 0;
  int count = 0;
};

/// Parses "n:m:count".
std::optional<BenchCase> parse_bench_case(std::string_view text);

struct BenchDetail {
  std::size_t n = 0;
  std::size_t m = 0;
  int index = 0;
  std::uint64_t seed = 0;
  SolveStatus status = SolveStatus::InvalidInstance;
  double time_s = 0.0;
  int iterations = 0;
  double objective = 0.0;
  double max_residual = 0.0;
  std::optional<double> gap;
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t m = 0;
  int attempted = 0;
  int solved = 0;
  double time_mean_s = 0.0;
  double iter_mean = 0.0;
  std::optional<double> gap_mean;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<BenchDetail> details;
};

/// Instance i of a case uses seed `seed + i`. Oracle gaps are computed for
/// solved instances with m <= 2 and n <= 1000. Timing covers the solve only.
BenchResult run_bench(const std::vector<BenchCase>& cases, std::uint64_t seed,
                      const SolverConfig& config, unsigned threads);

inline constexpr std::string_view kBenchHeader = "n,m,solved,time_mean_s,iter_mean,gap_mean";

void write_bench_rows(std::ostream& os, const std::vector<BenchRow>& rows);
void write_bench_details(std::ostream& os, const std::vector<BenchDetail>& details);

/// Worker count for `bench`: SQPQC_THREADS if set and positive, else hardware.
unsigned bench_threads_from_env();

}  // namespace sqpqc::cli
