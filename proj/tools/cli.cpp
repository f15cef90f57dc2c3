#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sqpqc/generator.hpp"
#include "sqpqc/io.hpp"
#include "sqpqc/oracle.hpp"

namespace sqpqc::cli {
namespace {

constexpr std::size_t kOracleMaxN = 1000;
constexpr std::size_t kOracleMaxM = 2;

bool oracle_tractable(const ProblemInstance& p) {
  return p.m <= kOracleMaxM && p.n <= kOracleMaxN;
}

double relative_gap(double reference, double value) {
  return std::abs(reference - value) / std::max(1.0, std::abs(reference));
}

int exit_code_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return kExitOk;
    case SolveStatus::IterationCapReached:
      return kExitIterationCap;
    case SolveStatus::BracketFailure:
      return kExitBracketFailure;
    case SolveStatus::InvalidInstance:
      return kExitUsage;
  }
  return kExitUsage;
}

template <typename Fn>
double timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct GenerateArgs {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct SolveArgs {
  std::string in;
  std::string out;
  double eps = 1e-6;
  int max_iters = 1000;
  bool trace = false;
  StopRule stop_rule = StopRule::And;
};

struct CheckArgs {
  std::string instance;
  std::string report;
  std::optional<double> eps;
};

struct BenchArgs {
  std::vector<std::string> cases;
  std::uint64_t seed = 0;
  std::string out;
  std::string detail;
  double eps = 1e-6;
  int max_iters = 1000;
};

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  const GeneratedInstance g = generate({args.n, args.m, args.seed});
  const std::string text = instance_to_json(g.instance, g.witness).dump() + "\n";
  std::ofstream file(args.out, std::ios::binary);
  if (!file || !(file << text)) {
    err << "error: cannot write '" << args.out << "'\n";
    return kExitUsage;
  }
  out << args.out << " fnv1a64:" << fnv1a_digest(text) << "\n";
  return kExitOk;
}

// Loads and validates an instance, printing diagnostics on failure.
std::optional<ProblemInstance> load_instance(const std::string& path, std::ostream& err) {
  try {
    InstanceDocument doc = instance_from_json(read_json_file(path));
    const ValidationReport v = validate(doc.instance);
    if (!v.ok()) {
      err << "error: invalid instance '" << path << "':\n";
      for (const auto& msg : v.violations) err << "  " << msg << "\n";
      return std::nullopt;
    }
    return std::move(doc.instance);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  auto instance = load_instance(args.in, err);
  if (!instance) return kExitUsage;

  SolverConfig config;
  config.eps = args.eps;
  config.max_iters = args.max_iters;
  config.record_trace = args.trace;
  config.track_dual_values = args.trace;
  config.stop_rule = args.stop_rule;

  SolveReport report;
  const double seconds = timed([&] { report = solve(*instance, config); });
  const auto doc = report_to_json(report, args.eps, seconds, args.trace);
  if (args.out.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    try {
      write_json_file(args.out, doc);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    out << "status " << to_string(report.status) << " iterations " << report.iterations
        << " objective " << std::setprecision(12) << report.objective << " max_residual "
        << std::setprecision(3) << report.certificate.max_residual << "\n";
  }
  if (report.status == SolveStatus::BracketFailure && report.failed_constraint) {
    err << "bracket failure on constraint " << *report.failed_constraint << "\n";
  }
  return exit_code_for(report.status);
}

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  auto instance = load_instance(args.instance, err);
  if (!instance) return kExitUsage;
  ReportDocument report;
  try {
    report = report_from_json(read_json_file(args.report));
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (report.y.size() != instance->n || report.lambda.size() != instance->m) {
    err << "error: report has |y| = " << report.y.size() << ", |lambda| = "
        << report.lambda.size() << " but instance has n = " << instance->n
        << ", m = " << instance->m << "\n";
    return kExitUsage;
  }

  const double eps = args.eps.value_or(report.eps);
  const DualVector lambda(report.lambda);
  const KKTCertificate cert = kkt_residuals(*instance, lambda, report.y, eps);

  auto inf_norm = [](const Vector& v) {
    double r = 0.0;
    for (double x : v) r = std::max(r, std::abs(x));
    return r;
  };
  double infeasibility = 0.0;
  for (double g : cert.feasibility) infeasibility = std::max(infeasibility, g);

  out << std::setprecision(6);
  out << "stationarity " << inf_norm(cert.stationarity_residual) << "\n";
  out << "feasibility " << infeasibility << "\n";
  out << "complementarity " << inf_norm(cert.comp_slack) << "\n";
  out << "box_violation " << cert.box_violation << "\n";
  out << "max_residual " << cert.max_residual << " eps " << eps << "\n";

  if (oracle_tractable(*instance)) {
    try {
      const OracleResult o = oracle_dual_grid(*instance);
      const double objective = eval_objective(*instance, report.y);
      out << "oracle_value " << std::setprecision(12) << o.value << "\n";
      out << "gap_vs_oracle " << std::setprecision(6) << relative_gap(o.value, objective)
          << "\n";
    } catch (const std::exception& e) {
      out << "oracle unavailable: " << e.what() << "\n";
    }
  }
  const bool pass = cert.max_residual <= eps;
  out << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<BenchCase> cases;
  for (const auto& text : args.cases) {
    auto c = parse_bench_case(text);
    if (!c) {
      err << "error: --case '" << text << "' must be n:m:count with all three >= 1\n";
      return kExitUsage;
    }
    cases.push_back(*c);
  }
  SolverConfig config;
  config.eps = args.eps;
  config.max_iters = args.max_iters;
  const BenchResult result = run_bench(cases, args.seed, config, bench_threads_from_env());

  std::ofstream rows(args.out);
  if (!rows) {
    err << "error: cannot write '" << args.out << "'\n";
    return kExitUsage;
  }
  write_bench_rows(rows, result.rows);
  if (!args.detail.empty()) {
    std::ofstream detail(args.detail);
    if (!detail) {
      err << "error: cannot write '" << args.detail << "'\n";
      return kExitUsage;
    }
    write_bench_details(detail, result.details);
  }
  write_bench_rows(out, result.rows);
  return kExitOk;
}

}  // namespace

std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::optional<BenchCase> parse_bench_case(std::string_view text) {
  BenchCase c;
  std::size_t fields[3] = {0, 0, 0};
  for (int f = 0; f < 3; ++f) {
    const auto colon = text.find(':');
    const std::string_view part = f < 2 ? text.substr(0, colon) : text;
    if (f < 2 && colon == std::string_view::npos) return std::nullopt;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), fields[f]);
    if (ec != std::errc() || ptr != part.data() + part.size() || fields[f] == 0) {
      return std::nullopt;
    }
    if (f < 2) text.remove_prefix(colon + 1);
  }
  c.n = fields[0];
  c.m = fields[1];
  c.count = static_cast<int>(fields[2]);
  return c;
}

BenchResult run_bench(const std::vector<BenchCase>& cases, std::uint64_t seed,
                      const SolverConfig& config, unsigned threads) {
  BenchResult result;
  for (const auto& c : cases) {
    for (int i = 0; i < c.count; ++i) {
      BenchDetail d;
      d.n = c.n;
      d.m = c.m;
      d.index = i;
      d.seed = seed + static_cast<std::uint64_t>(i);
      result.details.push_back(d);
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < result.details.size(); job = next++) {
      BenchDetail& d = result.details[job];
      const GeneratedInstance g = generate({d.n, d.m, d.seed});
      SolveReport report;
      d.time_s = timed([&] { report = solve(g.instance, config); });
      d.status = report.status;
      d.iterations = report.iterations;
      d.objective = report.objective;
      d.max_residual = report.certificate.max_residual;
      if (report.status == SolveStatus::Converged && oracle_tractable(g.instance)) {
        try {
          d.gap = relative_gap(oracle_dual_grid(g.instance).value, report.objective);
        } catch (const std::exception&) {
          d.gap.reset();
        }
      }
    }
  };
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(result.details.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::size_t offset = 0;
  for (const auto& c : cases) {
    BenchRow row;
    row.n = c.n;
    row.m = c.m;
    row.attempted = c.count;
    double time_sum = 0.0, iter_sum = 0.0, gap_sum = 0.0;
    int gaps = 0;
    for (int i = 0; i < c.count; ++i) {
      const BenchDetail& d = result.details[offset + i];
      if (d.status != SolveStatus::Converged) continue;
      ++row.solved;
      time_sum += d.time_s;
      iter_sum += d.iterations;
      if (d.gap) {
        gap_sum += *d.gap;
        ++gaps;
      }
    }
    if (row.solved > 0) {
      row.time_mean_s = time_sum / row.solved;
      row.iter_mean = iter_sum / row.solved;
    }
    if (gaps > 0) row.gap_mean = gap_sum / gaps;
    offset += c.count;
    result.rows.push_back(row);
  }
  return result;
}

void write_bench_rows(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << kBenchHeader << "\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.m << ',' << r.solved << ',' << std::setprecision(6) << r.time_mean_s
       << ',' << r.iter_mean << ',';
    if (r.gap_mean) os << *r.gap_mean;
    os << "\n";
  }
}

void write_bench_details(std::ostream& os, const std::vector<BenchDetail>& details) {
  os << "n,m,index,seed,status,time_s,iterations,objective,max_residual,gap\n";
  for (const auto& d : details) {
    os << d.n << ',' << d.m << ',' << d.index << ',' << d.seed << ',' << to_string(d.status)
       << ',' << std::setprecision(6) << d.time_s << ',' << d.iterations << ','
       << std::setprecision(12) << d.objective << ',' << std::setprecision(6)
       << d.max_residual << ',';
    if (d.gap) os << *d.gap;
    os << "\n";
  }
}

unsigned bench_threads_from_env() {
  if (const char* env = std::getenv("SQPQC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solver for separable convex QPs with separable quadratic constraints"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write a random feasible instance");
  generate_cmd->add_option("--n", gen.n, "Variable count")->required()->check(CLI::PositiveNumber);
  generate_cmd->add_option("--m", gen.m, "Constraint count")->required()->check(CLI::PositiveNumber);
  generate_cmd->add_option("--seed", gen.seed, "PRNG seed")->required();
  generate_cmd->add_option("--out", gen.out, "Output instance path")->required();

  const std::map<std::string, StopRule> rules{{"and", StopRule::And}, {"or", StopRule::Or}};

  SolveArgs sol;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("instance", sol.in, "Instance JSON")->required();
  solve_cmd->add_option("--out", sol.out, "Report path (stdout when omitted)");
  solve_cmd->add_option("--eps", sol.eps, "Tolerance")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-iters", sol.max_iters, "Subproblem solve cap")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--trace", sol.trace, "Include per-iteration trace with dual values");
  solve_cmd->add_option("--stop-rule", sol.stop_rule, "Stop test combination")
      ->transform(CLI::CheckedTransformer(rules, CLI::ignore_case));

  CheckArgs chk;
  auto* check_cmd = app.add_subcommand("check", "Verify a report against its instance");
  check_cmd->add_option("instance", chk.instance, "Instance JSON")->required();
  check_cmd->add_option("report", chk.report, "Report JSON")->required();
  check_cmd->add_option("--eps", chk.eps, "Override the report's tolerance")
      ->check(CLI::PositiveNumber);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark sweep over generated instances");
  bench_cmd->add_option("--case", bench.cases, "n:m:count (repeatable)");
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--out", bench.out, "Summary CSV path")->required();
  bench_cmd->add_option("--detail", bench.detail, "Per-instance CSV path");
  bench_cmd->add_option("--eps", bench.eps, "Tolerance")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--max-iters", bench.max_iters, "Subproblem solve cap")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*generate_cmd) return cmd_generate(gen, out, err);
    if (*solve_cmd) return cmd_solve(sol, out, err);
    if (*check_cmd) return cmd_check(chk, out, err);
    if (*bench_cmd) return cmd_bench(bench, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sqpqc::cli
