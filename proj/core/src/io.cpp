#include "sqpqc/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sqpqc {
namespace {

using nlohmann::json;

const json& field(const json& doc, const std::string& name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError("missing field '" + name + "'");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError("field '" + where + "': expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError("field '" + where + "': number not finite");
  return x;
}

std::size_t count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError("field '" + where + "': expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

Vector numbers(const json& v, const std::string& where, std::size_t expected) {
  if (!v.is_array()) throw ParseError("field '" + where + "': expected an array");
  if (v.size() != expected) {
    std::ostringstream os;
    os << "field '" << where << "': expected " << expected << " entries, got " << v.size();
    throw ParseError(os.str());
  }
  Vector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[j] = number(v[j], where + "[" + std::to_string(j) + "]");
  }
  return out;
}

std::vector<Vector> rows(const json& v, const std::string& where, std::size_t m,
                         std::size_t n) {
  if (!v.is_array()) throw ParseError("field '" + where + "': expected an array of rows");
  if (v.size() != m) {
    std::ostringstream os;
    os << "field '" << where << "': expected " << m << " rows, got " << v.size();
    throw ParseError(os.str());
  }
  std::vector<Vector> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.push_back(numbers(v[i], where + "[" + std::to_string(i) + "]", n));
  }
  return out;
}

}  // namespace

json instance_to_json(const ProblemInstance& instance, const std::optional<Vector>& witness) {
  json doc;
  doc["n"] = instance.n;
  doc["m"] = instance.m;
  doc["delta"] = instance.delta;
  doc["alpha"] = instance.alpha;
  doc["theta"] = instance.theta;
  doc["beta"] = instance.beta;
  doc["sigma"] = instance.sigma;
  doc["lower"] = instance.lower;
  doc["upper"] = instance.upper;
  if (witness) doc["witness"] = *witness;
  return doc;
}

InstanceDocument instance_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
  InstanceDocument out;
  ProblemInstance& p = out.instance;
  p.n = count(field(doc, "n"), "n");
  p.m = count(field(doc, "m"), "m");
  p.delta = numbers(field(doc, "delta"), "delta", p.n);
  p.alpha = numbers(field(doc, "alpha"), "alpha", p.n);
  p.theta = rows(field(doc, "theta"), "theta", p.m, p.n);
  p.beta = rows(field(doc, "beta"), "beta", p.m, p.n);
  p.sigma = numbers(field(doc, "sigma"), "sigma", p.m);
  p.lower = numbers(field(doc, "lower"), "lower", p.n);
  p.upper = numbers(field(doc, "upper"), "upper", p.n);
  if (auto it = doc.find("witness"); it != doc.end()) {
    out.witness = numbers(*it, "witness", p.n);
  }
  return out;
}

json report_to_json(const SolveReport& report, double eps, double wall_time_s,
                    bool include_trace) {
  json doc;
  doc["status"] = std::string(to_string(report.status));
  doc["objective"] = report.objective;
  doc["lambda"] = report.lambda.values;
  doc["y"] = report.y;
  doc["iterations"] = report.iterations;
  doc["max_residual"] = report.certificate.max_residual;
  doc["wall_time_s"] = wall_time_s;
  doc["eps"] = eps;
  if (report.failed_constraint) doc["failed_constraint"] = *report.failed_constraint;
  if (!report.violations.empty()) doc["violations"] = report.violations;
  if (include_trace) {
    json trace = json::array();
    for (const auto& t : report.trace) {
      json row;
      row["iteration"] = t.iteration;
      row["k_updated"] = t.k_updated;
      row["lambda_after"] = t.lambda_after.values;
      row["index_count"] = t.index_count;
      if (t.dual_value) row["dual_value"] = *t.dual_value;
      trace.push_back(std::move(row));
    }
    doc["trace"] = std::move(trace);
  }
  return doc;
}

ReportDocument report_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("report document must be a JSON object");
  ReportDocument out;
  const json& status = field(doc, "status");
  if (!status.is_string()) throw ParseError("field 'status': expected a string");
  auto parsed = parse_status(status.get<std::string>());
  if (!parsed) throw ParseError("field 'status': unknown value '" + status.get<std::string>() + "'");
  out.status = *parsed;
  out.objective = number(field(doc, "objective"), "objective");

  const json& lambda = field(doc, "lambda");
  out.lambda = numbers(lambda, "lambda", lambda.is_array() ? lambda.size() : 0);
  const json& y = field(doc, "y");
  out.y = numbers(y, "y", y.is_array() ? y.size() : 0);

  const json& iters = field(doc, "iterations");
  out.iterations = static_cast<int>(count(iters, "iterations"));
  out.max_residual = number(field(doc, "max_residual"), "max_residual");
  if (auto it = doc.find("wall_time_s"); it != doc.end()) {
    out.wall_time_s = number(*it, "wall_time_s");
  }
  if (auto it = doc.find("eps"); it != doc.end()) out.eps = number(*it, "eps");
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << doc.dump() << '\n';
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace sqpqc
