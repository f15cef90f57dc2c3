#include <doctest.h>

#include <string>

#include "sqpqc/generator.hpp"
#include "sqpqc/io.hpp"
#include "sqpqc/multi_solver.hpp"

using namespace sqpqc;
using nlohmann::json;

namespace {

std::string parse_failure(const json& doc) {
  try {
    instance_from_json(doc);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("property: instances survive a JSON text round trip bit for bit") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto g = generate({1 + seed, 1 + seed % 3, seed});
    const auto text = instance_to_json(g.instance, g.witness).dump();
    const auto back = instance_from_json(json::parse(text));
    CHECK(back.instance.delta == g.instance.delta);
    CHECK(back.instance.alpha == g.instance.alpha);
    CHECK(back.instance.theta == g.instance.theta);
    CHECK(back.instance.beta == g.instance.beta);
    CHECK(back.instance.sigma == g.instance.sigma);
    CHECK(back.instance.lower == g.instance.lower);
    CHECK(back.instance.upper == g.instance.upper);
    REQUIRE(back.witness.has_value());
    CHECK(*back.witness == g.witness);
  }
}

TEST_CASE("field order does not matter and witness is optional") {
  const json doc = json::parse(R"({"upper":[1],"lower":[-1],"sigma":[-0.25],"beta":[[0]],
      "theta":[[1]],"alpha":[-4],"delta":[1],"m":1,"n":1})");
  const auto parsed = instance_from_json(doc);
  CHECK(parsed.instance.alpha == Vector{-4.0});
  CHECK_FALSE(parsed.witness.has_value());
}

TEST_CASE("parse errors name the offending field") {
  json doc = instance_to_json(generate({3, 2, 0}).instance);

  json missing = doc;
  missing.erase("sigma");
  CHECK(parse_failure(missing) == "missing field 'sigma'");

  json short_row = doc;
  short_row["theta"][1] = json::array({1.0, 2.0});
  CHECK(parse_failure(short_row) == "field 'theta[1]': expected 3 entries, got 2");

  json text_value = doc;
  text_value["alpha"][2] = "x";
  CHECK(parse_failure(text_value) == "field 'alpha[2]': expected a number");

  json bad_n = doc;
  bad_n["n"] = -3;
  CHECK(parse_failure(bad_n) == "field 'n': expected a nonnegative integer");

  CHECK(parse_failure(json::array()) == "instance document must be a JSON object");
}

TEST_CASE("reports round-trip through JSON") {
  const auto p = generate({5, 2, 3}).instance;
  SolverConfig config;
  config.track_dual_values = true;
  const auto report = solve(p, config);
  const json doc = report_to_json(report, 1e-6, 0.25, true);
  CHECK(doc["trace"].size() == static_cast<std::size_t>(report.iterations));
  CHECK(doc["trace"][0].contains("dual_value"));

  const auto back = report_from_json(json::parse(doc.dump()));
  CHECK(back.status == report.status);
  CHECK(back.objective == report.objective);
  CHECK(back.lambda == report.lambda.values);
  CHECK(back.y == report.y);
  CHECK(back.iterations == report.iterations);
  CHECK(back.max_residual == report.certificate.max_residual);
  CHECK(back.wall_time_s == 0.25);
  CHECK(back.eps == 1e-6);
}

TEST_CASE("report parsing rejects unknown status") {
  json doc = {{"status", "Solved"}, {"objective", 0.0}, {"lambda", json::array()},
              {"y", json::array()}, {"iterations", 0}, {"max_residual", 0.0}};
  CHECK_THROWS_WITH_AS(report_from_json(doc), "field 'status': unknown value 'Solved'",
                       ParseError);
}
