#include <doctest.h>

#include "fpl/fuzz.hpp"
#include "fpl/json_io.hpp"
#include "test_helpers.hpp"

using namespace fpl;

TEST_SUITE_BEGIN("fuzz");

namespace {

FuzzConfig base_config(FuzzScenario scenario, int count, std::uint64_t seed = 42) {
  FuzzConfig config;
  config.seed = seed;
  config.count = count;
  config.n_min = 3;
  config.n_max = 6;
  config.scenario = scenario;
  return config;
}

}  // namespace

TEST_CASE("identical configurations produce byte-identical reports") {
  auto config = base_config(FuzzScenario::thm31, 120);
  const auto first = report_to_json(fuzz(config)).dump();
  const auto second = report_to_json(fuzz(config)).dump();
  CHECK_EQ(first, second);
}

TEST_CASE("worker count never changes the report") {
  auto config = base_config(FuzzScenario::independence, 80, 7);
  config.threads = 1;
  const auto serial = report_to_json(fuzz(config)).dump();
  config.threads = 4;
  const auto parallel = report_to_json(fuzz(config)).dump();
  CHECK_EQ(serial, parallel);
}

TEST_CASE("count zero yields an empty report") {
  auto report = fuzz(base_config(FuzzScenario::thm31, 0));
  CHECK_EQ(report.cases.size(), 0);
  CHECK_EQ(report.verified + report.premises_unmet + report.counterexample, 0);
}

TEST_CASE("main theorem scenario finds no counterexamples") {
  for (auto generator : {SpaceGenerator::euclidean, SpaceGenerator::closure}) {
    auto config = base_config(FuzzScenario::thm31, 400);
    config.generator = generator;
    auto report = fuzz(config);
    CHECK_EQ(report.counterexample, 0);
    CHECK_EQ(report.verified + report.premises_unmet, 400);
    CHECK(report.verified > 0);  // the generators do hit certified maps
  }
}

TEST_CASE("two-point-to-three-point implication scenario holds") {
  auto config = base_config(FuzzScenario::prop21, 300, 7);
  config.generator = SpaceGenerator::closure;
  auto report = fuzz(config);
  CHECK_EQ(report.counterexample, 0);
  CHECK(report.verified >= 50);  // enough premise hits to be meaningful
}

TEST_CASE("widened-box scenario finds no counterexamples") {
  auto report = fuzz(base_config(FuzzScenario::thm42, 400, 3));
  CHECK_EQ(report.counterexample, 0);
  CHECK(report.verified > 0);
}

TEST_CASE("independence labels cover the interesting quadrants") {
  auto report = fuzz(base_config(FuzzScenario::independence, 500, 11));
  CHECK_EQ(report.counterexample, 0);
  int total = 0;
  for (const auto& [label, count] : report.labels) total += count;
  CHECK_EQ(total, 500);
  CHECK(report.labels["both"] > 0);
  CHECK(report.labels["gen_only"] > 0);  // three-point class strictly wider here
}

TEST_CASE("period-2 search logs findings without asserting") {
  auto report = fuzz(base_config(FuzzScenario::period2_search, 400, 5));
  CHECK_EQ(report.counterexample, 0);
  for (const auto& finding : report.findings) {
    CHECK(finding.contains("reproduction"));
    // Replay: the logged case really has a feasible certificate + 2-cycle.
    auto space = io::space_from_json<double>(finding["reproduction"]["space"], 1e-9);
    auto map = io::map_from_json(finding["reproduction"]["map"]);
    CHECK(classify_gen_crr(space, map).feasible);
    CHECK_FALSE(period2_points(map).empty());
  }
}

TEST_CASE("generated spaces always validate") {
  for (auto generator : {SpaceGenerator::euclidean, SpaceGenerator::closure}) {
    auto config = base_config(FuzzScenario::thm31, 60, 9);
    config.generator = generator;
    config.n_max = 8;
    for (int i = 0; i < config.count; ++i) {
      auto [space, map] = generate_case(config, i);
      CHECK(validate_metric(space.matrix(), 1e-12).ok);
      CHECK_NOTHROW(map.check_against(space.size()));
      CHECK(space.size() >= 3);
      CHECK(space.size() <= 8);
    }
  }
}

TEST_CASE("case generation is reproducible case by case") {
  auto config = base_config(FuzzScenario::thm31, 10);
  auto [space1, map1] = generate_case(config, 4);
  auto [space2, map2] = generate_case(config, 4);
  CHECK_EQ(io::space_to_json(space1).dump(), io::space_to_json(space2).dump());
  CHECK_EQ(map1.image, map2.image);
}

TEST_CASE("bad configurations are rejected") {
  auto config = base_config(FuzzScenario::thm31, 10);
  config.n_min = 2;
  CHECK_THROWS_AS(fuzz(config), ConfigError);
  config = base_config(FuzzScenario::thm31, -1);
  CHECK_THROWS_AS(fuzz(config), ConfigError);
  config = base_config(FuzzScenario::thm31, 10);
  config.n_max = 2;
  CHECK_THROWS_AS(fuzz(config), ConfigError);
  CHECK_THROWS_AS(scenario_from_name("nope"), ConfigError);
}

TEST_CASE("reports embed the tool version and the semantic config") {
  auto report = report_to_json(fuzz(base_config(FuzzScenario::thm31, 5)));
  CHECK_EQ(report["tool"]["name"], "fpl");
  CHECK_EQ(report["config"]["seed"], 42);
  CHECK_EQ(report["config"]["scenario"], "thm31");
  CHECK_EQ(report["tallies"]["verified"].get<int>() +
               report["tallies"]["premises_unmet"].get<int>() +
               report["tallies"]["counterexample"].get<int>(),
           5);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("io");

TEST_CASE("space files round-trip in both modes") {
  const auto j = Json::parse(R"({"points": ["x", "y", "z"],
                                 "dist": [["0", "1", "10"],
                                          ["1", "0", "10"],
                                          ["10", "10", "0"]]})");
  auto space = io::space_from_json<double>(j, 1e-9);
  CHECK_EQ(space.d(0, 2), 10.0);
  auto exact = io::space_from_json<Rational>(j);
  CHECK_EQ(exact.d(0, 1), Rational(1));
  auto redumped = io::space_from_json<Rational>(io::space_to_json(exact));
  CHECK_EQ(redumped.matrix(), exact.matrix());
}

TEST_CASE("decimal strings parse exactly in exact mode") {
  const auto j = Json::parse(R"({"dist": [["0", "0.5"], ["0.5", "0"]]})");
  auto space = io::space_from_json<Rational>(j);
  CHECK_EQ(space.d(0, 1), Rational(1, 2));
}

TEST_CASE("exact mode rejects non-integral JSON numbers") {
  const auto j = Json::parse(R"({"dist": [[0, 0.5], [0.5, 0]]})");
  CHECK_THROWS_AS(io::space_from_json<Rational>(j), InvalidInput);
  CHECK_NOTHROW(io::space_from_json<double>(j, 1e-9));
}

TEST_CASE("fraction strings are accepted everywhere") {
  CHECK_EQ(scalar_from_string<Rational>("4/21"), Rational(4, 21));
  CHECK_EQ(scalar_from_string<double>("4/21"), doctest::Approx(4.0 / 21.0));
  CHECK_EQ(scalar_from_string<Rational>("1e-3"), Rational(1, 1000));
  CHECK_EQ(scalar_from_string<Rational>("-2.5"), Rational(-5, 2));
  CHECK_THROWS_AS(scalar_from_string<Rational>("x"), InvalidInput);
}

TEST_CASE("rational formatting: integers, exact decimals, fractions") {
  CHECK_EQ(format_rational(Rational(5)), "5");
  CHECK_EQ(format_rational(Rational(1, 2)), "0.5");
  CHECK_EQ(format_rational(Rational(-7, 4)), "-1.75");
  CHECK_EQ(format_rational(Rational(4, 21)), "4/21");
  CHECK_EQ(format_rational(Rational(15, 1000)), "0.015");
  CHECK_EQ(parse_rational(format_rational(Rational(123456, 789))), Rational(123456, 789));
}

TEST_CASE("map files validate their image entries") {
  auto map = io::map_from_json(Json::parse(R"({"image": [0, 1, 0]})"));
  CHECK_EQ(map.image, std::vector<int>{0, 1, 0});
  CHECK_THROWS_AS(io::map_from_json(Json::parse(R"({"image": [0.5]})")), InvalidInput);
  CHECK_THROWS_AS(map.check_against(2), InvalidInput);
}

TEST_CASE("triple tables enforce the documented role order") {
  Json table{{"labels", {"x", "y", "z", "Tx", "Ty", "Tz"}},
             {"dist", Json::parse("[[0,1,2,0,1,2],[1,0,1,1,0,1],[2,1,0,2,1,0],"
                                  "[0,1,2,0,1,2],[1,0,1,1,0,1],[2,1,0,2,1,0]]")}};
  CHECK_NOTHROW(io::triple_table_from_json<double>(table));
  table["labels"] = {"x", "y", "z", "TX", "TY", "TZ"};
  CHECK_THROWS_AS(io::triple_table_from_json<double>(table), InvalidInput);
}

TEST_SUITE_END();
