// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero if any fail.
//
// argv[1] (optional): path to the fpl binary, used by the byte-identical
// CLI reproducibility criterion; without it that criterion falls back to
// the in-process report serializer.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fpl/checks.hpp"
#include "fpl/classify.hpp"
#include "fpl/fuzz.hpp"
#include "fpl/json_io.hpp"
#include "fpl/orbit.hpp"
#include "oracle.hpp"

using namespace fpl;

namespace {

int failures = 0;

void criterion(const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  const auto started = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (!ok) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.1fs", seconds);
  std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "  (" << timing << ")";
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n";
}

FiniteMetricSpace<Rational> isoceles_exact() {
  auto r = [](long v) { return Rational(v); };
  return FiniteMetricSpace<Rational>::create(
      {"x", "y", "z"},
      Matrix<Rational>::from_rows(
          {{r(0), r(1), r(10)}, {r(1), r(0), r(10)}, {r(10), r(10), r(0)}}));
}

FiniteMetricSpace<double> isoceles_float() {
  return FiniteMetricSpace<double>::create(
      {"x", "y", "z"},
      Matrix<double>::from_rows({{0, 1, 10}, {1, 0, 10}, {10, 10, 0}}));
}

std::string run_command(const std::string& command) {
  std::array<char, 4096> buffer{};
  std::string output;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) throw std::runtime_error("popen failed");
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe.get())) > 0)
    output.append(buffer.data(), got);
  return output;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const SelfMap anchor_map{{0, 1, 0}};

  criterion("1. isoceles example: exact 4/21 optimum, two-point class infeasible at 1",
            [&](std::string& detail) {
    auto exact = isoceles_exact();
    auto gen = classify_gen_crr<Rational>(exact, anchor_map);
    if (!gen.feasible || *gen.strictness != Rational(4, 21)) {
      detail = "three-point strictness " + format_rational(*gen.strictness);
      return false;
    }
    auto sub = substitute_gen_crr<Rational>(exact, anchor_map, Rational(1, 3), Rational(0));
    if (sub.min_slack != Rational(5)) {
      detail = "substitution slack " + format_rational(sub.min_slack);
      return false;
    }
    auto crr = classify_crr<Rational>(exact, anchor_map);
    if (crr.feasible || *crr.strictness != Rational(1)) {
      detail = "two-point strictness " + format_rational(*crr.strictness);
      return false;
    }
    // Float mode at tol 1e-9 must agree.
    auto fgen = classify_gen_crr(isoceles_float(), anchor_map);
    auto fcrr = classify_crr(isoceles_float(), anchor_map);
    return fgen.feasible && std::fabs(*fgen.strictness - 4.0 / 21.0) <= 1e-9 &&
           !fcrr.feasible && std::fabs(*fcrr.strictness - 1.0) <= 1e-9;
  });

  criterion("2. shrinking line map violates the triple inequality by exactly 0.7",
            [&](std::string& detail) {
    auto map = dsl::parse_map("9*x/10");
    auto table = TripleTable<double>::from_line(0.0, 0.5, 1.0, map);
    const double slack = check_gen_crr_triple(table, 0.5, 2.0 / 3.0);
    detail = "slack " + std::to_string(slack);
    return std::fabs(slack - (-0.7)) <= 1e-12;
  });

  criterion("3. quartering map: two-point slack >= -1e-12 across the 1001-point grid",
            [&](std::string& detail) {
    auto map = dsl::parse_map("piecewise(x < 1 : x/4 ; 1/8)");
    std::vector<double> points(1001), images(1001);
    for (int i = 0; i <= 1000; ++i) {
      points[i] = i / 1000.0;
      images[i] = dsl::eval_map(map, points[i]);
    }
    double worst = 1.0;
    for (int i = 0; i <= 1000; ++i)
      for (int j = 0; j <= 1000; ++j) {
        if (i == j) continue;
        const double dxy = std::fabs(points[i] - points[j]);
        const double slack = 0.25 * dxy + 0.125 * std::fabs(points[i] - images[i]) +
                             0.125 * std::fabs(points[j] - images[j]) -
                             std::fabs(images[i] - images[j]);
        if (slack < worst) worst = slack;
      }
    detail = "worst slack " + std::to_string(worst);
    return worst >= -1e-12;
  });

  criterion("4. weighted two-point feasibility implies the three-point class (1000 cases)",
            [&](std::string& detail) {
    FuzzConfig config;
    config.seed = 7;
    config.count = 1000;
    config.scenario = FuzzScenario::prop21;
    config.generator = SpaceGenerator::closure;
    auto report = fuzz(config);
    detail = "verified " + std::to_string(report.verified) + ", premises unmet " +
             std::to_string(report.premises_unmet);
    return report.counterexample == 0 && report.verified >= 100;
  });

  criterion("5. certified orbits: fixed-point count and every bound audit (10000 cases)",
            [&](std::string& detail) {
    int verified_total = 0;
    for (auto generator : {SpaceGenerator::euclidean, SpaceGenerator::closure}) {
      FuzzConfig config;
      config.seed = 42;
      config.count = 5000;
      config.scenario = FuzzScenario::thm31;
      config.generator = generator;
      auto report = fuzz(config);
      if (report.counterexample != 0) {
        detail = "counterexamples " + std::to_string(report.counterexample);
        return false;
      }
      verified_total += report.verified;
    }
    detail = "verified " + std::to_string(verified_total) + " of 10000";
    return verified_total >= 1000;
  });

  criterion("6. specializations at lambda=0 / alpha=0 match the ratio classes (1000 cases)",
            [&](std::string& detail) {
    FuzzConfig config;
    config.seed = 13;
    config.count = 1000;
    for (int i = 0; i < config.count; ++i) {
      auto [space, map] = generate_case(config, i);
      auto alpha_lp = gen_crr_alpha_optimum_at_lambda_zero(space, map);
      auto perim = classify_perimeter(space, map);
      if (!alpha_lp.feasible || !perim.strictness.has_value()) {
        detail = "perimeter route disagreed at case " + std::to_string(i);
        return false;
      }
      if (std::fabs(alpha_lp.min_value - *perim.strictness) > 1e-9) {
        detail = "alpha mismatch at case " + std::to_string(i);
        return false;
      }
      auto lambda_lp = gen_crr_lambda_optimum_at_alpha_zero(space, map);
      auto kannan = classify_gen_kannan(space, map);
      if (lambda_lp.feasible != kannan.strictness.has_value()) {
        detail = "kannan feasibility mismatch at case " + std::to_string(i);
        return false;
      }
      if (lambda_lp.feasible &&
          std::fabs(lambda_lp.min_value - *kannan.strictness) > 1e-9) {
        detail = "lambda mismatch at case " + std::to_string(i);
        return false;
      }
    }
    return true;
  });

  criterion("7. vertex enumeration matches the grid oracle on 100 instances",
            [&](std::string& detail) {
    FuzzConfig config;
    config.seed = 2024;
    config.count = 100;
    config.n_min = 3;
    config.n_max = 5;
    config.generator = SpaceGenerator::closure;
    int compared = 0;
    for (int i = 0; i < config.count; ++i) {
      auto [space, map] = generate_case(config, i);
      const auto klass = static_cast<testing::OracleClass>(i % 4);
      auto problem = testing::oracle_problem(space, map, klass);
      auto grid = testing::oracle_grid_min(problem);
      std::optional<double> strictness;
      switch (klass) {
        case testing::OracleClass::crr:
          strictness = classify_crr(space, map).strictness; break;
        case testing::OracleClass::gen_crr:
          strictness = classify_gen_crr(space, map).strictness; break;
        case testing::OracleClass::gen_kannan:
          strictness = classify_gen_kannan(space, map).strictness; break;
        case testing::OracleClass::perimeter:
          strictness = classify_perimeter(space, map).strictness; break;
      }
      if (!strictness.has_value()) {
        if (grid.has_value()) {
          detail = "oracle found a point where no coefficient exists, case " +
                   std::to_string(i);
          return false;
        }
        continue;
      }
      if (!grid.has_value()) {
        if (*strictness <= 1.0) {
          detail = "oracle missed a feasible box point at case " + std::to_string(i);
          return false;
        }
        continue;
      }
      if (*grid - *strictness > 1e-3 || *strictness - *grid > 1e-9) {
        detail = "difference " + std::to_string(*grid - *strictness) + " at case " +
                 std::to_string(i);
        return false;
      }
      ++compared;
    }
    detail = "compared " + std::to_string(compared) + " optima";
    return compared >= 60;
  });

  criterion("8. continuity bound at fixed points holds on every certified fuzz case",
            [&](std::string& detail) {
    FuzzConfig config;
    config.seed = 42;
    config.count = 2000;
    int certified = 0;
    for (auto generator : {SpaceGenerator::euclidean, SpaceGenerator::closure}) {
      config.generator = generator;
      for (int i = 0; i < config.count; ++i) {
        auto [space, map] = generate_case(config, i);
        auto cert = classify_gen_crr(space, map);
        if (!cert.feasible) continue;  // feasible certificates always have lambda < 2/3
        ++certified;
        auto check = check_fixed_point_continuity(space, map, cert.coefficient("alpha"),
                                                  cert.coefficient("lambda"), 1e-9);
        if (!check.ok) {
          detail = "violation at case " + std::to_string(i);
          return false;
        }
      }
    }
    detail = "checked " + std::to_string(certified) + " certified maps";
    return certified >= 200;
  });

  criterion("9. expression engine: exact endpoint values, fast convergence, regularity flag",
            [&](std::string& detail) {
    auto map = dsl::parse_map("piecewise(x < 1 : x/4 ; 1/8)");
    if (dsl::eval_map(map, 1.0) != 0.125 || dsl::eval_map(map, 0.5) != 0.125) {
      detail = "endpoint evaluation wrong";
      return false;
    }
    auto run = iterate_real(map, 1.0, 1e-12, 30);
    if (!run.converged || run.final_gap > 1e-12) {
      detail = "no convergence within 30 iterations";
      return false;
    }
    auto flip = iterate_real(dsl::parse_map("1 - x"), 0.2, 1e-12, 1000);
    detail = "quartering map converged in " + std::to_string(run.iterations) + " steps";
    return !flip.asymptotically_regular;
  });

  criterion("10. seeded fuzz reports are byte-identical across runs",
            [&](std::string& detail) {
    if (!cli.empty()) {
      const std::string command =
          cli + " fuzz --seed 42 --count 1000 --scenario thm31 --json 2>/dev/null";
      const std::string first = run_command(command);
      const std::string second = run_command(command);
      detail = "CLI output " + std::to_string(first.size()) + " bytes";
      return !first.empty() && first == second;
    }
    FuzzConfig config;
    config.seed = 42;
    config.count = 1000;
    config.scenario = FuzzScenario::thm31;
    const auto first = report_to_json(fuzz(config)).dump(2);
    const auto second = report_to_json(fuzz(config)).dump(2);
    detail = "in-process comparison";
    return first == second;
  });

  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
