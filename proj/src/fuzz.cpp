#include "fpl/fuzz.hpp"

#include <atomic>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "fpl/classify.hpp"
#include "fpl/orbit.hpp"

namespace fpl {

FuzzScenario scenario_from_name(const std::string& name) {
  if (name == "thm31") return FuzzScenario::thm31;
  if (name == "thm42") return FuzzScenario::thm42;
  if (name == "prop21") return FuzzScenario::prop21;
  if (name == "independence") return FuzzScenario::independence;
  if (name == "period2_search") return FuzzScenario::period2_search;
  throw ConfigError("unknown scenario '" + name + "'");
}

const char* to_string(FuzzScenario s) {
  switch (s) {
    case FuzzScenario::thm31: return "thm31";
    case FuzzScenario::thm42: return "thm42";
    case FuzzScenario::prop21: return "prop21";
    case FuzzScenario::independence: return "independence";
    case FuzzScenario::period2_search: return "period2_search";
  }
  return "?";
}

const char* to_string(SpaceGenerator g) {
  return g == SpaceGenerator::euclidean ? "euclidean" : "closure";
}

void FuzzConfig::validate() const {
  if (count < 0) throw ConfigError("count must be nonnegative");
  if (n_min < 3) throw ConfigError("triple-based scenarios need n >= 3");
  if (n_max < n_min) throw ConfigError("empty point-count range");
  if (n_max > 16) throw ConfigError("fuzzing supports n up to 16");
  if (!(tol > 0)) throw ConfigError("tol must be positive");
}

namespace {

/// Uniform integer in [0, bound) from the engine's specified output
/// sequence, via rejection sampling; independent of any library
/// distribution so reports are reproducible everywhere.
std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % bound;
}

FiniteMetricSpace<double> random_euclidean(std::mt19937_64& rng, int n) {
  // Integer grid scaled by 1/4: coordinates are exact binary values, so
  // identical runs produce bit-identical distance matrices.
  const int dim = 1 + static_cast<int>(next_below(rng, 2));
  const int grid = 25;
  std::vector<std::vector<double>> points;
  points.reserve(n);
  while (static_cast<int>(points.size()) < n) {
    std::vector<double> p(dim);
    for (int k = 0; k < dim; ++k) p[k] = 0.25 * static_cast<double>(next_below(rng, grid));
    bool duplicate = false;
    for (const auto& q : points) duplicate = duplicate || q == p;
    if (!duplicate) points.push_back(std::move(p));
  }
  return euclidean_space<double>(points);
}

FiniteMetricSpace<double> random_closure(std::mt19937_64& rng, int n) {
  static constexpr double kWeights[] = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0};
  Matrix<double> w(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = kWeights[next_below(rng, 8)];
      w.at(i, j) = v;
      w.at(j, i) = v;
    }
  return metric_closure(w);
}

SelfMap random_map(std::mt19937_64& rng, int n) {
  SelfMap map;
  map.image.resize(n);
  switch (next_below(rng, 3)) {
    case 0:  // uniform
      for (int i = 0; i < n; ++i) map.image[i] = static_cast<int>(next_below(rng, n));
      break;
    case 1: {  // near-constant: everything to one target, one exception
      const int target = static_cast<int>(next_below(rng, n));
      for (int i = 0; i < n; ++i) map.image[i] = target;
      const int odd = static_cast<int>(next_below(rng, n));
      map.image[odd] = static_cast<int>(next_below(rng, n));
      break;
    }
    default: {  // two anchors, each point maps to one of them
      const int a = static_cast<int>(next_below(rng, n));
      int b = static_cast<int>(next_below(rng, n));
      if (b == a) b = (a + 1) % n;
      for (int i = 0; i < n; ++i) map.image[i] = next_below(rng, 2) ? a : b;
      break;
    }
  }
  return map;
}

struct ScenarioResult {
  TheoremVerdict verdict = TheoremVerdict::verified;
  std::string label;
  Json detail;
  bool is_finding = false;
};

ScenarioResult scenario_thm31(const FiniteMetricSpace<double>& space, const SelfMap& map,
                              double tol) {
  ScenarioResult result;
  const auto cert = classify_gen_crr(space, map, tol);
  result.detail["strictness"] =
      cert.strictness ? Json(*cert.strictness) : Json();
  if (!cert.feasible) {
    result.verdict = TheoremVerdict::premises_unmet;
    result.label = "certificate_infeasible";
    return result;
  }
  result.detail["alpha"] = cert.coefficient("alpha");
  result.detail["lambda"] = cert.coefficient("lambda");
  if (!period2_points(map).empty()) {
    result.verdict = TheoremVerdict::premises_unmet;
    result.label = "period2_present";
    return result;
  }
  const auto fixed = fixed_points(map);
  result.detail["fixed_count"] = fixed.size();
  if (fixed.empty() || fixed.size() > 2) {
    result.verdict = TheoremVerdict::counterexample;
    result.label = "fixed_count_out_of_range";
    return result;
  }
  for (int start = 0; start < space.size(); ++start) {
    const auto run = certified_run(space, map, cert, start, tol);
    if (run.verdict != TheoremVerdict::verified) {
      result.verdict = TheoremVerdict::counterexample;
      result.label = "orbit_audit_failed";
      result.detail["start"] = start;
      result.detail["note"] = run.note;
      return result;
    }
  }
  result.label = "verified";
  return result;
}

ScenarioResult scenario_thm42(const FiniteMetricSpace<double>& space, const SelfMap& map,
                              double /*tol*/) {
  ScenarioResult result;
  const auto witness = widened_box_witness(space, map);
  if (!witness) {
    result.verdict = TheoremVerdict::premises_unmet;
    result.label = "box_infeasible";
    return result;
  }
  result.detail["alpha"] = witness->first;
  result.detail["lambda"] = witness->second;
  // On a finite space asymptotic regularity means every orbit reaches a
  // fixed point (a cycle keeps its gap sequence bounded away from zero).
  for (int start = 0; start < space.size(); ++start) {
    const auto orbit = orbit_finite(space, map, start);
    if (orbit.outcome != OrbitOutcome::fixed_point) {
      result.verdict = TheoremVerdict::premises_unmet;
      result.label = "not_asymptotically_regular";
      return result;
    }
  }
  const auto fixed = fixed_points(map);
  result.detail["fixed_count"] = fixed.size();
  if (fixed.empty() || fixed.size() > 2) {
    result.verdict = TheoremVerdict::counterexample;
    result.label = "fixed_count_out_of_range";
    return result;
  }
  result.label = "verified";
  return result;
}

ScenarioResult scenario_prop21(const FiniteMetricSpace<double>& space, const SelfMap& map,
                               double tol) {
  ScenarioResult result;
  // Minimize 2a + 3(b+c)/2 directly over the two-point constraints; the
  // premise asks for coefficients with that functional below 1.
  auto set = crr_constraints(space, map);
  const std::vector<double> objective{2.0, 1.5, 1.5};
  const auto lp = solve_linear_feasibility(set.constraints, objective, 3);
  result.detail["weighted_optimum"] = lp.feasible ? Json(lp.min_value) : Json();
  if (!lp.feasible || !(lp.min_value <= 1.0 - tol)) {
    result.verdict = TheoremVerdict::premises_unmet;
    result.label = "premise_unreachable";
    return result;
  }
  const double a = lp.argmin[0], b = lp.argmin[1], c = lp.argmin[2];
  result.detail["a"] = a;
  result.detail["b"] = b;
  result.detail["c"] = c;
  const auto sub = substitute_gen_crr(space, map, a, b + c);
  result.detail["min_slack"] = sub.min_slack;
  if (sub.min_slack < -tol) {
    result.verdict = TheoremVerdict::counterexample;
    result.label = "implication_failed";
    result.detail["worst_triple"] = sub.worst;
    return result;
  }
  result.label = "verified";
  return result;
}

ScenarioResult scenario_independence(const FiniteMetricSpace<double>& space,
                                     const SelfMap& map, double tol) {
  ScenarioResult result;
  const bool crr = classify_crr(space, map, tol).feasible;
  const bool gen = classify_gen_crr(space, map, tol).feasible;
  result.label = crr ? (gen ? "both" : "crr_only") : (gen ? "gen_only" : "neither");
  result.is_finding = result.label == "crr_only" || result.label == "gen_only";
  return result;
}

ScenarioResult scenario_period2_search(const FiniteMetricSpace<double>& space,
                                       const SelfMap& map, double tol) {
  ScenarioResult result;
  const auto cert = classify_gen_crr(space, map, tol);
  const auto p2 = period2_points(map);
  if (cert.feasible && !p2.empty()) {
    // The theory leaves open whether this combination can occur with no
    // fixed point; log it, assert nothing.
    result.label = fixed_points(map).empty() ? "period2_no_fixed_point"
                                             : "period2_with_certificate";
    result.is_finding = true;
    result.detail["period2"] = std::vector<int>(p2.begin(), p2.end());
    result.detail["strictness"] = *cert.strictness;
  } else {
    result.label = "nothing";
  }
  return result;
}

ScenarioResult run_scenario(FuzzScenario scenario, const FiniteMetricSpace<double>& space,
                            const SelfMap& map, double tol) {
  switch (scenario) {
    case FuzzScenario::thm31: return scenario_thm31(space, map, tol);
    case FuzzScenario::thm42: return scenario_thm42(space, map, tol);
    case FuzzScenario::prop21: return scenario_prop21(space, map, tol);
    case FuzzScenario::independence: return scenario_independence(space, map, tol);
    case FuzzScenario::period2_search: return scenario_period2_search(space, map, tol);
  }
  throw ConfigError("unhandled scenario");
}

}  // namespace

std::pair<FiniteMetricSpace<double>, SelfMap> generate_case(const FuzzConfig& config,
                                                            int index) {
  std::mt19937_64 rng(config.seed ^ static_cast<std::uint64_t>(index));
  const int n = config.n_min + static_cast<int>(next_below(
                                   rng, static_cast<std::uint64_t>(config.n_max) -
                                            config.n_min + 1));
  auto space = config.generator == SpaceGenerator::euclidean ? random_euclidean(rng, n)
                                                             : random_closure(rng, n);
  auto map = random_map(rng, n);
  return {std::move(space), std::move(map)};
}

FuzzReport fuzz(const FuzzConfig& config) {
  config.validate();
  FuzzReport report;
  report.config = config;
  report.cases.resize(config.count);

  std::atomic<int> next_case{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (int i = next_case.fetch_add(1); i < config.count; i = next_case.fetch_add(1)) {
      if (failed.load()) return;
      try {
        auto [space, map] = generate_case(config, i);
        auto outcome = run_scenario(config.scenario, space, map, config.tol);
        CaseRecord& record = report.cases[i];
        record.index = i;
        record.digest = io::digest(io::space_to_json(space));
        record.n = space.size();
        record.image = map.image;
        record.verdict = to_string(outcome.verdict);
        record.label = outcome.label;
        record.detail = std::move(outcome.detail);
        if (outcome.verdict == TheoremVerdict::counterexample || outcome.is_finding) {
          record.reproduction =
              Json{{"space", io::space_to_json(space)}, {"map", io::map_to_json(map)}};
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> guard(failure_lock);
        failure = "case " + std::to_string(i) + ": " + e.what();
        failed.store(true);
        return;
      }
    }
  };

  int threads = config.threads;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min(threads, std::max(1, config.count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw ConfigError("fuzz case failed: " + failure);

  for (const auto& record : report.cases) {
    if (record.verdict == "verified") ++report.verified;
    else if (record.verdict == "premises_unmet") ++report.premises_unmet;
    else ++report.counterexample;
    if (!record.label.empty()) ++report.labels[record.label];
    if (!record.reproduction.is_null() && record.verdict != "counterexample")
      report.findings.push_back(Json{{"index", record.index},
                                     {"label", record.label},
                                     {"reproduction", record.reproduction}});
  }
  return report;
}

Json report_to_json(const FuzzReport& report) {
  Json cases = Json::array();
  for (const auto& r : report.cases) {
    Json c{{"index", r.index}, {"digest", r.digest},   {"n", r.n},
           {"image", r.image}, {"verdict", r.verdict}, {"label", r.label}};
    if (!r.detail.is_null()) c["detail"] = r.detail;
    if (!r.reproduction.is_null()) c["reproduction"] = r.reproduction;
    cases.push_back(std::move(c));
  }
  return Json{
      {"tool", Json{{"name", kToolName}, {"version", kToolVersion}}},
      {"config", Json{{"seed", report.config.seed},
                      {"count", report.config.count},
                      {"n_min", report.config.n_min},
                      {"n_max", report.config.n_max},
                      {"generator", to_string(report.config.generator)},
                      {"scenario", to_string(report.config.scenario)},
                      {"tol", report.config.tol}}},
      {"tallies", Json{{"verified", report.verified},
                       {"premises_unmet", report.premises_unmet},
                       {"counterexample", report.counterexample}}},
      {"labels", report.labels},
      {"findings", report.findings},
      {"cases", cases}};
}

}  // namespace fpl
