#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fpl/json_io.hpp"
#include "fpl/metric.hpp"
#include "fpl/selfmap.hpp"

namespace fpl {

enum class FuzzScenario { thm31, thm42, prop21, independence, period2_search };
enum class SpaceGenerator { euclidean, closure };

FuzzScenario scenario_from_name(const std::string& name);
const char* to_string(FuzzScenario s);
const char* to_string(SpaceGenerator g);

struct FuzzConfig {
  std::uint64_t seed = 0;
  int count = 0;
  int n_min = 3;
  int n_max = 6;
  SpaceGenerator generator = SpaceGenerator::euclidean;
  FuzzScenario scenario = FuzzScenario::thm31;
  double tol = 1e-9;
  int threads = 0;  // 0 = available parallelism; not part of the report

  void validate() const;
};

struct CaseRecord {
  int index = 0;
  std::string digest;
  int n = 0;
  std::vector<int> image;
  std::string verdict;  // verified | premises_unmet | counterexample
  std::string label;    // scenario-specific tag
  Json detail;
  Json reproduction;  // full space + map, only on counterexamples
};

struct FuzzReport {
  FuzzConfig config;
  std::vector<CaseRecord> cases;
  int verified = 0;
  int premises_unmet = 0;
  int counterexample = 0;
  std::map<std::string, int> labels;
  std::vector<Json> findings;
};

/// Deterministic case generator: case `index` derives everything from a
/// mt19937_64 engine seeded with seed XOR index, so any case can be
/// reproduced in isolation.
std::pair<FiniteMetricSpace<double>, SelfMap> generate_case(const FuzzConfig& config,
                                                            int index);

/// Runs `count` independent scenario cases. Cases may execute on several
/// worker threads; records are assembled in case-index order so the report
/// never depends on scheduling.
FuzzReport fuzz(const FuzzConfig& config);

Json report_to_json(const FuzzReport& report);

}  // namespace fpl
