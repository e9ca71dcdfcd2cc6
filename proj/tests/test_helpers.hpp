#pragma once

#include <random>
#include <vector>

#include "fpl/metric.hpp"
#include "fpl/selfmap.hpp"

namespace fpl::testing {

/// The 3-point isoceles space with sides 1, 10, 10 and the map sending
/// z to x while fixing x and y. The workhorse example: it lies in the
/// three-point class but not in the two-point one.
inline FiniteMetricSpace<double> isoceles_space() {
  return FiniteMetricSpace<double>::create(
      {"x", "y", "z"},
      Matrix<double>::from_rows({{0, 1, 10}, {1, 0, 10}, {10, 10, 0}}));
}

inline FiniteMetricSpace<Rational> isoceles_space_exact() {
  auto r = [](long v) { return Rational(v); };
  return FiniteMetricSpace<Rational>::create(
      {"x", "y", "z"},
      Matrix<Rational>::from_rows(
          {{r(0), r(1), r(10)}, {r(1), r(0), r(10)}, {r(10), r(10), r(0)}}));
}

inline SelfMap isoceles_map() { return SelfMap{{0, 1, 0}}; }

inline SelfMap identity_map(int n) {
  SelfMap m;
  m.image.resize(n);
  for (int i = 0; i < n; ++i) m.image[i] = i;
  return m;
}

inline SelfMap constant_map(int n, int target = 0) {
  SelfMap m;
  m.image.assign(n, target);
  return m;
}

/// Small random metric space via shortest-path closure of random weights.
inline FiniteMetricSpace<double> random_space(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> pick(1, 8);
  Matrix<double> w(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = pick(rng) * 0.5;
      w.at(i, j) = v;
      w.at(j, i) = v;
    }
  return metric_closure(w);
}

inline SelfMap random_map(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  SelfMap m;
  m.image.resize(n);
  for (int i = 0; i < n; ++i) m.image[i] = pick(rng);
  return m;
}

/// Mostly-constant maps certify far more often than uniform ones; useful
/// when a test needs premise hits rather than coverage.
inline SelfMap contractive_map(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  SelfMap m;
  m.image.assign(n, pick(rng));
  if (pick(rng) % 2) m.image[pick(rng)] = pick(rng);
  return m;
}

}  // namespace fpl::testing
