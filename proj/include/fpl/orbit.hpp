#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fpl/classify.hpp"
#include "fpl/dsl.hpp"
#include "fpl/metric.hpp"
#include "fpl/selfmap.hpp"

namespace fpl {

enum class OrbitOutcome { fixed_point, cycle, truncated };

inline const char* to_string(OrbitOutcome o) {
  switch (o) {
    case OrbitOutcome::fixed_point: return "fixed_point";
    case OrbitOutcome::cycle: return "cycle";
    case OrbitOutcome::truncated: return "truncated";
  }
  return "?";
}

/// Picard orbit on a finite space: the visited indices up to the first
/// repeat or fixed point, with the gaps a_n = d(x_{n-1}, x_n) between
/// consecutive iterates.
template <ScalarMode S>
struct OrbitReport {
  int start = 0;
  std::vector<int> sequence;
  std::vector<S> gaps;  // gaps[i] = d(sequence[i], sequence[i+1])
  OrbitOutcome outcome = OrbitOutcome::truncated;
  int fixed_index = -1;
  int fixed_step = -1;    // position of the fixed point in `sequence`
  int cycle_entry = -1;   // position where the cycle begins
  int cycle_period = 0;
};

/// Iterates T from `start` until a fixed point or the first revisited
/// index. A finite space always terminates within n steps; max_steps below
/// n yields a truncated report.
template <ScalarMode S>
OrbitReport<S> orbit_finite(const FiniteMetricSpace<S>& space, const SelfMap& map,
                            int start, int max_steps = -1) {
  map.check_against(space.size());
  if (start < 0 || start >= space.size()) throw InvalidInput("orbit start index out of range");
  if (max_steps < 0) max_steps = space.size();

  OrbitReport<S> report;
  report.start = start;
  std::vector<int> position(space.size(), -1);
  int current = start;
  position[current] = 0;
  report.sequence.push_back(current);

  for (int step = 0; step < max_steps; ++step) {
    const int next = map(current);
    if (next == current) {
      report.outcome = OrbitOutcome::fixed_point;
      report.fixed_index = current;
      report.fixed_step = static_cast<int>(report.sequence.size()) - 1;
      return report;
    }
    if (position[next] >= 0) {
      report.outcome = OrbitOutcome::cycle;
      report.cycle_entry = position[next];
      report.cycle_period = static_cast<int>(report.sequence.size()) - position[next];
      return report;
    }
    report.gaps.push_back(space.d(current, next));
    position[next] = static_cast<int>(report.sequence.size());
    report.sequence.push_back(next);
    current = next;
  }
  report.outcome = OrbitOutcome::truncated;
  return report;
}

/// gamma = 2 (2 alpha + lambda) / (2 - lambda); below 1 exactly when
/// 2 alpha + 3 lambda / 2 < 1.
template <ScalarMode S>
S gamma_of(const S& alpha, const S& lambda) {
  if (!(lambda < scalar_from_int<S>(2))) throw DomainError("gamma needs lambda < 2");
  return scalar_from_int<S>(2) * (scalar_from_int<S>(2) * alpha + lambda) /
         (scalar_from_int<S>(2) - lambda);
}

/// A-priori tail bound of a certified orbit:
/// d(x_n, x_{n+p}) <= a gamma^{(n-1)/2} / (1 - sqrt(gamma)) for all p.
inline double cauchy_bound(double a, double gamma, int n) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("cauchy bound needs gamma in [0, 1)");
  if (n < 3) throw InvalidInput("cauchy bound is stated for n >= 3");
  return a * std::pow(gamma, (n - 1) / 2.0) / (1.0 - std::sqrt(gamma));
}

enum class TheoremVerdict { verified, premises_unmet, counterexample };

inline const char* to_string(TheoremVerdict v) {
  switch (v) {
    case TheoremVerdict::verified: return "verified";
    case TheoremVerdict::premises_unmet: return "premises_unmet";
    case TheoremVerdict::counterexample: return "counterexample";
  }
  return "?";
}

struct BoundAudit {
  std::string kind;  // gap_law | per_gap | cauchy
  int step;          // the n of a_n, or of d(x_n, x*)
  double bound;
  double observed;
  bool pass;
};

/// Orbit of a certified map together with the audit of every a-priori
/// bound the certificate implies, and the resulting theorem verdict.
template <ScalarMode S>
struct CertifiedRun {
  OrbitReport<S> orbit;
  double alpha = 0, lambda = 0, gamma = 0;
  double gap_base = 0;  // a = max(a_1, a_2)
  std::vector<BoundAudit> audits;
  TheoremVerdict verdict = TheoremVerdict::premises_unmet;
  std::string note;
};

/// Runs Picard iteration from `start` under a three-point certificate and
/// audits the gap law, the per-gap geometric bound, and the Cauchy tail
/// bound against the realized orbit. Audits run in double precision.
template <ScalarMode S>
CertifiedRun<S> certified_run(const FiniteMetricSpace<S>& space, const SelfMap& map,
                              const Certificate<S>& cert, int start, double tol = 1e-9) {
  if (cert.mapping_class != MappingClass::gen_crr)
    throw InvalidInput("certified runs need a gen-crr certificate");
  if (space.size() < 3) throw InvalidInput("certified runs need at least 3 points");

  CertifiedRun<S> run;
  run.orbit = orbit_finite(space, map, start);
  if (!cert.feasible) {
    run.note = "certificate is infeasible";
    return run;
  }
  if (!period2_points(map).empty()) {
    run.note = "map has points of prime period 2";
    return run;
  }

  run.alpha = to_double(cert.coefficient("alpha"));
  run.lambda = to_double(cert.coefficient("lambda"));
  run.gamma = gamma_of<double>(run.alpha, run.lambda);

  std::vector<double> gaps;
  gaps.reserve(run.orbit.gaps.size());
  for (const auto& g : run.orbit.gaps) gaps.push_back(to_double(g));
  const int gap_count = static_cast<int>(gaps.size());  // gaps[i] = a_{i+1}

  bool bounds_ok = true;
  auto audit = [&](std::string kind, int step, double bound, double observed) {
    const bool pass = observed <= bound + tol;
    bounds_ok = bounds_ok && pass;
    run.audits.push_back({std::move(kind), step, bound, observed, pass});
  };

  // Gap law: a_n <= gamma * max(a_{n-2}, a_{n-1}) while the three points
  // preceding a_n are pairwise distinct (always true pre-termination).
  for (int n = 3; n <= gap_count; ++n)
    audit("gap_law", n, run.gamma * std::max(gaps[n - 3], gaps[n - 2]), gaps[n - 1]);

  if (gap_count >= 2) {
    run.gap_base = std::max(gaps[0], gaps[1]);
    // Per-gap geometric decay: a_n <= gamma^(n/2 - 1) a for n >= 3.
    for (int n = 3; n <= gap_count; ++n)
      audit("per_gap", n, std::pow(run.gamma, n / 2.0 - 1.0) * run.gap_base, gaps[n - 1]);
    if (run.orbit.outcome == OrbitOutcome::fixed_point) {
      const int m = run.orbit.fixed_step;
      for (int n = 3; n <= m; ++n)
        audit("cauchy", n, cauchy_bound(run.gap_base, run.gamma, n),
              to_double(space.d(run.orbit.sequence[n], run.orbit.sequence[m])));
    }
  }

  const std::size_t fixed_count = fixed_points(map).size();
  if (run.orbit.outcome != OrbitOutcome::fixed_point) {
    run.verdict = TheoremVerdict::counterexample;
    run.note = "orbit did not reach a fixed point";
  } else if (fixed_count < 1 || fixed_count > 2) {
    run.verdict = TheoremVerdict::counterexample;
    run.note = "fixed point count is " + std::to_string(fixed_count);
  } else if (!bounds_ok) {
    run.verdict = TheoremVerdict::counterexample;
    run.note = "a convergence bound failed";
  } else {
    run.verdict = TheoremVerdict::verified;
  }
  return run;
}

/// Continuity-at-fixed-point bound: for a certified map with lambda < 1 and
/// every fixed point x*, all distinct u, v different from x* satisfy
/// d(x*,Tu) + d(x*,Tv) <= (2 alpha + lambda)/(1 - lambda) (d(u,x*) + d(v,x*)).
template <ScalarMode S>
struct ContinuityCheck {
  bool ok = true;
  S worst_excess = S(0);           // max of lhs - rhs over all eligible triples
  std::vector<int> worst;          // {x*, u, v} attaining it
};

template <ScalarMode S>
ContinuityCheck<S> check_fixed_point_continuity(const FiniteMetricSpace<S>& space,
                                                const SelfMap& map, const S& alpha,
                                                const S& lambda,
                                                const S& tol = default_tol<S>()) {
  if (!(lambda < S(1))) throw DomainError("continuity bound needs lambda < 1");
  map.check_against(space.size());
  const S factor = (scalar_from_int<S>(2) * alpha + lambda) / (S(1) - lambda);
  ContinuityCheck<S> result;
  bool first = true;
  for (int star : fixed_points(map)) {
    for (int u = 0; u < space.size(); ++u) {
      if (u == star) continue;
      for (int v = u + 1; v < space.size(); ++v) {
        if (v == star) continue;
        const S lhs = space.d(star, map(u)) + space.d(star, map(v));
        const S rhs = factor * (space.d(u, star) + space.d(v, star));
        const S excess = lhs - rhs;
        if (first || excess > result.worst_excess) {
          result.worst_excess = excess;
          result.worst = {star, u, v};
          first = false;
        }
      }
    }
  }
  result.ok = first || result.worst_excess <= tol;
  return result;
}

/// Real-line Picard iteration of a map expression: runs until the gap
/// |x_{k+1} - x_k| falls to tol or max_iter is hit. On finite runs the
/// asymptotic-regularity flag records whether the gaps reached tol.
struct RealOrbitReport {
  std::vector<double> iterates;
  std::vector<double> gaps;
  bool converged = false;
  bool asymptotically_regular = false;
  double final_gap = 0;
  int iterations = 0;
};

inline RealOrbitReport iterate_real(const dsl::MapExpr& map, double x0, double tol,
                                    int max_iter) {
  if (max_iter < 1) throw InvalidInput("max_iter must be positive");
  RealOrbitReport report;
  report.iterates.push_back(x0);
  double x = x0;
  for (int k = 0; k < max_iter; ++k) {
    double next;
    try {
      next = dsl::eval_map<double>(map, x);
    } catch (const EvalError& e) {
      throw EvalError(std::string(e.what()) + " at iteration " + std::to_string(k));
    }
    const double gap = std::fabs(next - x);
    report.iterates.push_back(next);
    report.gaps.push_back(gap);
    report.iterations = k + 1;
    report.final_gap = gap;
    x = next;
    if (gap <= tol) {
      report.converged = true;
      report.asymptotically_regular = true;
      return report;
    }
  }
  return report;
}

}  // namespace fpl
