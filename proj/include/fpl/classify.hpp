#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpl/lp.hpp"
#include "fpl/metric.hpp"
#include "fpl/selfmap.hpp"

namespace fpl {

enum class MappingClass { crr, gen_crr, gen_kannan, perimeter };

inline const char* to_string(MappingClass c) {
  switch (c) {
    case MappingClass::crr: return "crr";
    case MappingClass::gen_crr: return "gen-crr";
    case MappingClass::gen_kannan: return "gen-kannan";
    case MappingClass::perimeter: return "perim";
  }
  return "?";
}

/// The three sums entering the triangle inequalities: perimeter of the
/// image triangle, perimeter of the source triangle, and the sum of the
/// three displacements d(., T.).
template <ScalarMode S>
struct TripleSums {
  S image_perimeter;    // d(Tx,Ty) + d(Ty,Tz) + d(Tx,Tz)
  S perimeter;          // d(x,y) + d(y,z) + d(x,z)
  S displacement_sum;   // d(x,Tx) + d(y,Ty) + d(z,Tz)
};

template <ScalarMode S>
TripleSums<S> triple_sums(const FiniteMetricSpace<S>& space, const SelfMap& map,
                          int i, int j, int k) {
  const int ti = map(i), tj = map(j), tk = map(k);
  return {space.d(ti, tj) + space.d(tj, tk) + space.d(ti, tk),
          space.d(i, j) + space.d(j, k) + space.d(i, k),
          space.d(i, map(i)) + space.d(j, map(j)) + space.d(k, map(k))};
}

/// Membership verdict for one contraction class: optimal coefficients, the
/// class functional's value at the optimum (strictness), its distance below
/// the class threshold (margin), and the constraints active at the optimum.
template <ScalarMode S>
struct Certificate {
  MappingClass mapping_class;
  bool feasible = false;
  std::vector<std::pair<std::string, S>> coefficients;
  std::optional<S> strictness;  // empty when no coefficients satisfy the constraints
  S threshold = S(0);
  std::optional<S> margin;
  std::vector<std::vector<int>> binding;  // pair or triple index tuples
  S tol = S(0);

  S coefficient(const std::string& name) const {
    for (const auto& [key, value] : coefficients)
      if (key == name) return value;
    throw InvalidInput("certificate has no coefficient '" + name + "'");
  }
};

template <ScalarMode S>
struct ConstraintSet {
  std::vector<LinearConstraint<S>> constraints;
  std::vector<std::vector<int>> tuples;  // source pair/triple per constraint
};

/// Constraints of the two-point class over all ordered pairs x != y:
/// a d(x,y) + b d(x,Tx) + c d(y,Ty) >= d(Tx,Ty).
template <ScalarMode S>
ConstraintSet<S> crr_constraints(const FiniteMetricSpace<S>& space, const SelfMap& map) {
  ConstraintSet<S> out;
  const int n = space.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      out.constraints.push_back(
          {{space.d(x, y), space.d(x, map(x)), space.d(y, map(y))},
           space.d(map(x), map(y))});
      out.tuples.push_back({x, y});
    }
  return out;
}

/// Constraints of the three-point class over all unordered pairwise-distinct
/// triples: alpha * perimeter + lambda * displacement_sum >= image_perimeter.
template <ScalarMode S>
ConstraintSet<S> gen_crr_constraints(const FiniteMetricSpace<S>& space, const SelfMap& map) {
  ConstraintSet<S> out;
  const int n = space.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        auto sums = triple_sums(space, map, i, j, k);
        out.constraints.push_back(
            {{sums.perimeter, sums.displacement_sum}, sums.image_perimeter});
        out.tuples.push_back({i, j, k});
      }
  return out;
}

namespace detail {

constexpr int kMaxClassifyPoints = 20;  // vertex enumeration is O(m^3)

template <ScalarMode S>
void check_classify_size(const FiniteMetricSpace<S>& space, const SelfMap& map,
                         int min_points, const char* klass) {
  map.check_against(space.size());
  if (space.size() < min_points)
    throw InvalidInput(std::string(klass) + " classification needs at least " +
                       std::to_string(min_points) + " points");
  if (space.size() > kMaxClassifyPoints)
    throw InvalidInput("classification supports up to " +
                       std::to_string(kMaxClassifyPoints) + " points");
}

template <ScalarMode S>
Certificate<S> certificate_from_lp(MappingClass klass, const LpResult<S>& lp,
                                   const ConstraintSet<S>& set,
                                   std::vector<std::string> names, const S& value,
                                   const S& threshold, const S& tol) {
  Certificate<S> cert;
  cert.mapping_class = klass;
  cert.threshold = threshold;
  cert.tol = tol;
  if (!lp.feasible) return cert;
  cert.strictness = value;
  cert.margin = threshold - value;
  cert.feasible = strictly_below(value, threshold, tol);
  for (std::size_t i = 0; i < names.size(); ++i)
    cert.coefficients.emplace_back(std::move(names[i]), lp.argmin[i]);
  for (int idx : lp.active) cert.binding.push_back(set.tuples[idx]);
  return cert;
}

}  // namespace detail

/// Two-point classification: minimizes a+b+c over the pair constraints.
/// Feasible iff the optimum lies strictly below 1.
template <ScalarMode S>
Certificate<S> classify_crr(const FiniteMetricSpace<S>& space, const SelfMap& map,
                            const S& tol = default_tol<S>()) {
  detail::check_classify_size(space, map, 2, "crr");
  auto set = crr_constraints(space, map);
  const std::vector<S> objective{S(1), S(1), S(1)};
  auto lp = solve_linear_feasibility(set.constraints, objective, 3);
  return detail::certificate_from_lp(MappingClass::crr, lp, set, {"a", "b", "c"},
                                     lp.min_value, S(1), tol);
}

/// Three-point classification: minimizes 2 alpha + 3 lambda / 2 over the
/// triple constraints. Feasible iff the optimum lies strictly below 1.
template <ScalarMode S>
Certificate<S> classify_gen_crr(const FiniteMetricSpace<S>& space, const SelfMap& map,
                                const S& tol = default_tol<S>()) {
  detail::check_classify_size(space, map, 3, "gen-crr");
  auto set = gen_crr_constraints(space, map);
  const std::vector<S> objective{scalar_from_int<S>(2), scalar_ratio<S>(3, 2)};
  auto lp = solve_linear_feasibility(set.constraints, objective, 2);
  return detail::certificate_from_lp(MappingClass::gen_crr, lp, set,
                                     {"alpha", "lambda"}, lp.min_value, S(1), tol);
}

namespace detail {

/// Shared shape of the two ratio classes: the minimal coefficient is the
/// maximum of image_perimeter / denom over all triples, infeasible outright
/// when some denom vanishes while the image perimeter does not.
template <ScalarMode S, typename DenomFn>
Certificate<S> classify_ratio(const FiniteMetricSpace<S>& space, const SelfMap& map,
                              MappingClass klass, const char* coeff_name,
                              const S& threshold, const S& tol, DenomFn denom_of) {
  check_classify_size(space, map, 3, to_string(klass));
  Certificate<S> cert;
  cert.mapping_class = klass;
  cert.threshold = threshold;
  cert.tol = tol;

  const int n = space.size();
  bool unsatisfiable = false;
  bool have_ratio = false;
  S best(0);
  std::vector<std::vector<int>> argmax;
  for (int i = 0; i < n && !unsatisfiable; ++i)
    for (int j = i + 1; j < n && !unsatisfiable; ++j)
      for (int k = j + 1; k < n && !unsatisfiable; ++k) {
        auto sums = triple_sums(space, map, i, j, k);
        const S denom = denom_of(sums);
        if (denom == S(0)) {
          if (sums.image_perimeter > S(0)) unsatisfiable = true;
          continue;  // vacuous constraint
        }
        const S ratio = sums.image_perimeter / denom;
        if (!have_ratio || ratio > best) {
          best = ratio;
          argmax.clear();
          argmax.push_back({i, j, k});
          have_ratio = true;
        } else if (ratio == best) {
          argmax.push_back({i, j, k});
        }
      }
  if (unsatisfiable) return cert;  // no coefficient exists

  if (best < S(0)) best = S(0);
  cert.strictness = best;
  cert.margin = threshold - best;
  cert.feasible = strictly_below(best, threshold, tol);
  cert.coefficients.emplace_back(coeff_name, best);
  cert.binding = std::move(argmax);
  return cert;
}

}  // namespace detail

/// Displacement-only class: minimal lambda with
/// image_perimeter <= lambda * displacement_sum, threshold 2/3.
template <ScalarMode S>
Certificate<S> classify_gen_kannan(const FiniteMetricSpace<S>& space, const SelfMap& map,
                                   const S& tol = default_tol<S>()) {
  return detail::classify_ratio(space, map, MappingClass::gen_kannan, "lambda",
                                scalar_ratio<S>(2, 3), tol,
                                [](const TripleSums<S>& s) { return s.displacement_sum; });
}

/// Perimeter-contraction class: minimal alpha with
/// image_perimeter <= alpha * perimeter, threshold 1.
template <ScalarMode S>
Certificate<S> classify_perimeter(const FiniteMetricSpace<S>& space, const SelfMap& map,
                                  const S& tol = default_tol<S>()) {
  return detail::classify_ratio(space, map, MappingClass::perimeter, "alpha", S(1), tol,
                                [](const TripleSums<S>& s) { return s.perimeter; });
}

/// One-dimensional restrictions of the three-point constraint system,
/// solved through the vertex-enumeration path. These deliberately take a
/// different route from classify_perimeter / classify_gen_kannan so the
/// specialization identities are a genuine cross-check.
template <ScalarMode S>
LpResult<S> gen_crr_alpha_optimum_at_lambda_zero(const FiniteMetricSpace<S>& space,
                                                 const SelfMap& map) {
  auto set = gen_crr_constraints(space, map);
  std::vector<LinearConstraint<S>> one_dim;
  one_dim.reserve(set.constraints.size());
  for (const auto& c : set.constraints) one_dim.push_back({{c.coeff[0]}, c.rhs});
  return solve_linear_feasibility(one_dim, std::vector<S>{S(1)}, 1);
}

template <ScalarMode S>
LpResult<S> gen_crr_lambda_optimum_at_alpha_zero(const FiniteMetricSpace<S>& space,
                                                 const SelfMap& map) {
  auto set = gen_crr_constraints(space, map);
  std::vector<LinearConstraint<S>> one_dim;
  one_dim.reserve(set.constraints.size());
  for (const auto& c : set.constraints) one_dim.push_back({{c.coeff[1]}, c.rhs});
  return solve_linear_feasibility(one_dim, std::vector<S>{S(1)}, 1);
}

/// Minimum slack of the three-point inequality at fixed (alpha, lambda)
/// over all triples, with the worst triple.
template <ScalarMode S>
struct SubstitutionCheck {
  S min_slack;
  std::vector<int> worst;
};

template <ScalarMode S>
SubstitutionCheck<S> substitute_gen_crr(const FiniteMetricSpace<S>& space,
                                        const SelfMap& map, const S& alpha,
                                        const S& lambda) {
  auto set = gen_crr_constraints(space, map);
  SubstitutionCheck<S> out{S(0), {}};
  bool first = true;
  for (std::size_t t = 0; t < set.constraints.size(); ++t) {
    const auto& c = set.constraints[t];
    const S slack = c.coeff[0] * alpha + c.coeff[1] * lambda - c.rhs;
    if (first || slack < out.min_slack) {
      out.min_slack = slack;
      out.worst = set.tuples[t];
      first = false;
    }
  }
  return out;
}

template <ScalarMode S>
SubstitutionCheck<S> substitute_crr(const FiniteMetricSpace<S>& space, const SelfMap& map,
                                    const S& a, const S& b, const S& c) {
  auto set = crr_constraints(space, map);
  SubstitutionCheck<S> out{S(0), {}};
  bool first = true;
  for (std::size_t t = 0; t < set.constraints.size(); ++t) {
    const auto& row = set.constraints[t];
    const S slack = row.coeff[0] * a + row.coeff[1] * b + row.coeff[2] * c - row.rhs;
    if (first || slack < out.min_slack) {
      out.min_slack = slack;
      out.worst = set.tuples[t];
      first = false;
    }
  }
  return out;
}

/// Decides whether the three-point constraint system admits coefficients in
/// the widened open box alpha < 1/2, lambda < 1 (no joint threshold), and
/// produces a witness when it does.
///
/// For fixed lambda the minimal alpha is A(lambda) = max over triples of
/// (image_perimeter - lambda * displacement_sum) / perimeter, nonincreasing
/// in lambda, so the box is reachable iff A(1) < 1/2.
template <ScalarMode S>
std::optional<std::pair<S, S>> widened_box_witness(const FiniteMetricSpace<S>& space,
                                                   const SelfMap& map) {
  auto set = gen_crr_constraints(space, map);
  const S half = scalar_ratio<S>(1, 2);
  S limit_alpha(0);   // A(1)
  S max_ratio(0);     // max displacement_sum / perimeter
  for (const auto& c : set.constraints) {
    const S at_one = (c.rhs - c.coeff[1]) / c.coeff[0];
    if (at_one > limit_alpha) limit_alpha = at_one;
    const S ratio = c.coeff[1] / c.coeff[0];
    if (ratio > max_ratio) max_ratio = ratio;
  }
  if (!(limit_alpha < half)) return std::nullopt;

  S lambda(0);
  if (max_ratio > S(0)) {
    const S backoff = (half - limit_alpha) / (scalar_from_int<S>(2) * max_ratio);
    if (backoff < S(1)) lambda = S(1) - backoff;
  }
  // Minimal alpha at the chosen lambda, then midway up to 1/2.
  S needed(0);
  for (const auto& c : set.constraints) {
    const S v = (c.rhs - lambda * c.coeff[1]) / c.coeff[0];
    if (v > needed) needed = v;
  }
  const S alpha = (needed + half) / scalar_from_int<S>(2);
  return std::make_pair(alpha, lambda);
}

}  // namespace fpl
