#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fpl/errors.hpp"
#include "fpl/scalar.hpp"

namespace fpl {

/// One linear constraint coeff . v >= rhs with coeff >= 0 componentwise and
/// rhs >= 0, so the feasible region inside the nonnegative orthant is
/// upward-closed.
template <ScalarMode S>
struct LinearConstraint {
  std::vector<S> coeff;
  S rhs;
};

template <ScalarMode S>
struct LpResult {
  bool feasible = false;
  S min_value = S(0);
  std::vector<S> argmin;
  std::vector<int> active;  // original constraint indices tight at argmin
};

namespace detail {

/// Solves a dim x dim system in place. Exact pivoting in rational mode,
/// partial pivoting in float mode. Returns false when singular.
template <ScalarMode S>
bool solve_square(std::array<std::array<S, 4>, 3>& a, int dim, std::array<S, 3>& out) {
  for (int col = 0; col < dim; ++col) {
    int pivot = -1;
    if constexpr (kExactMode<S>) {
      for (int row = col; row < dim; ++row)
        if (a[row][col] != S(0)) { pivot = row; break; }
    } else {
      double best = 0;
      for (int row = col; row < dim; ++row)
        if (std::fabs(a[row][col]) > best) { best = std::fabs(a[row][col]); pivot = row; }
      if (pivot >= 0 && best < 1e-14) pivot = -1;
    }
    if (pivot < 0) return false;
    std::swap(a[col], a[pivot]);
    for (int row = 0; row < dim; ++row) {
      if (row == col) continue;
      const S factor = a[row][col] / a[col][col];
      for (int k = col; k <= dim; ++k) a[row][k] -= factor * a[col][k];
    }
  }
  for (int i = 0; i < dim; ++i) out[i] = a[i][dim] / a[i][i];
  return true;
}

template <ScalarMode S>
S dot(const std::vector<S>& c, const std::vector<S>& v) {
  S sum(0);
  for (std::size_t k = 0; k < c.size(); ++k) sum += c[k] * v[k];
  return sum;
}

/// Slack tolerance for accepting an enumerated vertex in float mode;
/// exact mode accepts on exact nonnegativity.
template <ScalarMode S>
bool slack_acceptable(const S& slack, const S& scale) {
  if constexpr (kExactMode<S>) {
    (void)scale;
    return slack >= S(0);
  } else {
    return slack >= -1e-9 * (1.0 + std::fabs(scale));
  }
}

}  // namespace detail

/// Minimizes a nonnegative linear objective over {v >= 0 : C v >= r} by
/// exhaustive enumeration of all choices of `dim` active hyperplanes drawn
/// from the constraints and the coordinate axes. Exact in rational mode.
/// The region is infeasible exactly when some constraint has a zero
/// coefficient vector and a positive right-hand side. On objective ties the
/// lexicographically smallest optimal vertex wins.
template <ScalarMode S>
LpResult<S> solve_linear_feasibility(const std::vector<LinearConstraint<S>>& constraints,
                                     const std::vector<S>& objective, int dim) {
  if (dim < 1 || dim > 3) throw InvalidInput("solver supports dimensions 1..3 only");
  if (static_cast<int>(objective.size()) != dim)
    throw InvalidInput("objective dimension mismatch");
  for (const auto& c : constraints) {
    if (static_cast<int>(c.coeff.size()) != dim)
      throw InvalidInput("constraint dimension mismatch");
    if (c.rhs < S(0)) throw InvalidInput("constraint rhs must be nonnegative");
    for (const auto& v : c.coeff)
      if (v < S(0)) throw InvalidInput("constraint coefficients must be nonnegative");
  }
  for (const auto& v : objective)
    if (v < S(0)) throw InvalidInput("objective must be nonnegative");

  LpResult<S> result;
  for (const auto& c : constraints) {
    bool all_zero = true;
    for (const auto& v : c.coeff)
      if (v != S(0)) { all_zero = false; break; }
    if (all_zero && c.rhs > S(0)) return result;  // unsatisfiable
  }

  // Drop constraints that cannot be facets: vacuous rhs-zero rows, exact
  // duplicates, and rows implied componentwise by another row.
  const int m = static_cast<int>(constraints.size());
  std::vector<int> kept;
  kept.reserve(m);
  for (int i = 0; i < m; ++i) {
    const auto& ci = constraints[i];
    if (ci.rhs == S(0)) continue;
    bool redundant = false;
    for (int j = 0; j < m && !redundant; ++j) {
      if (j == i) continue;
      const auto& cj = constraints[j];
      bool dominates = cj.rhs >= ci.rhs;
      bool equal = cj.rhs == ci.rhs;
      for (int k = 0; k < dim && dominates; ++k) {
        dominates = cj.coeff[k] <= ci.coeff[k];
        equal = equal && cj.coeff[k] == ci.coeff[k];
      }
      if (dominates && (!equal || j < i)) redundant = true;
    }
    if (!redundant) kept.push_back(i);
  }

  // Candidate planes: kept constraints first, then the axis planes v_j = 0.
  const int planes = static_cast<int>(kept.size()) + dim;
  std::array<int, 3> choice{};
  std::vector<S> best;
  S best_value(0);
  bool have_best = false;

  auto try_vertex = [&](const std::array<int, 3>& sel) {
    std::array<std::array<S, 4>, 3> system{};
    for (int row = 0; row < dim; ++row) {
      const int plane = sel[row];
      if (plane < static_cast<int>(kept.size())) {
        const auto& c = constraints[kept[plane]];
        for (int k = 0; k < dim; ++k) system[row][k] = c.coeff[k];
        system[row][dim] = c.rhs;
      } else {
        for (int k = 0; k <= dim; ++k) system[row][k] = S(0);
        system[row][plane - static_cast<int>(kept.size())] = S(1);
      }
    }
    std::array<S, 3> solved{};
    if (!detail::solve_square(system, dim, solved)) return;

    std::vector<S> v(solved.begin(), solved.begin() + dim);
    for (int k = 0; k < dim; ++k)
      if (!detail::slack_acceptable(v[k], S(1))) return;
    for (int idx : kept) {
      const auto& c = constraints[idx];
      const S lhs = detail::dot(c.coeff, v);
      if (!detail::slack_acceptable<S>(lhs - c.rhs, lhs + c.rhs)) return;
    }

    const S value = detail::dot(objective, v);
    if (!have_best || value < best_value ||
        (value == best_value && v < best)) {
      have_best = true;
      best_value = value;
      best = std::move(v);
    }
  };

  // Lexicographic sweep over all plane combinations keeps the result
  // independent of any parallel schedule.
  if (dim == 1) {
    for (int a = 0; a < planes; ++a) { choice = {a, 0, 0}; try_vertex(choice); }
  } else if (dim == 2) {
    for (int a = 0; a < planes; ++a)
      for (int b = a + 1; b < planes; ++b) { choice = {a, b, 0}; try_vertex(choice); }
  } else {
    for (int a = 0; a < planes; ++a)
      for (int b = a + 1; b < planes; ++b)
        for (int c = b + 1; c < planes; ++c) { choice = {a, b, c}; try_vertex(choice); }
  }

  if (!have_best) return result;  // cannot happen for well-formed input
  result.feasible = true;
  result.min_value = best_value;
  result.argmin = best;
  for (int i = 0; i < m; ++i) {
    const S lhs = detail::dot(constraints[i].coeff, result.argmin);
    const S slack = lhs - constraints[i].rhs;
    bool binding;
    if constexpr (kExactMode<S>) {
      binding = slack == S(0);
    } else {
      binding = std::fabs(slack) <=
                1e-9 * (1.0 + std::fabs(lhs) + std::fabs(constraints[i].rhs));
    }
    if (binding) result.active.push_back(i);
  }
  return result;
}

}  // namespace fpl
