#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fpl/errors.hpp"
#include "fpl/scalar.hpp"

namespace fpl {

/// Square matrix stored row-major.
template <ScalarMode S>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n, S fill = S(0)) : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {}

  int size() const { return n_; }
  S& at(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  const S& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

  bool operator==(const Matrix&) const = default;

  static Matrix from_rows(const std::vector<std::vector<S>>& rows) {
    const int n = static_cast<int>(rows.size());
    for (const auto& row : rows)
      if (static_cast<int>(row.size()) != n)
        throw InvalidInput("distance matrix is not square");
    Matrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    return m;
  }

 private:
  int n_ = 0;
  std::vector<S> data_;
};

enum class MetricAxiom {
  negative_entry,
  nonzero_diagonal,
  zero_off_diagonal,
  asymmetry,
  triangle,
};

inline const char* to_string(MetricAxiom a) {
  switch (a) {
    case MetricAxiom::negative_entry: return "negative_entry";
    case MetricAxiom::nonzero_diagonal: return "nonzero_diagonal";
    case MetricAxiom::zero_off_diagonal: return "zero_off_diagonal";
    case MetricAxiom::asymmetry: return "asymmetry";
    case MetricAxiom::triangle: return "triangle";
  }
  return "?";
}

template <ScalarMode S>
struct MetricViolation {
  MetricAxiom axiom;
  std::vector<int> index;  // 1, 2 or 3 point indices depending on the axiom
  S magnitude;             // how far the axiom is broken, for ranking near-misses
};

template <ScalarMode S>
struct ValidationReport {
  bool ok = true;
  std::vector<MetricViolation<S>> violations;
};

/// Checks every metric axiom on a square matrix. Exhaustive O(n^3) over
/// triangle triples; violations come back in a canonical order (axiom kind,
/// then lexicographic indices) so the result is schedule-independent.
template <ScalarMode S>
ValidationReport<S> validate_metric(const Matrix<S>& dist, const S& tol = S(0)) {
  const int n = dist.size();
  if (n < 1) throw InvalidInput("metric space needs at least one point");
  ValidationReport<S> report;
  auto add = [&](MetricAxiom axiom, std::vector<int> idx, S magnitude) {
    report.violations.push_back({axiom, std::move(idx), std::move(magnitude)});
  };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (dist.at(i, j) < S(0)) add(MetricAxiom::negative_entry, {i, j}, -dist.at(i, j));

  for (int i = 0; i < n; ++i)
    if (scalar_abs(dist.at(i, i)) > tol)
      add(MetricAxiom::nonzero_diagonal, {i}, scalar_abs(dist.at(i, i)));

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist.at(i, j) <= tol && dist.at(i, j) >= S(0))
        add(MetricAxiom::zero_off_diagonal, {i, j}, tol - dist.at(i, j));

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (scalar_abs(dist.at(i, j) - dist.at(j, i)) > tol)
        add(MetricAxiom::asymmetry, {i, j}, scalar_abs(dist.at(i, j) - dist.at(j, i)));

  // Triangle violations are keyed (endpoint, endpoint, via) with endpoints
  // deduped through the upper triangle.
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const S excess = dist.at(i, k) - dist.at(i, j) - dist.at(j, k);
        if (excess > tol) add(MetricAxiom::triangle, {i, k, j}, excess);
      }

  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const auto& a, const auto& b) {
                     if (a.axiom != b.axiom) return a.axiom < b.axiom;
                     return a.index < b.index;
                   });
  report.ok = report.violations.empty();
  return report;
}

/// Labeled point set with a validated distance matrix. Immutable after
/// construction; values are safe to share across threads.
template <ScalarMode S>
class FiniteMetricSpace {
 public:
  static constexpr int kMaxPoints = 64;  // desk scale: validation is O(n^3)

  static FiniteMetricSpace create(std::vector<std::string> labels, Matrix<S> dist,
                                  const S& tol = default_tol<S>()) {
    const int n = dist.size();
    if (static_cast<int>(labels.size()) != n)
      throw InvalidInput("label count does not match matrix size");
    if (n > kMaxPoints) throw InvalidInput("space exceeds the supported point count");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (labels[i] == labels[j]) throw InvalidInput("duplicate point label '" + labels[i] + "'");
    auto report = validate_metric(dist, tol);
    if (!report.ok) {
      const auto& v = report.violations.front();
      std::string idx;
      for (int p : v.index) idx += (idx.empty() ? "" : ",") + std::to_string(p);
      throw InvalidInput(std::string("matrix is not a metric: first violation ") +
                         to_string(v.axiom) + " at (" + idx + ")");
    }
    return FiniteMetricSpace(std::move(labels), std::move(dist));
  }

  int size() const { return dist_.size(); }
  const S& d(int i, int j) const { return dist_.at(i, j); }
  const Matrix<S>& matrix() const { return dist_; }
  const std::vector<std::string>& labels() const { return labels_; }

  int index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
      if (labels_[i] == label) return i;
    throw InvalidInput("unknown point label '" + label + "'");
  }

  /// Relabel/permute points: new index perm[i] holds old point i.
  FiniteMetricSpace permuted(const std::vector<int>& perm) const {
    const int n = size();
    std::vector<std::string> labels(n);
    Matrix<S> dist(n);
    for (int i = 0; i < n; ++i) {
      labels[perm[i]] = labels_[i];
      for (int j = 0; j < n; ++j) dist.at(perm[i], perm[j]) = d(i, j);
    }
    return FiniteMetricSpace(std::move(labels), std::move(dist));
  }

 private:
  FiniteMetricSpace(std::vector<std::string> labels, Matrix<S> dist)
      : labels_(std::move(labels)), dist_(std::move(dist)) {}

  std::vector<std::string> labels_;
  Matrix<S> dist_;
};

namespace detail {
inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    sum += t * t;
  }
  return std::sqrt(sum);
}

inline Rational euclid(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational sum(0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Rational t = a[k] - b[k];
    sum += t * t;
  }
  auto root = exact_sqrt(sum);
  if (!root)
    throw DomainError("exact mode requires pairwise distances with rational square roots");
  return *root;
}
}  // namespace detail

/// Builds the metric space of a point cloud under the Euclidean distance.
/// In exact mode the squared distances must be perfect rational squares
/// (always true in one dimension).
template <ScalarMode S>
FiniteMetricSpace<S> euclidean_space(const std::vector<std::vector<S>>& points,
                                     std::vector<std::string> labels = {},
                                     const S& tol = default_tol<S>()) {
  const int n = static_cast<int>(points.size());
  if (n < 1) throw InvalidInput("need at least one point");
  const std::size_t dim = points[0].size();
  for (const auto& p : points)
    if (p.size() != dim) throw InvalidInput("coordinate vectors differ in dimension");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (points[i] == points[j])
        throw InvalidInput("duplicate point at indices " + std::to_string(i) + "," +
                           std::to_string(j));
  if (labels.empty()) {
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  }
  Matrix<S> dist(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const S v = detail::euclid(points[i], points[j]);
      dist.at(i, j) = v;
      dist.at(j, i) = v;
    }
  return FiniteMetricSpace<S>::create(std::move(labels), std::move(dist), tol);
}

/// Repairs a positive symmetric weight matrix into a metric via all-pairs
/// shortest paths over the weighted complete graph. Output entries never
/// exceed the input weights, and the result always validates.
template <ScalarMode S>
FiniteMetricSpace<S> metric_closure(const Matrix<S>& weights,
                                    std::vector<std::string> labels = {},
                                    const S& tol = default_tol<S>()) {
  const int n = weights.size();
  if (n < 1) throw InvalidInput("need at least one point");
  for (int i = 0; i < n; ++i) {
    if (weights.at(i, i) != S(0)) throw InvalidInput("closure input needs a zero diagonal");
    for (int j = 0; j < n; ++j) {
      if (weights.at(i, j) != weights.at(j, i))
        throw InvalidInput("closure input must be symmetric");
      if (i != j && weights.at(i, j) <= S(0))
        throw InvalidInput("closure input needs positive off-diagonal weights");
    }
  }
  Matrix<S> dist = weights;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const S via = dist.at(i, k) + dist.at(k, j);
        if (via < dist.at(i, j)) dist.at(i, j) = via;
      }
  if (labels.empty()) {
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  }
  return FiniteMetricSpace<S>::create(std::move(labels), std::move(dist), tol);
}

}  // namespace fpl
