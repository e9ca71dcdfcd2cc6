#pragma once

#include <array>

#include "fpl/dsl.hpp"
#include "fpl/metric.hpp"
#include "fpl/selfmap.hpp"

namespace fpl {

/// Distance table over the six roles {x, y, z, Tx, Ty, Tz} of one triple
/// configuration. Only symmetry and nonnegativity are required, so the
/// table may come from points sampled out of a continuous space with no
/// closure requirement. Roles may coincide (a fixed point has d(x,Tx)=0).
template <ScalarMode S>
class TripleTable {
 public:
  enum Role { X = 0, Y = 1, Z = 2, TX = 3, TY = 4, TZ = 5 };

  static TripleTable from_matrix(const Matrix<S>& d) {
    if (d.size() != 6) throw InvalidInput("triple table needs a 6x6 matrix");
    for (int i = 0; i < 6; ++i) {
      if (d.at(i, i) != S(0)) throw InvalidInput("triple table diagonal must be zero");
      for (int j = 0; j < 6; ++j) {
        if (d.at(i, j) < S(0)) throw InvalidInput("triple table entries must be nonnegative");
        if (d.at(i, j) != d.at(j, i)) throw InvalidInput("triple table must be symmetric");
      }
    }
    return TripleTable(d);
  }

  /// Configuration of three reals on the line under a map expression.
  static TripleTable from_line(const S& x, const S& y, const S& z, const dsl::MapExpr& map) {
    const std::array<S, 6> pts{x, y, z, dsl::eval_map(map, x), dsl::eval_map(map, y),
                               dsl::eval_map(map, z)};
    Matrix<S> d(6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) d.at(i, j) = scalar_abs(pts[i] - pts[j]);
    return TripleTable(d);
  }

  static TripleTable from_space(const FiniteMetricSpace<S>& space, const SelfMap& map,
                                int i, int j, int k) {
    const std::array<int, 6> pts{i, j, k, map(i), map(j), map(k)};
    Matrix<S> d(6);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) d.at(a, b) = space.d(pts[a], pts[b]);
    return TripleTable(d);
  }

  const S& d(Role a, Role b) const { return d_.at(a, b); }

  void require_distinct_sources() const {
    if (d(X, Y) == S(0) || d(Y, Z) == S(0) || d(X, Z) == S(0))
      throw InvalidInput("x, y, z must be pairwise distinct");
  }

  S source_perimeter() const { return d(X, Y) + d(Y, Z) + d(X, Z); }
  S image_perimeter() const { return d(TX, TY) + d(TY, TZ) + d(TX, TZ); }
  S displacement_sum() const { return d(X, TX) + d(Y, TY) + d(Z, TZ); }
  S max_side() const {
    S m = d(X, Y);
    if (d(Y, Z) > m) m = d(Y, Z);
    if (d(X, Z) > m) m = d(X, Z);
    return m;
  }

 private:
  explicit TripleTable(Matrix<S> d) : d_(std::move(d)) {}
  Matrix<S> d_;
};

/// Distance table over the four roles {x, y, Tx, Ty} of one pair
/// configuration.
template <ScalarMode S>
class PairTable {
 public:
  enum Role { X = 0, Y = 1, TX = 2, TY = 3 };

  static PairTable from_matrix(const Matrix<S>& d) {
    if (d.size() != 4) throw InvalidInput("pair table needs a 4x4 matrix");
    for (int i = 0; i < 4; ++i) {
      if (d.at(i, i) != S(0)) throw InvalidInput("pair table diagonal must be zero");
      for (int j = 0; j < 4; ++j) {
        if (d.at(i, j) < S(0)) throw InvalidInput("pair table entries must be nonnegative");
        if (d.at(i, j) != d.at(j, i)) throw InvalidInput("pair table must be symmetric");
      }
    }
    return PairTable(d);
  }

  static PairTable from_line(const S& x, const S& y, const dsl::MapExpr& map) {
    return from_points(x, y, dsl::eval_map(map, x), dsl::eval_map(map, y));
  }

  static PairTable from_points(const S& x, const S& y, const S& tx, const S& ty) {
    const std::array<S, 4> pts{x, y, tx, ty};
    Matrix<S> d(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) d.at(i, j) = scalar_abs(pts[i] - pts[j]);
    return PairTable(d);
  }

  const S& d(Role a, Role b) const { return d_.at(a, b); }

  void require_distinct_sources() const {
    if (d(X, Y) == S(0)) throw InvalidInput("x and y must be distinct");
  }

 private:
  explicit PairTable(Matrix<S> d) : d_(std::move(d)) {}
  Matrix<S> d_;
};

/// Slack of the three-point inequality at one configuration:
/// alpha * perimeter + lambda * displacements - image perimeter.
/// Nonnegative slack means the inequality holds there.
template <ScalarMode S>
S check_gen_crr_triple(const TripleTable<S>& t, const S& alpha, const S& lambda) {
  t.require_distinct_sources();
  return alpha * t.source_perimeter() + lambda * t.displacement_sum() - t.image_perimeter();
}

/// Slack of the two-point inequality
/// a d(x,y) + b d(x,Tx) + c d(y,Ty) - d(Tx,Ty).
template <ScalarMode S>
S check_crr_pair(const PairTable<S>& t, const S& a, const S& b, const S& c) {
  t.require_distinct_sources();
  using R = PairTable<S>;
  return a * t.d(R::X, R::Y) + b * t.d(R::X, R::TX) + c * t.d(R::Y, R::TY) -
         t.d(R::TX, R::TY);
}

/// The two pairwise consequences of the three-point class:
/// accumulation_point:  d(Tx,Ty) <= alpha d(x,y) + lambda (d(x,Tx) + d(y,Ty)/2)
///   (holds at accumulation points of continuity),
/// symmetric_crr:       d(Tx,Ty) <= alpha d(x,y) + (3 lambda / 4)(d(x,Tx) + d(y,Ty))
///   (the b = c two-point form a continuous mapping satisfies).
enum class ConsequenceKind { accumulation_point, symmetric_crr };

template <ScalarMode S>
S check_consequence_pair(const PairTable<S>& t, const S& alpha, const S& lambda,
                         ConsequenceKind which) {
  t.require_distinct_sources();
  using R = PairTable<S>;
  S rhs = alpha * t.d(R::X, R::Y);
  switch (which) {
    case ConsequenceKind::accumulation_point:
      rhs += lambda * (t.d(R::X, R::TX) + t.d(R::Y, R::TY) / scalar_from_int<S>(2));
      break;
    case ConsequenceKind::symmetric_crr:
      rhs += scalar_ratio<S>(3, 4) * lambda * (t.d(R::X, R::TX) + t.d(R::Y, R::TY));
      break;
  }
  return rhs - t.d(R::TX, R::TY);
}

/// Slack of the F-class inequality: RHS adds F(displacements) to the
/// perimeter term; alpha must lie in [0, 1/2).
template <ScalarMode S>
S check_f_triple(const TripleTable<S>& t, const S& alpha, const dsl::FuncExpr& f) {
  t.require_distinct_sources();
  if (alpha < S(0) || !(alpha < scalar_ratio<S>(1, 2)))
    throw DomainError("F-class alpha must lie in [0, 1/2)");
  using R = TripleTable<S>;
  const S fval = dsl::eval_func(f, t.d(R::X, R::TX), t.d(R::Y, R::TY), t.d(R::Z, R::TZ));
  return alpha * t.source_perimeter() + fval - t.image_perimeter();
}

/// Slack of the B-class inequality: each displacement is weighted by its
/// own beta(displacement) factor.
template <ScalarMode S>
S check_b_triple(const TripleTable<S>& t, const S& alpha, const dsl::FuncExpr& beta1,
                 const dsl::FuncExpr& beta2, const dsl::FuncExpr& beta3) {
  t.require_distinct_sources();
  if (alpha < S(0) || !(alpha < scalar_ratio<S>(1, 2)))
    throw DomainError("B-class alpha must lie in [0, 1/2)");
  using R = TripleTable<S>;
  const S d1 = t.d(R::X, R::TX), d2 = t.d(R::Y, R::TY), d3 = t.d(R::Z, R::TZ);
  const S rhs = alpha * t.source_perimeter() + dsl::eval_func(beta1, d1) * d1 +
                dsl::eval_func(beta2, d2) * d2 + dsl::eval_func(beta3, d3) * d3;
  return rhs - t.image_perimeter();
}

/// Slack of the (phi, F)-class inequality: phi applies to the largest side
/// of the source triangle.
template <ScalarMode S>
S check_phif_triple(const TripleTable<S>& t, const dsl::FuncExpr& phi,
                    const dsl::FuncExpr& f) {
  t.require_distinct_sources();
  using R = TripleTable<S>;
  const S rhs = dsl::eval_func(phi, t.max_side()) +
                dsl::eval_func(f, t.d(R::X, R::TX), t.d(R::Y, R::TY), t.d(R::Z, R::TZ));
  return rhs - t.image_perimeter();
}

}  // namespace fpl
