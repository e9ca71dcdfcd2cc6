#include <doctest.h>

#include <random>

#include "fpl/metric.hpp"
#include "test_helpers.hpp"

using namespace fpl;

TEST_SUITE_BEGIN("metric");

TEST_CASE("validate accepts the 1-10-10 isoceles matrix") {
  auto dist = Matrix<double>::from_rows({{0, 1, 10}, {1, 0, 10}, {10, 10, 0}});
  auto report = validate_metric(dist, 1e-9);
  CHECK(report.ok);
  CHECK(report.violations.empty());
}

TEST_CASE("validate flags a nonzero diagonal") {
  auto dist = Matrix<double>::from_rows({{0, 1}, {1, 1}});
  auto report = validate_metric(dist, 1e-9);
  REQUIRE_FALSE(report.ok);
  REQUIRE_EQ(report.violations.size(), 1);
  CHECK_EQ(report.violations[0].axiom, MetricAxiom::nonzero_diagonal);
  CHECK_EQ(report.violations[0].index, std::vector<int>{1});
  CHECK_EQ(report.violations[0].magnitude, doctest::Approx(1.0));
}

TEST_CASE("validate flags a triangle violation with its magnitude") {
  auto dist = Matrix<double>::from_rows({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
  auto report = validate_metric(dist, 1e-9);
  REQUIRE_FALSE(report.ok);
  REQUIRE_EQ(report.violations.size(), 1);
  CHECK_EQ(report.violations[0].axiom, MetricAxiom::triangle);
  CHECK_EQ(report.violations[0].index, std::vector<int>{0, 2, 1});
  CHECK_EQ(report.violations[0].magnitude, doctest::Approx(1.0));
}

TEST_CASE("validate reports negative entries as violations, not exceptions") {
  auto dist = Matrix<double>::from_rows({{0, -1}, {-1, 0}});
  auto report = validate_metric(dist, 1e-9);
  REQUIRE_FALSE(report.ok);
  CHECK_EQ(report.violations.front().axiom, MetricAxiom::negative_entry);
}

TEST_CASE("validate rejects non-square input with a shape error") {
  CHECK_THROWS_AS(Matrix<double>::from_rows({{0, 1}, {1, 0}, {2, 2}}), InvalidInput);
}

TEST_CASE("exact validation distinguishes a boundary triangle") {
  auto r = [](long p, long q = 1) { return Rational(p, q); };
  // d(0,2) = d(0,1) + d(1,2) exactly: degenerate but valid.
  auto dist = Matrix<Rational>::from_rows(
      {{r(0), r(1), r(2)}, {r(1), r(0), r(1)}, {r(2), r(1), r(0)}});
  CHECK(validate_metric(dist).ok);
  dist.at(0, 2) = r(2000000001, 1000000000);  // nudge above the sum
  dist.at(2, 0) = dist.at(0, 2);
  CHECK_FALSE(validate_metric(dist).ok);
}

TEST_CASE("euclidean_space computes 1-D distances") {
  auto space = euclidean_space<double>({{0.0}, {0.5}, {1.0}});
  CHECK_EQ(space.d(0, 1), doctest::Approx(0.5));
  CHECK_EQ(space.d(0, 2), doctest::Approx(1.0));
  CHECK_EQ(space.d(1, 2), doctest::Approx(0.5));
}

TEST_CASE("euclidean_space handles the 3-4-5 triangle") {
  auto space = euclidean_space<double>({{0.0, 0.0}, {3.0, 4.0}});
  CHECK_EQ(space.d(0, 1), doctest::Approx(5.0));
}

TEST_CASE("euclidean_space works exactly on perfect squares") {
  auto r = [](long v) { return Rational(v); };
  auto space = euclidean_space<Rational>({{r(0), r(0)}, {r(3), r(4)}});
  CHECK_EQ(space.d(0, 1), Rational(5));
}

TEST_CASE("euclidean_space rejects duplicate points") {
  CHECK_THROWS_AS(euclidean_space<double>({{0.0}, {0.0}}), InvalidInput);
}

TEST_CASE("metric_closure repairs a broken triangle via shortest paths") {
  auto w = Matrix<double>::from_rows({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
  auto space = metric_closure(w);
  CHECK_EQ(space.d(0, 2), doctest::Approx(2.0));
  CHECK_EQ(space.d(0, 1), doctest::Approx(1.0));
  CHECK_EQ(space.d(1, 2), doctest::Approx(1.0));
}

TEST_CASE("metric_closure leaves a metric unchanged") {
  auto w = Matrix<double>::from_rows({{0, 1, 10}, {1, 0, 10}, {10, 10, 0}});
  auto space = metric_closure(w);
  CHECK_EQ(space.matrix(), w);
}

TEST_CASE("metric_closure on two points is the identity") {
  auto w = Matrix<double>::from_rows({{0, 2}, {2, 0}});
  CHECK_EQ(metric_closure(w).matrix(), w);
}

TEST_CASE("metric_closure rejects zero off-diagonal weights") {
  auto w = Matrix<double>::from_rows({{0, 0}, {0, 0}});
  CHECK_THROWS_AS(metric_closure(w), InvalidInput);
}

TEST_CASE("generators always produce valid metrics") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> size(2, 8);
  std::uniform_int_distribution<int> weight(1, 12);
  std::uniform_int_distribution<int> coord(0, 20);
  for (int round = 0; round < 200; ++round) {
    const int n = size(rng);
    Matrix<double> w(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = weight(rng) * 0.25;
        w.at(i, j) = v;
        w.at(j, i) = v;
      }
    auto closed = metric_closure(w);
    CHECK(validate_metric(closed.matrix(), 1e-12).ok);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(closed.d(i, j) <= w.at(i, j) + 1e-12);

    std::vector<std::vector<double>> pts;
    while (static_cast<int>(pts.size()) < n) {
      std::vector<double> p{coord(rng) * 0.5, coord(rng) * 0.5};
      bool dup = false;
      for (auto& q : pts) dup = dup || q == p;
      if (!dup) pts.push_back(p);
    }
    CHECK(validate_metric(euclidean_space<double>(pts).matrix(), 1e-12).ok);
  }
}

TEST_CASE("metric_closure is idempotent") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> weight(1, 12);
  for (int round = 0; round < 100; ++round) {
    const int n = 5;
    Matrix<double> w(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = weight(rng) * 0.25;
        w.at(i, j) = v;
        w.at(j, i) = v;
      }
    auto once = metric_closure(w);
    auto twice = metric_closure(once.matrix());
    CHECK_EQ(once.matrix(), twice.matrix());
  }
}

TEST_CASE("relabeling permutes validation and distances consistently") {
  auto space = testing::isoceles_space();
  std::vector<int> perm{2, 0, 1};
  auto permuted = space.permuted(perm);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK_EQ(permuted.d(perm[i], perm[j]), space.d(i, j));
  CHECK_EQ(permuted.labels()[perm[0]], "x");
  CHECK(validate_metric(permuted.matrix(), 1e-12).ok);
}

TEST_SUITE_END();
