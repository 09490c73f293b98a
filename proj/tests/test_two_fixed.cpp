#include "tlc/two_fixed.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "test_util.hpp"
#include "tlc/oracles.hpp"

using namespace tlc;
using tlc::test::random_points;
using tlc::test::uniform;
using tlc::test::uniform_int;

TEST(TwoFixed, CollinearIsZero) {
  const PointSet pts{{0, 0}, {1, 0}, {2, 0}, {5, 0}};
  EXPECT_EQ(two_fixed_solve(pts, 0.0, 0.0).width, 0.0);
}

TEST(TwoFixed, SquareNeedsUnitWidth) {
  const PointSet sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto sol = two_fixed_solve(sq, kHalfPi, 0.0);
  EXPECT_NEAR(sol.width, 1.0, 1e-15);
  EXPECT_NEAR(oracle_solve(sq, Variant::two_fixed(kHalfPi, 0.0)).width, 1.0, 1e-15);
}

TEST(TwoFixed, EmptyInputIsDomainError) { EXPECT_THROW(two_fixed_solve(PointSet{}, 0.0, 0.0), DomainError); }

TEST(TwoFixed, SinglePoint) {
  const auto sol = two_fixed_solve(PointSet{{3, 4}}, 0.3, 1.1);
  EXPECT_EQ(sol.width, 0.0);
  EXPECT_TRUE(validate_cover(PointSet{{3, 4}}, sol.strips, sol.assignment, 1e-12));
}

TEST(TwoFixed, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = uniform_int(rng, 1, 64);
    const auto pts = random_points(rng, n);
    const double theta = uniform(rng, 0, kPi), phi = uniform(rng, 0, kPi);
    TwoFixedOptions opts;
    opts.check_invariants = true;
    const auto sol = two_fixed_solve(pts, theta, phi, opts);
    const auto ref = oracle_solve(pts, Variant::two_fixed(theta, phi));
    ASSERT_NEAR(sol.width, ref.width, 1e-9) << "trial " << trial;
    EXPECT_LE(sol.counters.probes, 4 * n + 4);
    EXPECT_TRUE(validate_cover(pts, sol.strips, sol.assignment, 1e-9));
    EXPECT_NEAR(sol.strips.first.theta, normalize_orientation(phi), 1e-15);
    EXPECT_NEAR(sol.strips.second.theta, normalize_orientation(theta), 1e-15);
  }
}

TEST(TwoFixed, EqualOrientationsSplitInOneDirection) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = random_points(rng, uniform_int(rng, 2, 40));
    const double t = uniform(rng, 0, kPi);
    // explicit prefix/suffix enumeration along n(t)
    std::vector<double> y;
    for (const Point& p : pts) y.push_back(p.dot(normal(t)));
    std::sort(y.begin(), y.end());
    double best = y.back() - y.front();
    for (std::size_t k = 1; k < y.size(); ++k) best = std::min(best, std::max(y[k - 1] - y[0], y.back() - y[k]));
    EXPECT_NEAR(two_fixed_solve(pts, t, t).width, best, 1e-9);
  }
}

TEST(TwoFixed, PresortedInput) {
  std::mt19937_64 rng(33);
  auto pts = random_points(rng, 500);
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.y() < b.y() || (a.y() == b.y() && a.x() < b.x());
  });
  TwoFixedOptions opts;
  opts.presorted = true;
  EXPECT_NEAR(two_fixed_solve(pts, 1.0, 0.0, opts).width, two_fixed_solve(pts, 1.0, 0.0).width, 0.0);
  std::swap(pts[0], pts[10]);
  EXPECT_THROW(two_fixed_solve(pts, 1.0, 0.0, opts), PreconditionError);
}

TEST(TwoFixed, TiedCoordinatesAreDeterministic) {
  PointSet grid;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) grid.emplace_back(i, j);
  const auto a = two_fixed_solve(grid, 0.7, 0.0);
  const auto b = two_fixed_solve(grid, 0.7, 0.0);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_NEAR(a.width, oracle_solve(grid, Variant::two_fixed(0.7, 0.0)).width, 1e-9);
}
