#include "tlc/geom_core.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "test_util.hpp"

using namespace tlc;
using tlc::test::brute_min_width;
using tlc::test::brute_width;
using tlc::test::random_points;
using tlc::test::uniform;
using tlc::test::uniform_int;

namespace {

// Jarvis march keeping only extreme (non-collinear) vertices.
PointSet gift_wrap(const PointSet& pts) {
  PointSet uniq = pts;
  std::sort(uniq.begin(), uniq.end(), [](const Point& a, const Point& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  if (uniq.size() <= 1) return uniq;
  PointSet out;
  std::size_t cur = 0;
  do {
    out.push_back(uniq[cur]);
    std::size_t next = (cur + 1) % uniq.size();
    for (std::size_t k = 0; k < uniq.size(); ++k) {
      const double o = orient(uniq[cur], uniq[next], uniq[k]);
      if (o < 0.0 || (o == 0.0 && (uniq[k] - uniq[cur]).norm() > (uniq[next] - uniq[cur]).norm()))
        next = k;
    }
    cur = next;
  } while (cur != 0 && out.size() <= uniq.size());
  return out;
}

double segment_dist(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double l2 = ab.squaredNorm();
  const double t = l2 == 0.0 ? 0.0 : std::clamp((p - a).dot(ab) / l2, 0.0, 1.0);
  return (p - a - t * ab).norm();
}

double feature_pair_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
  double d = std::numeric_limits<double>::infinity();
  auto one_way = [&](const ConvexPolygon& p, const ConvexPolygon& q) {
    for (const Point& v : p.vertices)
      for (std::size_t i = 0; i < q.size(); ++i) d = std::min(d, segment_dist(v, q[i], q[(i + 1) % q.size()]));
  };
  one_way(a, b);
  one_way(b, a);
  return d;
}

// Minimum of f over [lo, hi]: a dense grid followed by ternary refinement
// around the best grid cells.
template <class F>
double grid_minimum(F f, double lo, double hi, int samples) {
  std::vector<double> vals(samples + 1);
  const double step = (hi - lo) / samples;
  for (int k = 0; k <= samples; ++k) vals[k] = f(lo + k * step);
  double best = *std::min_element(vals.begin(), vals.end());
  for (int k = 0; k <= samples; ++k) {
    const bool local = (k == 0 || vals[k] <= vals[k - 1]) && (k == samples || vals[k] <= vals[k + 1]);
    if (!local) continue;
    double a = std::max(lo, lo + (k - 1) * step), b = std::min(hi, lo + (k + 1) * step);
    for (int it = 0; it < 200; ++it) {
      const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
      if (f(m1) <= f(m2)) b = m2; else a = m1;
    }
    best = std::min(best, f(0.5 * (a + b)));
  }
  return best;
}

PointSet cloud(std::mt19937_64& rng, std::size_t n, const Point& c, double r) {
  PointSet pts;
  while (pts.size() < n) {
    const Point p(uniform(rng, -r, r), uniform(rng, -r, r));
    if (p.norm() <= r) pts.push_back(c + p);
  }
  return pts;
}

}  // namespace

TEST(Orient, ExactSignOnNearlyCollinearTriples) {
  // coordinates are m * 2^-40 with |m| < 2^50, so the determinant is exact in
  // 128-bit integers
  std::mt19937_64 rng(20);
  const double unit_step = std::ldexp(1.0, -40);
  auto sign128 = [](__int128 v) { return (v > 0) - (v < 0); };
  int zeros = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const std::int64_t ox = uniform_int(rng, -1000, 1000), oy = uniform_int(rng, -1000, 1000);
    const std::int64_t dx = uniform_int(rng, 1, 1 << 20), dy = uniform_int(rng, -(1 << 20), 1 << 20);
    const std::int64_t s = uniform_int(rng, 1, 1 << 20), t = uniform_int(rng, 1, 1 << 20);
    // b is a perturbed multiple of the direction through a
    const std::int64_t ax = ox + s * dx, ay = oy + s * dy;
    const std::int64_t bx = ox + t * dx + uniform_int(rng, -1, 1), by = oy + t * dy + uniform_int(rng, -1, 1);
    const __int128 det = static_cast<__int128>(ax - ox) * (by - oy) - static_cast<__int128>(ay - oy) * (bx - ox);
    const Point o(ox * unit_step, oy * unit_step), a(ax * unit_step, ay * unit_step), b(bx * unit_step, by * unit_step);
    const double got = orient(o, a, b);
    ASSERT_EQ((got > 0) - (got < 0), sign128(det)) << "trial " << trial;
    zeros += det == 0;
  }
  EXPECT_GT(zeros, 100);
}

TEST(ConvexHull, SquareIsCounterclockwise) {
  const PointSet sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto h = convex_hull(sq);
  ASSERT_EQ(h.size(), 4u);
  double area = 0;
  for (std::size_t i = 0; i < 4; ++i) area += cross(h[i], h[(i + 1) % 4]);
  EXPECT_DOUBLE_EQ(area, 2.0);
}

TEST(ConvexHull, CollinearCollapsesToSegment) {
  const PointSet pts{{0, 0}, {1, 0}, {2, 0}};
  const auto h = convex_hull(pts);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0], Point(0, 0));
  EXPECT_EQ(h[1], Point(2, 0));
  EXPECT_TRUE(convex_hull(PointSet{}).empty());
  EXPECT_EQ(convex_hull(PointSet{{3, 3}, {3, 3}}).size(), 1u);
}

TEST(ConvexHull, RejectsNonFinite) {
  const PointSet pts{{0, 0}, {std::nan(""), 1}};
  EXPECT_THROW(convex_hull(pts), InputError);
}

TEST(ConvexHull, MatchesGiftWrapping) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = random_points(rng, 100);
    auto a = convex_hull(pts).vertices;
    auto b = gift_wrap(pts);
    auto key = [](const Point& p, const Point& q) { return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y()); };
    std::sort(a.begin(), a.end(), key);
    std::sort(b.begin(), b.end(), key);
    EXPECT_EQ(a, b);
  }
}

TEST(WidthAt, SquareAndDiagonal) {
  const PointSet sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_NEAR(width_at(sq, 0.0).width(), 1.0, 1e-15);
  EXPECT_NEAR(width_at(sq, kPi / 4).width(), std::sqrt(2.0), 1e-15);
  const PointSet seg{{0, 0}, {3, 4}};
  EXPECT_NEAR(width_at(seg, std::atan2(4.0, 3.0)).width(), 0.0, 1e-12);
  EXPECT_THROW(width_at(PointSet{}, 0.0), DomainError);
}

TEST(WidthAt, PeriodicInOrientation) {
  std::mt19937_64 rng(3);
  const auto pts = random_points(rng, 30);
  for (int k = 0; k < 50; ++k) {
    const double t = uniform(rng, 0, kPi);
    EXPECT_NEAR(width_at(pts, t).width(), width_at(pts, t + kPi).width(), 1e-9);
  }
}

TEST(MinWidth, SmallCases) {
  const PointSet sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto r = min_width(PointSet(sq));
  EXPECT_NEAR(r.width, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(r.theta, 0.0);  // smallest orientation among the two minimizers
  EXPECT_EQ(min_width(PointSet{{1, 2}}).width, 0.0);
  EXPECT_EQ(min_width(PointSet{{1, 2}, {5, -3}}).width, 0.0);
}

TEST(MinWidth, MatchesExhaustiveOrientations) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto pts = random_points(rng, 50);
    const auto r = min_width(PointSet(pts));
    EXPECT_NEAR(r.width, brute_min_width(pts), 1e-9);
    EXPECT_NEAR(brute_width(pts, r.theta), r.width, 1e-9);
    for (int k = 0; k < 20; ++k) EXPECT_LE(r.width, width_at(pts, uniform(rng, 0, kPi)).width() + 1e-12);
  }
}

TEST(MinWidth, TranslationAndRotation) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = random_points(rng, 25);
    const auto base = min_width(PointSet(pts));
    const Point t(uniform(rng, -100, 100), uniform(rng, -100, 100));
    const double delta = uniform(rng, 0, kPi);
    PointSet moved, turned;
    for (const Point& p : pts) {
      moved.push_back(p + t);
      turned.push_back(rotate(p, delta));
    }
    EXPECT_NEAR(min_width(PointSet(moved)).width, base.width, 1e-9);
    const auto r = min_width(PointSet(turned));
    EXPECT_NEAR(r.width, base.width, 1e-9);
    const double shift = normalize_orientation(r.theta - base.theta - delta);
    EXPECT_LT(std::min(shift, kPi - shift), 1e-9);
  }
}

TEST(PairWidth, Examples) {
  const auto s = pair_width_function({0, 0}, {1, 0});
  EXPECT_EQ(s.amplitude, 1.0);
  EXPECT_NEAR(s.value(0.7), std::abs(std::sin(0.7)), 1e-15);
  EXPECT_EQ(pair_width_function({2, 2}, {2, 2}).value(1.3), 0.0);
  EXPECT_NEAR(pair_width_function({0, 0}, {3, 4}).amplitude, 5.0, 1e-15);
}

TEST(PairWidth, MatchesWidthAt) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pq = random_points(rng, 2);
    const auto s = pair_width_function(pq[0], pq[1]);
    for (int k = 0; k < 100; ++k) {
      const double t = uniform(rng, 0, kTwoPi);
      EXPECT_NEAR(s.value(t), width_at(pq, t).width(), 1e-12);
    }
  }
}

TEST(WidthProfileTest, AgreesWithProjection) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pts = random_points(rng, uniform_int(rng, 2, 40));
    const auto hull = convex_hull(pts);
    const WidthProfile prof(hull.vertices);
    for (int k = 0; k < 50; ++k) {
      const double t = uniform(rng, -7, 7);
      EXPECT_NEAR(prof.width(t), brute_width(pts, t), 1e-9);
      const Strip s = prof.strip(t);
      const Strip ref = width_at(pts, t);
      EXPECT_NEAR(s.c_lo, ref.c_lo, 1e-9);
      EXPECT_NEAR(s.c_hi, ref.c_hi, 1e-9);
    }
  }
}

TEST(SigmaInterval, SegmentDegenerates) {
  const PointSet seg{{0, 0}, {1, 0}};
  const auto poly = sigma_interval(seg, 0.0, kHalfPi);
  EXPECT_EQ(poly.size(), 2u);
  EXPECT_EQ(min_width(poly).width, 0.0);
}

TEST(SigmaInterval, TriangleMatchesDenseSampling) {
  const PointSet tri{{0, 0}, {4, 0}, {2, 1}};
  const auto poly = sigma_interval(tri, 0.2, 1.2);
  const double grid = grid_minimum([&](double t) { return brute_width(tri, t); }, 0.2, 1.2, 10000);
  EXPECT_NEAR(min_width(poly).width, grid, 1e-6);
}

TEST(SigmaInterval, RandomSetsMatchDenseSampling) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pts = random_points(rng, 20);
    const double t1 = uniform(rng, 0, kPi);
    const double t2 = t1 + uniform(rng, 0, kPi - 1e-3);
    const auto poly = sigma_interval(pts, t1, t2);
    const double grid = grid_minimum([&](double t) { return brute_width(pts, t); }, t1, t2, 10000);
    EXPECT_NEAR(min_width(poly).width, grid, 1e-6) << "trial " << trial;
    EXPECT_NEAR(constrained_width(convex_hull(pts), t1, t2), grid, 1e-6);
    // every vertex of the result lies inside both bounding strips
    for (const Point& q : poly.vertices) {
      EXPECT_TRUE(width_at(pts, t1).contains(q, 1e-7));
      EXPECT_TRUE(width_at(pts, t2).contains(q, 1e-7));
    }
  }
}

TEST(SigmaInterval, RejectsHalfTurn) {
  const PointSet tri{{0, 0}, {4, 0}, {2, 1}};
  EXPECT_THROW(sigma_interval(tri, 0.0, kPi), DomainError);
  EXPECT_EQ(sigma_interval(tri, 0.5, 0.5).size(), 3u);
}

TEST(Tangents, Examples) {
  auto t = outer_common_tangents(convex_hull(PointSet{{0, 0}}), convex_hull(PointSet{{0, 5}}));
  EXPECT_NEAR(t.theta1, kHalfPi, 1e-15);
  EXPECT_NEAR(t.theta2, kHalfPi, 1e-15);
  t = outer_common_tangents(convex_hull(PointSet{{0, 0}, {1, 0}}), convex_hull(PointSet{{0, 10}, {1, 10}}));
  EXPECT_NEAR(t.theta1, kHalfPi, 1e-15);
  EXPECT_NEAR(t.theta2, kHalfPi, 1e-15);
  EXPECT_THROW(outer_common_tangents(convex_hull(PointSet{{0, 0}, {2, 2}}), convex_hull(PointSet{{0, 2}, {2, 0}})),
               PreconditionError);
}

TEST(Tangents, MatchAllPairsSupportingLines) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const double ang = uniform(rng, 0, kTwoPi);
    const Point c2 = 6.0 * unit(ang);
    const auto h1 = convex_hull(cloud(rng, uniform_int(rng, 1, 12), {0, 0}, 2.5));
    const auto h2 = convex_hull(cloud(rng, uniform_int(rng, 1, 12), c2, 2.5));
    const auto t = outer_common_tangents(h1, h2);
    std::vector<double> oracle;
    for (const Point& a : h1.vertices)
      for (const Point& b : h2.vertices) {
        int pos = 0, neg = 0;
        for (const auto* h : {&h1, &h2})
          for (const Point& v : h->vertices) {
            const double o = orient(a, b, v);
            if (o > 1e-9) ++pos;
            if (o < -1e-9) ++neg;
          }
        if (pos == 0 || neg == 0) oracle.push_back(normalize_orientation(angle_of(b - a)));
      }
    ASSERT_FALSE(oracle.empty());
    auto near = [](double x, double y) {
      const double d = normalize_orientation(x - y);
      return std::min(d, kPi - d) < 1e-9;
    };
    for (double o : oracle) EXPECT_TRUE(near(o, t.theta1) || near(o, t.theta2));
    EXPECT_TRUE(std::any_of(oracle.begin(), oracle.end(), [&](double o) { return near(o, t.theta1); }));
    EXPECT_TRUE(std::any_of(oracle.begin(), oracle.end(), [&](double o) { return near(o, t.theta2); }));
    EXPECT_LE(t.theta1, t.theta2);
    EXPECT_LT(t.theta2 - t.theta1, kPi);
  }
}

TEST(Tangents, YSeparatedAgreesWithGeneric) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const double gap = trial % 3 == 0 ? 1e-6 : uniform(rng, 0.1, 5);
    PointSet lo = cloud(rng, uniform_int(rng, 1, 15), {uniform(rng, -3, 3), -3}, 2.5);
    PointSet hi = cloud(rng, uniform_int(rng, 1, 15), {uniform(rng, -3, 3), 3}, 2.5);
    double ylo = -1e300, yhi = 1e300;
    for (const Point& p : lo) ylo = std::max(ylo, p.y());
    for (const Point& p : hi) yhi = std::min(yhi, p.y());
    for (Point& p : hi) p.y() += ylo - yhi + gap;
    const auto h1 = convex_hull(lo).vertices, h2 = convex_hull(hi).vertices;
    const auto a = y_separated_tangents(h1, h2), b = y_separated_tangents(h2, h1), c = separated_tangents(h1, h2);
    EXPECT_EQ(a.theta1, b.theta1);
    EXPECT_EQ(a.theta2, b.theta2);
    EXPECT_NEAR(a.theta1, c.theta1, 1e-12);
    EXPECT_NEAR(a.theta2, c.theta2, 1e-12);
  }
  EXPECT_THROW(y_separated_tangents(PointSet{{0, 0}, {0, 2}}, PointSet{{1, 1}}), PreconditionError);
}

TEST(HullDistance, Examples) {
  EXPECT_NEAR(hull_distance(convex_hull(PointSet{{0, 0}}), convex_hull(PointSet{{0, 5}})), 5.0, 1e-15);
  const PointSet a{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const PointSet b{{3, 0}, {4, 0}, {4, 1}, {3, 1}};
  EXPECT_NEAR(hull_distance(convex_hull(a), convex_hull(b)), 2.0, 1e-15);
  EXPECT_EQ(hull_distance(convex_hull(a), convex_hull(PointSet{{0.5, 0.5}, {9, 9}})), 0.0);
}

TEST(HullDistance, MatchesFeaturePairs) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h1 = convex_hull(cloud(rng, uniform_int(rng, 1, 10), {0, 0}, 2.0));
    const auto h2 = convex_hull(cloud(rng, uniform_int(rng, 1, 10), uniform(rng, 4.1, 9) * unit(uniform(rng, 0, 7)), 2.0));
    EXPECT_NEAR(hull_distance(h1, h2), feature_pair_distance(h1, h2), 1e-9);
  }
}

TEST(Dominates, SpreadSetBeatsSingleton) {
  std::mt19937_64 rng(15);
  PointSet s1;
  for (int k = 0; k < 20; ++k) s1.emplace_back(uniform(rng, 0, 10), uniform(rng, 0, 1));
  const PointSet s2{{5, 8}};
  EXPECT_EQ(dominates(s1, s2), Side::First);
  EXPECT_EQ(dominates(s2, s1), Side::Second);
  PointSet m1, m2;
  for (const Point& p : s1) m1.emplace_back(p.x(), -p.y());
  for (const Point& p : s2) m2.emplace_back(p.x(), -p.y());
  EXPECT_EQ(dominates(m2, m1), Side::Second);
}

TEST(Dominates, ExplicitContainmentAndWidthShortcutAgree) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const Point c2 = uniform(rng, 5, 9) * unit(uniform(rng, 0, kTwoPi));
    const auto s1 = cloud(rng, uniform_int(rng, 1, 15), {0, 0}, uniform(rng, 0.5, 3));
    const auto s2 = cloud(rng, uniform_int(rng, 1, 15), c2, uniform(rng, 0.5, 2));
    const auto h1 = convex_hull(s1), h2 = convex_hull(s2);
    const Side side = dominates(h1, h2);
    const auto t = outer_common_tangents(h1, h2);
    EXPECT_EQ(side, dominance_by_widths(h1, h2, t)) << "trial " << trial;
    if (t.theta2 - t.theta1 < 1e-9) continue;
    const auto& big = side == Side::First ? h1 : h2;
    const auto& small = side == Side::First ? h2 : h1;
    const auto sb = sigma_interval(big, t.theta1, t.theta2);
    const auto ss = sigma_interval(small, t.theta1, t.theta2);
    for (const Point& q : ss.vertices) EXPECT_LE(distance_outside(sb, q), 1e-7) << "trial " << trial;
  }
}

TEST(MinMaxWidth, Examples) {
  const auto r = min_max_width(PointSet{{0, 0}, {1, 1}}, PointSet{{1, 0}, {0, 1}}, kHalfPi);
  EXPECT_NEAR(r.theta, kPi / 4, 1e-12);
  EXPECT_NEAR(r.width, 0.0, 1e-12);
  EXPECT_EQ(min_max_width(PointSet{{3, 3}}, PointSet{{-1, 2}}, 0.4).width, 0.0);
  EXPECT_EQ(min_max_width(PointSet{}, PointSet{{0, 0}, {1, 0}}, 0.4).width, 0.0);
  EXPECT_THROW(min_max_width(PointSet{}, PointSet{}, 0.0), DomainError);
}

TEST(MinMaxWidth, MatchesDenseGrid) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_points(rng, uniform_int(rng, 1, 8));
    const auto b = random_points(rng, uniform_int(rng, 1, 8));
    const double beta = uniform(rng, 0, kHalfPi);
    const auto r = min_max_width(a, b, beta);
    auto f = [&](double t) { return std::max(brute_width(a, t), brute_width(b, t + beta)); };
    EXPECT_NEAR(r.width, grid_minimum(f, 0.0, kPi, 100000), 1e-7) << "trial " << trial;
    EXPECT_NEAR(f(r.theta), r.width, 1e-9);
  }
}

TEST(WidthProfile, NearlyCollinearHullVertices) {
  // rotated grids keep vertices that are convex only by a rounding margin
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const double phi = uniform(rng, 0, kPi);
    PointSet pts;
    for (int k = 0; k < 30; ++k) pts.push_back(rotate(Point(uniform_int(rng, 0, 6), uniform_int(rng, 0, 6)), phi));
    const ConvexPolygon hull = convex_hull(pts);
    const double ref = tlc::test::brute_min_width(pts);
    EXPECT_NEAR(min_width(hull).width, ref, 1e-9);
    const WidthProfile prof(hull.vertices);
    EXPECT_NEAR(prof.min_over(0.0, kPi).width, ref, 1e-9);
    for (int s = 0; s < 20; ++s) {
      const double t = uniform(rng, 0, kPi);
      EXPECT_NEAR(prof.width(t), tlc::test::brute_width(pts, t), 1e-9);
    }
  }
}
