#pragma once

#include "tlc/geom_core.hpp"

#include <random>
#include <vector>

namespace tlc::test {

inline PointSet random_points(std::mt19937_64& rng, std::size_t n, double lo = -10.0, double hi = 10.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  PointSet pts(n);
  for (auto& p : pts) p = Point(u(rng), u(rng));
  return pts;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Brute-force width of a point set at orientation theta.
inline double brute_width(const PointSet& pts, double theta) {
  if (pts.empty()) return 0.0;
  const Point n = normal(theta);
  double lo = pts[0].dot(n), hi = lo;
  for (const Point& p : pts) {
    lo = std::min(lo, p.dot(n));
    hi = std::max(hi, p.dot(n));
  }
  return hi - lo;
}

// Every orientation spanned by a pair of points; the minimum width is attained at one.
inline double brute_min_width(const PointSet& pts) {
  if (pts.size() <= 2) return 0.0;
  double best = brute_width(pts, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) continue;
      best = std::min(best, brute_width(pts, angle_of(pts[j] - pts[i])));
    }
  return best;
}

}  // namespace tlc::test
