#pragma once

// Planar primitives shared by every solver: hulls, directional and
// constrained widths, common tangents, dominance and sinusoidal width algebra.
//
// Angles: an *orientation* lives in [0, pi) and identifies a line up to
// direction; a *direction* lives in [0, 2*pi). A strip of orientation theta is
// described by offsets along the unit normal n(theta) = (-sin theta, cos theta).

#include "tlc/types.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace tlc {

double normalize_orientation(double theta);
double normalize_direction(double phi);

inline Point normal(double theta) { return {-std::sin(theta), std::cos(theta)}; }

inline Point unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

// Twice the signed area of (o, a, b); positive for a left turn.
// cross(a - o, b - o) with an exact sign: a floating filter, then an exact
// expansion sum when the filter cannot decide.
double orient(const Point& o, const Point& a, const Point& b);

inline Point rotate(const Point& p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x() - s * p.y(), s * p.x() + c * p.y()};
}

inline double angle_of(const Point& v) { return std::atan2(v.y(), v.x()); }

struct Strip {
  double theta = 0.0;
  double c_lo = 0.0;
  double c_hi = 0.0;
  // Marker for the strip of an empty set; its width is 0 and it contains nothing.
  bool empty = false;

  double width() const { return empty ? 0.0 : c_hi - c_lo; }
  bool contains(const Point& p, double tol) const {
    if (empty) return false;
    const double t = p.dot(normal(theta));
    return t >= c_lo - tol && t <= c_hi + tol;
  }
  static Strip empty_strip(double theta = 0.0) {
    Strip s;
    s.theta = theta;
    s.empty = true;
    return s;
  }
};

// Counterclockwise, strictly convex vertex list. Two vertices denote a
// segment, one a point.
struct ConvexPolygon {
  std::vector<Point> vertices;

  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
  const Point& operator[](std::size_t i) const { return vertices[i]; }
};

// amplitude * |sin(theta + phase)| restricted to the direction interval [lo, hi].
struct SinusoidalPiece {
  double amplitude = 0.0;
  double phase = 0.0;
  double lo = 0.0;
  double hi = kTwoPi;

  double value(double theta) const { return amplitude * std::abs(std::sin(theta + phase)); }
};

ConvexPolygon convex_hull(PointSpan points);

Strip width_at(PointSpan points, double theta);
Strip width_at(const ConvexPolygon& hull, double theta);

struct WidthResult {
  double width = 0.0;
  double theta = 0.0;
};

// Rotating calipers; ties resolve to the smallest orientation.
WidthResult min_width(const ConvexPolygon& hull);
WidthResult min_width(PointSpan points);
// Calipers on an already counterclockwise strictly convex vertex list.
WidthResult hull_min_width(PointSpan ccw_hull);

SinusoidalPiece pair_width_function(const Point& p, const Point& q);

// Intersection of all minimum strips of S with orientation in [theta1, theta2].
// theta2 may exceed pi to express a range that wraps; theta2 - theta1 < pi.
ConvexPolygon sigma_interval(PointSpan points, double theta1, double theta2);
ConvexPolygon sigma_interval(const ConvexPolygon& hull, double theta1, double theta2);

// Below this the corners of sigma_interval sit ~width/range away and lose
// precision; callers go through constrained_width instead.
constexpr double kNarrowRange = 1e-6;
inline bool narrow_range(double theta1, double theta2) { return theta2 - theta1 < kNarrowRange; }

// The extra vertices q1, q2 with sigma_interval = conv(S + {q1, q2}). Empty when
// theta1 == theta2; corners that already lie in conv(S) are dropped.
std::vector<Point> sigma_corners(const ConvexPolygon& hull, double theta1, double theta2);
std::vector<Point> sigma_corners(PointSpan ccw_hull, double theta1, double theta2);

// min over theta in [theta1, theta2] of width_theta, evaluated directly from the
// calipers breakpoints.
double constrained_width(const ConvexPolygon& hull, double theta1, double theta2);

// Orientations of the two outer common tangents, theta1 in [0, pi) and
// theta2 in [theta1, theta1 + pi); the orientation range between them is the one
// swept by lines that run from one hull to the other.
struct TangentOrientations {
  double theta1 = 0.0;
  double theta2 = 0.0;
};

TangentOrientations outer_common_tangents(const ConvexPolygon& h1, const ConvexPolygon& h2);
// Same, for hulls already known to be disjoint (no distance check).
TangentOrientations separated_tangents(PointSpan ccw1, PointSpan ccw2);
// Linear-time version for hulls split by a horizontal line, every vertex of
// `lower` strictly below every vertex of `upper`. Symmetric in its arguments.
TangentOrientations y_separated_tangents(PointSpan lower, PointSpan upper);

// Euclidean distance between the two hulls; 0 when they intersect.
double hull_distance(const ConvexPolygon& h1, const ConvexPolygon& h2);

bool polygon_contains(const ConvexPolygon& poly, const Point& p, double tol);
bool polygon_contains(PointSpan ccw_hull, const Point& p, double tol);

// Outward distance of p from poly (0 when inside).
double distance_outside(const ConvexPolygon& poly, const Point& p);

enum class Side { First, Second };

// Which of two hull-disjoint sets dominates the other at their outer common
// tangent orientations. Computed by explicit sigma_interval containment.
Side dominates(PointSpan s1, PointSpan s2);
Side dominates(const ConvexPolygon& h1, const ConvexPolygon& h2);

// Same answer from the widths at the two tangent orientations only: the
// dominating set is at least as wide at both.
Side dominance_by_widths(const ConvexPolygon& h1, const ConvexPolygon& h2,
                         const TangentOrientations& tangents);
Side dominance_by_widths(PointSpan ccw1, PointSpan ccw2, const TangentOrientations& tangents);

struct MinMaxWidth {
  double theta = 0.0;
  double width = 0.0;
};

// Exact minimizer of max(width_theta(A), width_{theta+beta}(B)) over the
// direction interval [lo, hi]. An empty set has width 0; both empty is a
// domain error.
MinMaxWidth min_max_width(PointSpan a, PointSpan b, double beta, double lo = 0.0,
                          double hi = kTwoPi);

// Width of a convex polygon as a function of orientation. Between consecutive
// breakpoints (edge orientations mod pi) the width is <d, n(theta)> for a fixed
// antipodal vector d.
class WidthProfile {
 public:
  WidthProfile() = default;
  explicit WidthProfile(std::span<const Point> ccw_hull) { assign(ccw_hull); }

  void assign(std::span<const Point> ccw_hull);

  std::size_t size() const { return v_.size(); }
  const std::vector<Point>& vertices() const { return v_; }

  // Vertex lying between the two edges whose directions bracket `edge_dir`.
  std::size_t vertex_at_edge_direction(double edge_dir) const;
  // Vertex maximizing <v, unit(angle)>.
  std::size_t extreme(double angle) const { return vertex_at_edge_direction(angle + kHalfPi); }

  // v_max - v_min along n(theta).
  Point antipodal(double theta) const;
  double width(double theta) const;
  Strip strip(double theta) const;

  // Calls f(b) for every breakpoint b in [lo, hi] in ascending order.
  template <class F>
  void for_each_breakpoint(double lo, double hi, F&& f) const {
    if (breaks_.empty() || hi < lo) return;
    double base = std::floor(lo / kPi) * kPi;
    std::size_t idx = lower_index(lo - base);
    while (true) {
      if (idx == breaks_.size()) {
        idx = 0;
        base += kPi;
      }
      const double b = base + breaks_[idx];
      if (b > hi) break;
      f(b);
      ++idx;
    }
  }

  // Calls f(a, b, d) for each sub-interval [a, b] of [lo, hi] on which the
  // antipodal vector d is constant.
  template <class F>
  void for_each_piece(double lo, double hi, F&& f) const {
    double prev = lo;
    for_each_breakpoint(lo, hi, [&](double b) {
      if (b > prev) {
        f(prev, b, antipodal(0.5 * (prev + b)));
        prev = b;
      }
    });
    if (hi > prev || prev == lo) f(prev, hi, antipodal(0.5 * (prev + hi)));
  }

  // min over theta in [lo, hi] of width(theta), with the minimizing theta.
  WidthResult min_over(double lo, double hi) const;

 private:
  std::size_t lower_index(double x) const;

  std::vector<Point> v_;
  std::vector<double> edge_dir_;  // unwrapped ascending, edge_dir_[0] in [0, 2pi)
  std::vector<double> breaks_;    // edge orientations mod pi, ascending
};

}  // namespace tlc
