#include "tlc/geom_core.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>

namespace tlc {

// ---------------------------------------------------------------- predicates

namespace {

// Error-free transforms: a + b = s + e and a * b = p + e exactly.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bv = s - a;
  e = (a - (s - bv)) + (b - bv);
}

inline void two_product(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

double orient_exact(const Point& o, const Point& a, const Point& b) {
  // ax*by - ax*oy - ox*by - ay*bx + ay*ox + oy*bx, expanded so no rounding
  // happens before the products.
  const double terms[6][2] = {{a.x(), b.y()},  {-a.x(), o.y()}, {-o.x(), b.y()},
                              {-a.y(), b.x()}, {a.y(), o.x()},  {o.y(), b.x()}};
  std::array<double, 12> e{};
  std::size_t len = 0;
  auto grow = [&](double x) {
    double q = x;
    std::size_t k = 0;
    for (std::size_t i = 0; i < len; ++i) {
      double hi, lo;
      two_sum(q, e[i], hi, lo);
      q = hi;
      if (lo != 0.0) e[k++] = lo;
    }
    e[k++] = q;
    len = k;
  };
  for (const auto& t : terms) {
    double p, err;
    two_product(t[0], t[1], p, err);
    grow(err);
    grow(p);
  }
  for (std::size_t i = len; i-- > 0;)
    if (e[i] != 0.0) return e[i];
  return 0.0;
}

}  // namespace

double orient(const Point& o, const Point& a, const Point& b) {
  const double left = (a.x() - o.x()) * (b.y() - o.y());
  const double right = (a.y() - o.y()) * (b.x() - o.x());
  const double det = left - right;
  const double bound = 3.3306690738754716e-16 * (std::abs(left) + std::abs(right));
  if (det > bound || -det > bound) return det;
  return orient_exact(o, a, b);
}

namespace {

double eps_from_env() {
  const char* raw = std::getenv("TLC_EPS");
  if (raw == nullptr || *raw == '\0') return 1e-9;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || !std::isfinite(v) || v <= 0.0) return 1e-9;
  return v;
}

double& eps_storage() {
  static double value = eps_from_env();
  return value;
}

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;
  return r;
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

// Monotone chain over points carrying an integer tag; the tag follows the point.
template <class Item, class GetPoint>
std::vector<Item> monotone_chain(std::vector<Item> items, GetPoint pt) {
  std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
    const Point& p = pt(a);
    const Point& q = pt(b);
    return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
  });
  items.erase(std::unique(items.begin(), items.end(),
                          [&](const Item& a, const Item& b) { return pt(a) == pt(b); }),
              items.end());
  const std::size_t n = items.size();
  if (n <= 2) return items;
  std::vector<Item> out(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && orient(pt(out[k - 2]), pt(out[k - 1]), pt(items[i])) <= 0.0) --k;
    out[k++] = items[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(pt(out[k - 2]), pt(out[k - 1]), pt(items[i])) <= 0.0) --k;
    out[k++] = items[i];
  }
  out.resize(k - 1);
  return out;
}

}  // namespace

double eps() { return eps_storage(); }

void set_eps(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("eps must be positive and finite");
  eps_storage() = value;
}

double scale_of(PointSpan points) {
  if (points.empty()) return 1.0;
  double xmin = points[0].x(), xmax = xmin, ymin = points[0].y(), ymax = ymin;
  for (const Point& p : points) {
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  }
  return std::max(1.0, std::hypot(xmax - xmin, ymax - ymin));
}

void validate_points(PointSpan points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    if (!std::isfinite(p.x()) || !std::isfinite(p.y()))
      throw InputError("point " + std::to_string(i) + " has a non-finite coordinate");
    if (std::abs(p.x()) > kCoordinateBound || std::abs(p.y()) > kCoordinateBound)
      throw InputError("point " + std::to_string(i) + " exceeds the coordinate bound 1e6");
  }
}

double normalize_orientation(double theta) { return wrap(theta, kPi); }
double normalize_direction(double phi) { return wrap(phi, kTwoPi); }

ConvexPolygon convex_hull(PointSpan points) {
  for (const Point& p : points)
    if (!std::isfinite(p.x()) || !std::isfinite(p.y())) throw InputError("non-finite coordinate");
  ConvexPolygon hull;
  hull.vertices = monotone_chain(std::vector<Point>(points.begin(), points.end()),
                                 [](const Point& p) -> const Point& { return p; });
  return hull;
}

Strip width_at(PointSpan points, double theta) {
  if (points.empty()) throw DomainError("width_at: empty point set");
  Strip s;
  s.theta = normalize_orientation(theta);
  const Point n = normal(s.theta);
  s.c_lo = std::numeric_limits<double>::infinity();
  s.c_hi = -s.c_lo;
  for (const Point& p : points) {
    const double t = p.dot(n);
    s.c_lo = std::min(s.c_lo, t);
    s.c_hi = std::max(s.c_hi, t);
  }
  return s;
}

Strip width_at(const ConvexPolygon& hull, double theta) { return width_at(PointSpan(hull.vertices), theta); }

WidthResult min_width(const ConvexPolygon& hull) { return hull_min_width(hull.vertices); }

WidthResult hull_min_width(PointSpan v) {
  const std::size_t h = v.size();
  if (h == 0) throw DomainError("min_width: empty point set");
  if (h == 1) return {0.0, 0.0};
  if (h == 2) return {0.0, normalize_orientation(angle_of(v[1] - v[0]))};
  WidthResult best{std::numeric_limits<double>::infinity(), 0.0};
  // Seed the antipode by a scan: near-collinear neighbours of edge 0 round to
  // non-increasing heights and would stall the calipers there.
  std::size_t j = 2;
  {
    const Point e = v[1] - v[0];
    for (std::size_t k = 3; k < h; ++k)
      if (cross(e, v[k] - v[0]) > cross(e, v[j] - v[0])) j = k;
  }
  for (std::size_t i = 0; i < h; ++i) {
    const Point& a = v[i];
    const Point e = v[(i + 1) % h] - a;
    if (j == i || j == (i + 1) % h) j = (i + 2) % h;
    while (cross(e, v[(j + 1) % h] - a) > cross(e, v[j] - a)) j = (j + 1) % h;
    const double w = cross(e, v[j] - a) / e.norm();
    const double tie = 1e-12 * std::max(1.0, w);
    if (i > 0 && w > best.width + tie) continue;
    const double theta = normalize_orientation(angle_of(e));
    if (i == 0 || w < best.width - tie || theta < best.theta) best = {w, theta};
  }
  return best;
}

WidthResult min_width(PointSpan points) {
  if (points.empty()) throw DomainError("min_width: empty point set");
  return min_width(convex_hull(points));
}

SinusoidalPiece pair_width_function(const Point& p, const Point& q) {
  SinusoidalPiece s;
  const Point d = q - p;
  s.amplitude = d.norm();
  s.phase = s.amplitude == 0.0 ? 0.0 : -normalize_orientation(angle_of(d));
  return s;
}

// ---------------------------------------------------------------- profile

void WidthProfile::assign(std::span<const Point> ccw_hull) {
  v_.assign(ccw_hull.begin(), ccw_hull.end());
  edge_dir_.clear();
  breaks_.clear();
  const std::size_t h = v_.size();
  if (h < 2) return;
  edge_dir_.resize(h);
  edge_dir_[0] = normalize_direction(angle_of(v_[1] - v_[0]));
  if (h == 2) {
    edge_dir_[1] = edge_dir_[0] + kPi;
  } else {
    for (std::size_t k = 1; k < h; ++k) {
      const double a = angle_of(v_[(k + 1) % h] - v_[k]);
      // Turns on a convex hull are below pi; a larger one is a rounded tiny
      // negative turn between nearly collinear edges.
      const double turn = normalize_direction(a - edge_dir_[k - 1]);
      edge_dir_[k] = edge_dir_[k - 1] + (turn > kPi ? 0.0 : turn);
    }
  }
  breaks_.reserve(h);
  for (double d : edge_dir_) breaks_.push_back(normalize_orientation(d));
  std::sort(breaks_.begin(), breaks_.end());
  breaks_.erase(std::unique(breaks_.begin(), breaks_.end()), breaks_.end());
}

std::size_t WidthProfile::lower_index(double x) const {
  return static_cast<std::size_t>(std::lower_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin());
}

std::size_t WidthProfile::vertex_at_edge_direction(double edge_dir) const {
  if (edge_dir_.empty()) return 0;
  const double x = edge_dir_[0] + normalize_direction(edge_dir - edge_dir_[0]);
  const auto k = static_cast<std::size_t>(std::lower_bound(edge_dir_.begin(), edge_dir_.end(), x) -
                                          edge_dir_.begin());
  return k == edge_dir_.size() ? 0 : k;
}

Point WidthProfile::antipodal(double theta) const {
  if (v_.size() < 2) return Point::Zero();
  return v_[vertex_at_edge_direction(theta + kPi)] - v_[vertex_at_edge_direction(theta)];
}

double WidthProfile::width(double theta) const {
  return std::max(0.0, antipodal(theta).dot(normal(theta)));
}

Strip WidthProfile::strip(double theta) const {
  const double t = normalize_orientation(theta);
  if (v_.empty()) return Strip::empty_strip(t);
  const Point n = normal(t);
  Strip s;
  s.theta = t;
  if (v_.size() == 1) {
    s.c_lo = s.c_hi = v_[0].dot(n);
    return s;
  }
  s.c_lo = v_[vertex_at_edge_direction(t)].dot(n);
  s.c_hi = v_[vertex_at_edge_direction(t + kPi)].dot(n);
  if (s.c_hi < s.c_lo) s.c_hi = s.c_lo;
  return s;
}

WidthResult WidthProfile::min_over(double lo, double hi) const {
  WidthResult best{width(lo), lo};
  auto consider = [&](double t) {
    const double w = width(t);
    if (w < best.width) best = {w, t};
  };
  for_each_breakpoint(lo, hi, [&](double b) {
    if (b > lo) consider(b);
  });
  if (hi > lo) consider(hi);
  return best;
}

// ---------------------------------------------------------------- sigma

namespace {

struct Slab {
  Point n;
  double lo, hi;
};

Slab slab_of(PointSpan pts, double theta) {
  Slab s{normal(theta), std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point& p : pts) {
    const double t = p.dot(s.n);
    s.lo = std::min(s.lo, t);
    s.hi = std::max(s.hi, t);
  }
  return s;
}

Point solve_corner(const Slab& a, double ca, const Slab& b, double cb) {
  const double det = a.n.x() * b.n.y() - a.n.y() * b.n.x();
  return {(ca * b.n.y() - cb * a.n.y()) / det, (a.n.x() * cb - b.n.x() * ca) / det};
}

void check_range(double theta1, double theta2) {
  if (!std::isfinite(theta1) || !std::isfinite(theta2)) throw DomainError("non-finite orientation");
  if (theta2 < theta1) throw DomainError("orientation range must satisfy theta1 <= theta2");
  if (theta2 - theta1 >= kPi) throw DomainError("orientation range must be shorter than pi");
}

}  // namespace

std::vector<Point> sigma_corners(const ConvexPolygon& hull, double theta1, double theta2) {
  return sigma_corners(PointSpan(hull.vertices), theta1, theta2);
}

std::vector<Point> sigma_corners(PointSpan hull, double theta1, double theta2) {
  check_range(theta1, theta2);
  std::vector<Point> out;
  if (theta1 == theta2 || hull.size() < 2) return out;
  const Slab s1 = slab_of(hull, theta1);
  const Slab s2 = slab_of(hull, theta2);
  // The corners whose two outward normals (-n1, +n2 and +n1, -n2) do not
  // bracket any intermediate normal survive; the other two are cut away.
  const std::array<Point, 2> chosen = {solve_corner(s1, s1.lo, s2, s2.hi), solve_corner(s1, s1.hi, s2, s2.lo)};
  const double tol = abs_tol(hull);
  for (const Point& q : chosen)
    if (!polygon_contains(hull, q, tol)) out.push_back(q);
  return out;
}

ConvexPolygon sigma_interval(const ConvexPolygon& hull, double theta1, double theta2) {
  if (hull.empty()) throw DomainError("sigma_interval: empty point set");
  std::vector<Point> pts = hull.vertices;
  for (const Point& q : sigma_corners(hull, theta1, theta2)) pts.push_back(q);
  return convex_hull(pts);
}

ConvexPolygon sigma_interval(PointSpan points, double theta1, double theta2) {
  return sigma_interval(convex_hull(points), theta1, theta2);
}

double constrained_width(const ConvexPolygon& hull, double theta1, double theta2) {
  if (hull.empty()) throw DomainError("constrained_width: empty point set");
  if (theta2 < theta1) throw DomainError("orientation range must satisfy theta1 <= theta2");
  return WidthProfile(hull.vertices).min_over(theta1, theta2).width;
}

// ---------------------------------------------------------------- containment, distance

bool polygon_contains(const ConvexPolygon& poly, const Point& p, double tol) {
  return polygon_contains(PointSpan(poly.vertices), p, tol);
}

bool polygon_contains(PointSpan v, const Point& p, double tol) {
  const std::size_t h = v.size();
  if (h == 0) return false;
  if (h == 1) return (p - v[0]).norm() <= tol;
  if (h == 2) return segment_distance(p, v[0], v[1]) <= tol;
  for (std::size_t i = 0; i < h; ++i) {
    const Point& a = v[i];
    const Point e = v[(i + 1) % h] - a;
    if (cross(e, p - a) < -tol * e.norm()) return false;
  }
  return true;
}

double distance_outside(const ConvexPolygon& poly, const Point& p) {
  const auto& v = poly.vertices;
  const std::size_t h = v.size();
  if (h == 0) return std::numeric_limits<double>::infinity();
  if (h == 1) return (p - v[0]).norm();
  if (h == 2) return segment_distance(p, v[0], v[1]);
  bool inside = true;
  for (std::size_t i = 0; i < h && inside; ++i)
    if (orient(v[i], v[(i + 1) % h], p) < 0.0) inside = false;
  if (inside) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < h; ++i) d = std::min(d, segment_distance(p, v[i], v[(i + 1) % h]));
  return d;
}

double hull_distance(const ConvexPolygon& h1, const ConvexPolygon& h2) {
  if (h1.empty() || h2.empty()) return std::numeric_limits<double>::infinity();
  std::vector<Point> diff;
  diff.reserve(h1.size() * h2.size());
  for (const Point& a : h1.vertices)
    for (const Point& b : h2.vertices) diff.push_back(a - b);
  return distance_outside(convex_hull(diff), Point::Zero());
}

// ---------------------------------------------------------------- tangents, dominance

TangentOrientations outer_common_tangents(const ConvexPolygon& h1, const ConvexPolygon& h2) {
  if (h1.empty() || h2.empty()) throw DomainError("outer_common_tangents: empty hull");
  if (hull_distance(h1, h2) <= 0.0) throw PreconditionError("outer_common_tangents: hulls intersect");
  return separated_tangents(h1.vertices, h2.vertices);
}

TangentOrientations separated_tangents(PointSpan h1, PointSpan h2) {
  using Tagged = std::pair<Point, int>;
  std::vector<Tagged> items;
  items.reserve(h1.size() + h2.size());
  for (const Point& p : h1) items.emplace_back(p, 0);
  for (const Point& p : h2) items.emplace_back(p, 1);
  const auto u = monotone_chain(std::move(items), [](const Tagged& t) -> const Point& { return t.first; });
  std::vector<double> dirs;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const Tagged& a = u[k];
    const Tagged& b = u[(k + 1) % u.size()];
    if (a.second == b.second) continue;
    const Point d = a.second == 0 ? Point(b.first - a.first) : Point(a.first - b.first);
    dirs.push_back(normalize_direction(angle_of(d)));
  }
  if (dirs.size() != 2) throw PreconditionError("outer_common_tangents: hulls are not separable");
  double start = dirs[0];
  double len = normalize_direction(dirs[1] - dirs[0]);
  if (len > kPi) {
    start = dirs[1];
    len = kTwoPi - len;
  }
  TangentOrientations t;
  t.theta1 = normalize_orientation(start);
  t.theta2 = t.theta1 + std::min(len, std::nextafter(kPi, 0.0));
  return t;
}

TangentOrientations y_separated_tangents(PointSpan lower, PointSpan upper) {
  const std::size_t h1 = lower.size(), h2 = upper.size();
  if (h1 == 0 || h2 == 0) throw DomainError("y_separated_tangents: empty hull");
  std::size_t top = 0, bottom = 0;
  for (std::size_t k = 1; k < h1; ++k)
    if (lower[k].y() > lower[top].y()) top = k;
  for (std::size_t k = 1; k < h2; ++k)
    if (upper[k].y() < upper[bottom].y()) bottom = k;
  if (!(lower[top].y() < upper[bottom].y())) {
    const auto by_y = [](const Point& p, const Point& q) { return p.y() < q.y(); };
    if (std::max_element(upper.begin(), upper.end(), by_y)->y() < std::min_element(lower.begin(), lower.end(), by_y)->y())
      return y_separated_tangents(upper, lower);
    throw PreconditionError("y_separated_tangents: hulls overlap in y");
  }

  // Merge-hull bridge walk turned on its side. side = +1 finds the bridge
  // with everything right of lower -> upper, side = -1 the other one.
  auto bridge = [&](int side) {
    std::size_t a = top, b = bottom;
    const std::size_t a_step = side > 0 ? 1 : h1 - 1, b_step = side > 0 ? h2 - 1 : 1;
    for (bool moved = true; moved;) {
      moved = false;
      while (h1 > 1 && side * orient(lower[a], upper[b], lower[(a + a_step) % h1]) > 0.0) {
        a = (a + a_step) % h1;
        moved = true;
      }
      while (h2 > 1 && side * orient(lower[a], upper[b], upper[(b + b_step) % h2]) > 0.0) {
        b = (b + b_step) % h2;
        moved = true;
      }
    }
    return normalize_orientation(angle_of(upper[b] - lower[a]));
  };
  const double u = bridge(1), v = bridge(-1);
  return {std::min(u, v), std::max(u, v)};
}

Side dominance_by_widths(const ConvexPolygon& h1, const ConvexPolygon& h2, const TangentOrientations& t) {
  return dominance_by_widths(PointSpan(h1.vertices), PointSpan(h2.vertices), t);
}

Side dominance_by_widths(PointSpan h1, PointSpan h2, const TangentOrientations& t) {
  const double a = width_at(h1, t.theta1).width() - width_at(h2, t.theta1).width();
  const double b = width_at(h1, t.theta2).width() - width_at(h2, t.theta2).width();
  return a + b >= 0.0 ? Side::First : Side::Second;
}

Side dominates(const ConvexPolygon& h1, const ConvexPolygon& h2) {
  const TangentOrientations t = outer_common_tangents(h1, h2);
  if (t.theta2 - t.theta1 < 1e-9) return dominance_by_widths(h1, h2, t);
  const ConvexPolygon s1 = sigma_interval(h1, t.theta1, t.theta2);
  const ConvexPolygon s2 = sigma_interval(h2, t.theta1, t.theta2);
  double v21 = 0.0, v12 = 0.0;
  for (const Point& p : s2.vertices) v21 = std::max(v21, distance_outside(s1, p));
  for (const Point& p : s1.vertices) v12 = std::max(v12, distance_outside(s2, p));
  return v21 <= v12 ? Side::First : Side::Second;
}

Side dominates(PointSpan s1, PointSpan s2) { return dominates(convex_hull(s1), convex_hull(s2)); }

// ---------------------------------------------------------------- min-max width

MinMaxWidth min_max_width(PointSpan a, PointSpan b, double beta, double lo, double hi) {
  if (a.empty() && b.empty()) throw DomainError("min_max_width: both sets empty");
  if (!(hi >= lo) || hi - lo > kTwoPi + 1e-12) throw DomainError("min_max_width: invalid direction range");
  hi = std::min(hi, lo + kPi);
  const ConvexPolygon ha = convex_hull(a), hb = convex_hull(b);
  const WidthProfile pa(ha.vertices), pb(hb.vertices);

  std::vector<double> cuts{lo, hi};
  pa.for_each_breakpoint(lo, hi, [&](double t) { cuts.push_back(t); });
  pb.for_each_breakpoint(lo + beta, hi + beta, [&](double t) { cuts.push_back(t - beta); });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  while (!cuts.empty() && cuts.back() > hi) cuts.pop_back();

  MinMaxWidth best{lo, std::numeric_limits<double>::infinity()};
  auto piece = [&](double x, double y) {
    const double mid = 0.5 * (x + y);
    const Point da = pa.antipodal(mid);
    const Point db = rotate(pb.antipodal(mid + beta), -beta);
    auto f = [&](double t) {
      const Point n = normal(t);
      return std::max({0.0, da.dot(n), db.dot(n)});
    };
    auto consider = [&](double t) {
      const double w = f(t);
      if (w < best.width || (w == best.width && t < best.theta)) best = {t, w};
    };
    consider(x);
    consider(y);
    const Point g = da - db;
    if (g.squaredNorm() == 0.0) return;
    for (double c = x + normalize_orientation(angle_of(g) - x); c <= y; c += kPi) consider(c);
  };
  if (cuts.size() == 1) {
    piece(cuts[0], cuts[0]);
  } else {
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) piece(cuts[k], cuts[k + 1]);
  }
  best.theta = normalize_direction(best.theta);
  return best;
}

}  // namespace tlc
