#include "tlc/dyn_width.hpp"

#include <algorithm>

namespace tlc {

namespace {

// Edge (a, b) of a strictly convex CCW hull must be replaced when p sees it
// from outside, or lies on its supporting line beyond the segment.
bool edge_visible(const Point& a, const Point& b, const Point& p) {
  const double o = orient(a, b, p);
  if (o < 0.0) return true;
  if (o > 0.0) return false;
  const Point ab = b - a;
  const double t = (p - a).dot(ab);
  return t < 0.0 || t > ab.squaredNorm();
}

}  // namespace

void IncrementalHull::insert(const Point& p) {
  Entry e;
  const std::size_t h = v_.size();
  if (h < 3) {
    std::vector<Point> pts = v_;
    pts.push_back(p);
    ConvexPolygon next = convex_hull(pts);
    if (next.vertices == v_) {
      e.kind = Entry::Kind::Inside;
    } else {
      e.kind = Entry::Kind::Replace;
      e.removed = std::move(v_);
      v_ = std::move(next.vertices);
    }
    journal_.push_back(std::move(e));
    return;
  }

  std::size_t first = h;
  for (std::size_t i = 0; i < h; ++i)
    if (edge_visible(v_[i], v_[(i + 1) % h], p)) {
      first = i;
      break;
    }
  if (first == h) {
    journal_.push_back(std::move(e));
    return;
  }
  // Walk back to the start of the cyclic visible run, then forward to its end.
  std::size_t a = first, back = 0;
  if (first == 0)
    while (back < h && edge_visible(v_[(a + h - 1) % h], v_[a], p)) {
      a = (a + h - 1) % h;
      ++back;
    }
  std::size_t k = 1;
  while (k < h && edge_visible(v_[(a + k) % h], v_[(a + k + 1) % h], p)) ++k;
  if (back == h || k == h) {
    // Rounding on a nearly flat hull; recompute from scratch.
    std::vector<Point> pts = v_;
    pts.push_back(p);
    e.kind = Entry::Kind::Replace;
    e.removed = std::move(v_);
    v_ = convex_hull(pts).vertices;
    journal_.push_back(std::move(e));
    return;
  }

  e.kind = Entry::Kind::Splice;
  if (a + k > h) {
    e.rotation = a;
    std::rotate(v_.begin(), v_.begin() + static_cast<std::ptrdiff_t>(a), v_.end());
    a = 0;
  }
  // Vertices a+1 .. a+k-1 become interior; p goes right after v_a.
  e.removed_at = a + 1;
  const auto from = v_.begin() + static_cast<std::ptrdiff_t>(a + 1);
  const auto to = from + static_cast<std::ptrdiff_t>(k - 1);
  e.removed.assign(from, to);
  v_.insert(v_.erase(from, to), p);
  journal_.push_back(std::move(e));
}

void IncrementalHull::undo() {
  if (journal_.empty()) throw UsageError("undo without a matching insert");
  Entry& e = journal_.back();
  switch (e.kind) {
    case Entry::Kind::Inside:
      break;
    case Entry::Kind::Replace:
      v_ = std::move(e.removed);
      break;
    case Entry::Kind::Splice: {
      const auto at = v_.begin() + static_cast<std::ptrdiff_t>(e.removed_at);
      v_.insert(v_.erase(at), e.removed.begin(), e.removed.end());
      if (e.rotation != 0)
        std::rotate(v_.begin(), v_.end() - static_cast<std::ptrdiff_t>(e.rotation), v_.end());
      break;
    }
  }
  journal_.pop_back();
}

void IncrementalHull::clear() {
  v_.clear();
  journal_.clear();
}

// ---------------------------------------------------------------- LIFO

LifoWidthStructure::LifoWidthStructure(double omega, double tol) : omega_(omega), tol_(tol) {
  if (!(omega >= 0.0)) throw DomainError("omega must be non-negative");
}

void LifoWidthStructure::insert(const Point& p) { hull_.insert(p); }

void LifoWidthStructure::undo() { hull_.undo(); }

bool LifoWidthStructure::width_leq() const {
  const auto& v = hull_.vertices();
  if (v.size() < 3) return true;
  return hull_min_width(v).width <= omega_ + tol_;
}

bool LifoWidthStructure::constrained_width_leq(double theta1, double theta2) {
  const auto& v = hull_.vertices();
  if (v.empty()) throw DomainError("constrained query on an empty structure");
  if (theta1 == theta2) return width_at(PointSpan(v), theta1).width() <= omega_ + tol_;
  if (narrow_range(theta1, theta2)) return constrained_width(ConvexPolygon{v}, theta1, theta2) <= omega_ + tol_;
  const std::vector<Point> q = sigma_corners(PointSpan(v), theta1, theta2);
  for (const Point& c : q) hull_.insert(c);
  const bool ok = width_leq();
  for (std::size_t k = 0; k < q.size(); ++k) hull_.undo();
  return ok;
}

// ---------------------------------------------------------------- deletions

void DeletionWidthStructure::build(PointSpan points) {
  order_.assign(points.begin(), points.end());
  hull_.clear();
  for (const Point& p : order_) hull_.insert(p);
}

void DeletionWidthStructure::remove(const Point& p) {
  if (!order_.empty() && order_.back() == p) {
    order_.pop_back();
    hull_.undo();
    return;
  }
  const auto it = std::find(order_.begin(), order_.end(), p);
  if (it == order_.end()) throw UsageError("removing a point that is not present");
  order_.erase(it);
  hull_.clear();
  for (const Point& q : order_) hull_.insert(q);
}

double DeletionWidthStructure::width_with(PointSpan extra) {
  for (const Point& q : extra) hull_.insert(q);
  const auto& v = hull_.vertices();
  const double w = v.size() < 3 ? 0.0 : hull_min_width(v).width;
  for (std::size_t k = 0; k < extra.size(); ++k) hull_.undo();
  return w;
}

}  // namespace tlc
