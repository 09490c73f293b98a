#include "tlc/one_fixed.hpp"

#include "tlc/dyn_width.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

namespace tlc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using Pairs = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

std::int64_t elapsed_ns(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - since).count();
}

// Points rotated so that phi becomes 0, sorted by (y, x).
struct Frame {
  std::vector<Point> pts;
  std::vector<double> y;
  std::vector<std::size_t> order;  // frame index -> input index
  double tol = 0.0;
};

Frame make_frame(PointSpan points, double phi) {
  Frame f;
  const std::size_t n = points.size();
  std::vector<Point> rot(n);
  for (std::size_t k = 0; k < n; ++k) rot[k] = rotate(points[k], -phi);
  f.order.resize(n);
  std::iota(f.order.begin(), f.order.end(), 0);
  std::sort(f.order.begin(), f.order.end(), [&](std::size_t a, std::size_t b) {
    return rot[a].y() < rot[b].y() || (rot[a].y() == rot[b].y() && rot[a].x() < rot[b].x());
  });
  f.pts.resize(n);
  f.y.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    f.pts[k] = rot[f.order[k]];
    f.y[k] = f.pts[k].y();
  }
  f.tol = abs_tol(points);
  return f;
}

double hull_width(const std::vector<Point>& hull) { return hull.size() < 3 ? 0.0 : hull_min_width(hull).width; }

// One side of the sweep: a LIFO hull plus, when it only shrinks during a
// solve pass, a deletion structure over the same points. The width is
// recomputed lazily.
struct SweepSide {
  LifoWidthStructure lifo;
  std::optional<DeletionWidthStructure> del;
  std::size_t count = 0;

  explicit SweepSide(double omega, double tol) : lifo(omega, tol) {}

  void insert(const Point& p) {
    lifo.insert(p);
    ++count;
    dirty_ = true;
  }
  void remove(const Point& p) {
    lifo.undo();
    if (del) del->remove(p);
    --count;
    dirty_ = true;
  }
  double width() {
    if (dirty_) {
      width_ = hull_width(lifo.hull());
      dirty_ = false;
    }
    return width_;
  }

 private:
  double width_ = 0.0;
  bool dirty_ = false;
};

enum class Dominant { Lower, Upper };

struct PassSpec {
  Dominant dominant = Dominant::Lower;
  bool upward = true;
  double omega = 0.0;       // structure parameter (omega for decide, w1 for solve)
  double gap_bound = 0.0;   // expected lower bound on the hull gap
  bool solve = false;
};

struct PassOutcome {
  bool found = false;
  std::size_t pair = 0;
  double value = kInf;
};

// Runs one sweep pass over X handling the pairs where `spec.dominant`
// dominates (or the other side is empty). In decide mode stops at the first
// feasible pair; in solve mode returns the smallest width below spec.omega.
PassOutcome run_pass(const Frame& f, const Pairs& X, const PassSpec& spec, const OneFixedOptions& opts,
                     Counters& counters) {
  const std::size_t n = f.pts.size();
  const double tol = spec.solve ? 0.0 : f.tol;
  SweepSide lower(spec.omega, tol), upper(spec.omega, tol);
  const std::size_t start = spec.upward ? 0 : X.size() - 1;
  std::size_t i = X[start].first, j = X[start].second;
  for (std::size_t k = 0; k < i; ++k) lower.insert(f.pts[k]);
  for (std::size_t k = n; k-- > j;) upper.insert(f.pts[k]);
  SweepSide& dom = spec.dominant == Dominant::Lower ? lower : upper;
  SweepSide& oth = spec.dominant == Dominant::Lower ? upper : lower;
  // Upward the lower side only grows and the upper side only shrinks, and the
  // other way round downward. Width is monotone under both, so a growing side
  // over the limit ends the pass and a shrinking side under it stays there.
  SweepSide& growing = spec.upward ? lower : upper;
  SweepSide& shrinking = spec.upward ? upper : lower;
  bool shrinking_fits = false;
  if (spec.solve) {
    std::vector<Point> seq;
    if (spec.dominant == Dominant::Lower) {
      seq.assign(f.pts.begin(), f.pts.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      for (std::size_t k = n; k-- > j;) seq.push_back(f.pts[k]);
    }
    dom.del.emplace(seq);
  }

  PassOutcome out;
  const double limit = spec.solve ? spec.omega : spec.omega + tol;
  auto over = [&](double w) { return spec.solve ? w >= limit : w > limit; };
  for (std::size_t step = 0; step < X.size(); ++step) {
    const std::size_t idx = spec.upward ? step : X.size() - 1 - step;
    const auto [ni, nj] = X[idx];
    while (i < ni) lower.insert(f.pts[i++]);
    while (i > ni) lower.remove(f.pts[--i]);
    while (j < nj) upper.remove(f.pts[j++]);
    while (j > nj) upper.insert(f.pts[--j]);
    ++counters.pairs;

    if (over(growing.width())) break;
    if (!shrinking_fits) {
      if (over(shrinking.width())) continue;
      shrinking_fits = true;
    }
    if (dom.count == 0) {
      if (oth.count == 0 && !spec.solve) return {true, idx, 0.0};
      continue;
    }
    const double middle = j > i ? f.y[j - 1] - f.y[i] : 0.0;

    if (oth.count == 0) {
      const double v = std::max(middle, dom.width());
      if (!spec.solve) return {true, idx, v};
      if (v < out.value) out = {true, idx, v};
      continue;
    }
    const auto& dh = dom.lifo.hull();
    const auto& oh = oth.lifo.hull();
    const TangentOrientations t = y_separated_tangents(lower.lifo.hull(), upper.lifo.hull());
    if (dominance_by_widths(dh, oh, t) != Side::First) continue;
    if (opts.check_invariants) {
      const double d = hull_distance(ConvexPolygon{dh}, ConvexPolygon{oh});
      if (!(d > spec.gap_bound)) throw InvariantError("one_fixed: hull gap not larger than the sweep width");
    }
    ++counters.queries;
    if (!dom.lifo.constrained_width_leq(t.theta1, t.theta2)) continue;
    if (!spec.solve) return {true, idx, 0.0};
    double v;
    if (narrow_range(t.theta1, t.theta2)) {
      v = constrained_width(ConvexPolygon{dh}, t.theta1, t.theta2);
    } else {
      const std::vector<Point> q = sigma_corners(PointSpan(dh), t.theta1, t.theta2);
      v = q.empty() ? constrained_width(ConvexPolygon{dh}, t.theta1, t.theta2) : dom.del->width_with(q);
    }
    v = std::max(middle, v);
    if (v < spec.omega && v < out.value) out = {true, idx, v};
  }
  return out;
}

// Partition from pair (i, j): frame indices i..j-1 go to the phi strip.
Solution solution_from_pair(PointSpan points, double phi, const Frame& f, std::size_t i, std::size_t j) {
  Solution sol;
  const std::size_t n = f.pts.size();
  sol.assignment.assign(n, 1);
  PointSet rest;
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= i && k < j) sol.assignment[f.order[k]] = 0;
    else rest.push_back(f.pts[k]);
  }
  const double theta = rest.empty() ? 0.0 : min_width(rest).theta;
  sol.strips = strips_for_partition(points, sol.assignment, phi, theta + phi);
  sol.width = sol.strips.width();
  return sol;
}

DecisionOutcome decide_on_frame(PointSpan points, double phi, const Frame& f, double omega,
                                const OneFixedOptions& opts, Counters& counters) {
  ++counters.decision_calls;
  DecisionOutcome out;
  if (f.pts.empty()) {
    out.feasible = true;
    out.witness = {Strip::empty_strip(normalize_orientation(phi)), Strip::empty_strip()};
    return out;
  }
  const Pairs X = sweep_pairs(f.y, omega);
  if (opts.check_invariants && X.size() > 2 * f.pts.size() + 1)
    throw InvariantError("one_fixed: more than 2n + 1 sweep pairs");
  PassSpec spec;
  spec.omega = omega;
  spec.gap_bound = omega;
  PassOutcome r = run_pass(f, X, spec, opts, counters);
  if (!r.found) {
    spec.dominant = Dominant::Upper;
    spec.upward = false;
    r = run_pass(f, X, spec, opts, counters);
  }
  if (r.found) {
    const auto [i, j] = X[r.pair];
    Solution s = solution_from_pair(points, phi, f, i, j);
    out.feasible = true;
    out.witness = s.strips;
    out.assignment = std::move(s.assignment);
  }
  out.counters = counters;
  return out;
}

BracketInterval bracket_on_frame(PointSpan points, double phi, const Frame& f, Counters& counters) {
  const std::size_t n = f.pts.size();
  if (n < 2) throw DomainError("bracket_w1: needs at least two points");
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t lo = 1, hi = total;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    const double v = kth_pairwise_difference(f.y, mid);
    if (decide_on_frame(points, phi, f, v, {}, counters).feasible) hi = mid;
    else lo = mid + 1;
  }
  BracketInterval b;
  b.w1 = kth_pairwise_difference(f.y, lo);
  const std::uint64_t below = count_pairwise_below(f.y, b.w1);
  b.w0 = below == 0 ? -kInf : kth_pairwise_difference(f.y, below);
  return b;
}

}  // namespace

// ---------------------------------------------------------------- selection

std::uint64_t count_pairwise_below(std::span<const double> y, double v) {
  const std::size_t n = y.size();
  std::uint64_t c = 0;
  std::size_t b = 0;
  for (std::size_t a = 0; a < n; ++a) {
    b = std::max(b, a + 1);
    while (b < n && y[b] - y[a] < v) ++b;
    c += b - a - 1;
  }
  return c;
}

double kth_pairwise_difference(std::span<const double> y, std::uint64_t k) {
  const std::size_t n = y.size();
  const std::uint64_t total = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (k < 1 || k > total) throw DomainError("kth_pairwise_difference: rank out of range");
  // Candidates of row a are y[b] - y[a] for b in [lo[a], hi[a]).
  std::vector<std::size_t> lo(n), hi(n, n), lt(n), le(n);
  for (std::size_t a = 0; a < n; ++a) lo[a] = a + 1;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  while (true) {
    std::uint64_t remaining = 0;
    for (std::size_t a = 0; a < n; ++a) remaining += hi[a] - lo[a];
    // All excluded-below values are counted by the rank offset.
    std::uint64_t below = 0;
    for (std::size_t a = 0; a < n; ++a) below += lo[a] - a - 1;
    if (remaining <= std::max<std::uint64_t>(n, 64)) {
      std::vector<double> vals;
      vals.reserve(remaining);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = lo[a]; b < hi[a]; ++b) vals.push_back(y[b] - y[a]);
      const auto nth = vals.begin() + static_cast<std::ptrdiff_t>(k - below - 1);
      std::nth_element(vals.begin(), nth, vals.end());
      return *nth;
    }
    std::uint64_t r = std::uniform_int_distribution<std::uint64_t>(0, remaining - 1)(rng);
    std::size_t row = 0;
    while (r >= hi[row] - lo[row]) {
      r -= hi[row] - lo[row];
      ++row;
    }
    const double pivot = y[lo[row] + r] - y[row];

    std::uint64_t c_lt = 0, c_le = 0;
    std::size_t p = 0, q = 0;
    for (std::size_t a = 0; a < n; ++a) {
      p = std::max(p, a + 1);
      q = std::max(q, a + 1);
      while (p < n && y[p] - y[a] < pivot) ++p;
      while (q < n && y[q] - y[a] <= pivot) ++q;
      lt[a] = p;
      le[a] = q;
      c_lt += p - a - 1;
      c_le += q - a - 1;
    }
    if (k <= c_lt) {
      for (std::size_t a = 0; a < n; ++a) hi[a] = std::min(hi[a], lt[a]);
    } else if (k <= c_le) {
      return pivot;
    } else {
      for (std::size_t a = 0; a < n; ++a) lo[a] = std::max(lo[a], le[a]);
    }
    for (std::size_t a = 0; a < n; ++a) hi[a] = std::max(hi[a], lo[a]);
  }
}

Pairs sweep_pairs(std::span<const double> y, double omega) {
  const std::size_t n = y.size();
  Pairs X;
  X.reserve(2 * n + 1);
  std::uint32_t i = 0, j = 0;
  X.emplace_back(0, 0);
  while (i < n) {
    // The top line reaches y[j] at t = y[j] - omega; the bottom line passes
    // y[i] just after t = y[i]. Ties go to the top line.
    if (j < n && y[j] - y[i] <= omega) ++j;
    else ++i;
    X.emplace_back(i, j);
  }
  return X;
}

// ---------------------------------------------------------------- public

DecisionOutcome one_fixed_decide(PointSpan points, double phi, double omega, const OneFixedOptions& opts) {
  if (!(omega >= 0.0)) throw DomainError("omega must be non-negative");
  validate_points(points);
  // Relaxed by abs_tol: half widens the sliding strip, half goes to the free one.
  Frame f = make_frame(points, phi);
  f.tol *= 0.5;
  Counters counters;
  return decide_on_frame(points, phi, f, omega + f.tol, opts, counters);
}

BracketInterval bracket_w1(PointSpan points, double phi, Counters* counters) {
  validate_points(points);
  const Frame f = make_frame(points, phi);
  Counters local;
  const BracketInterval b = bracket_on_frame(points, phi, f, local);
  if (counters) *counters = local;
  return b;
}

Solution one_fixed_solve(PointSpan points, double phi, const OneFixedOptions& opts) {
  const std::size_t n = points.size();
  if (n == 0) throw DomainError("one_fixed_solve: empty point set");
  validate_points(points);
  auto clock = std::chrono::steady_clock::now();
  const Frame f = make_frame(points, phi);
  Timings timings;
  timings["sort"] = elapsed_ns(clock);
  if (n <= 2) {
    Solution s = solution_from_pair(points, phi, f, 0, 1);
    s.timings = timings;
    return s;
  }

  clock = std::chrono::steady_clock::now();
  Counters counters;
  const BracketInterval b = bracket_on_frame(points, phi, f, counters);
  timings["bracket"] = elapsed_ns(clock);

  clock = std::chrono::steady_clock::now();
  PassOutcome best;
  Pairs X;
  if (b.w1 > 0.0) {
    const double w = std::isinf(b.w0) ? 0.5 * b.w1 : 0.5 * (b.w0 + b.w1);
    X = sweep_pairs(f.y, w);
    if (opts.check_invariants && X.size() > 2 * n + 1) throw InvariantError("one_fixed: more than 2n + 1 sweep pairs");
    PassSpec spec;
    spec.solve = true;
    spec.omega = b.w1;
    spec.gap_bound = w;
    spec.dominant = Dominant::Lower;
    spec.upward = false;
    best = run_pass(f, X, spec, opts, counters);
    spec.dominant = Dominant::Upper;
    spec.upward = true;
    const PassOutcome up = run_pass(f, X, spec, opts, counters);
    if (up.found && (!best.found || up.value < best.value)) best = up;
  }
  timings["collect"] = elapsed_ns(clock);

  Solution sol;
  if (best.found) {
    counters.candidates = 1;
    const auto [i, j] = X[best.pair];
    sol = solution_from_pair(points, phi, f, i, j);
  } else {
    const DecisionOutcome d = decide_on_frame(points, phi, f, b.w1, opts, counters);
    if (!d.feasible) throw InvariantError("one_fixed: no witness at the bracket's upper end");
    sol.strips = d.witness;
    sol.assignment = d.assignment;
    sol.width = sol.strips.width();
  }
  sol.counters = counters;
  sol.timings = std::move(timings);
  return sol;
}

}  // namespace tlc
