#include "tlc/fixed_angle.hpp"

#include "tlc/dyn_width.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace tlc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Angular slack for interval comparisons in invariant checks.
constexpr double kTouch = 1e-9;

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= kHalfPi)) throw DomainError("beta must lie in [0, pi/2]");
}

// A point's membership in Q over a leaf range [first, last).
struct Lifetime {
  std::uint32_t point;
  std::size_t first, last;
};

// Hulls of a set that changes over an ordered sequence of leaves, when every
// point's lifetimes are known in advance: each lifetime is stored at O(log m)
// segment tree nodes and the tree is walked depth first with insert/undo.
class OfflineHulls {
 public:
  void reset(std::size_t leaves) {
    m_ = std::max<std::size_t>(leaves, 1);
    const std::size_t need = 4 * m_;
    if (nodes_.size() < need) nodes_.resize(need);
    for (std::size_t k = 0; k < need; ++k) nodes_[k].clear();
    hull_.clear();
  }

  void add(const Lifetime& t) {
    if (t.first < t.last) add(1, 0, m_, t.first, t.last, t.point);
  }

  // prune(lo, hi, hull) skips leaves [lo, hi) when true; hull holds a subset of
  // their points. leaf(k, hull) returns true to stop the walk.
  template <class Prune, class Leaf>
  bool run(std::span<const Point> pts, Prune&& prune, Leaf&& leaf) {
    return visit(1, 0, m_, pts, prune, leaf);
  }

 private:
  void add(std::size_t node, std::size_t lo, std::size_t hi, std::size_t a, std::size_t b, std::uint32_t p) {
    if (a <= lo && hi <= b) {
      nodes_[node].push_back(p);
      return;
    }
    const std::size_t mid = (lo + hi) / 2;
    if (a < mid) add(2 * node, lo, mid, a, b, p);
    if (b > mid) add(2 * node + 1, mid, hi, a, b, p);
  }

  template <class Prune, class Leaf>
  bool visit(std::size_t node, std::size_t lo, std::size_t hi, std::span<const Point> pts, Prune& prune,
             Leaf& leaf) {
    for (std::uint32_t p : nodes_[node]) hull_.insert(pts[p]);
    bool stop = false;
    const std::vector<Point>& v = hull_.vertices();
    if (!prune(lo, hi, v)) {
      if (hi - lo == 1) {
        stop = leaf(lo, v);
      } else {
        const std::size_t mid = (lo + hi) / 2;
        stop = visit(2 * node, lo, mid, pts, prune, leaf) || visit(2 * node + 1, mid, hi, pts, prune, leaf);
      }
    }
    for (std::size_t k = 0; k < nodes_[node].size(); ++k) hull_.undo();
    return stop;
  }

  std::size_t m_ = 1;
  std::vector<std::vector<std::uint32_t>> nodes_;
  IncrementalHull hull_;
};

// Adds the complement of the cyclic leaf ranges `covered` (inclusive ends,
// possibly wrapping) within [0, m) as lifetimes of `point`.
void add_complement(std::uint32_t point, std::vector<std::pair<std::size_t, std::size_t>>& covered,
                    std::size_t m, std::vector<Lifetime>& out) {
  std::vector<std::pair<std::size_t, std::size_t>> lin;
  for (auto [a, b] : covered) {
    if (a <= b) {
      lin.emplace_back(a, b + 1);
    } else {
      lin.emplace_back(a, m);
      lin.emplace_back(0, b + 1);
    }
  }
  std::sort(lin.begin(), lin.end());
  std::size_t at = 0;
  for (auto [a, b] : lin) {
    if (a > at) out.push_back({point, at, a});
    at = std::max(at, b);
  }
  if (at < m) out.push_back({point, at, m});
}

bool alive_at(const std::vector<Lifetime>& lt, std::size_t begin, std::size_t end, std::size_t leaf) {
  for (std::size_t k = begin; k < end; ++k)
    if (lt[k].first <= leaf && leaf < lt[k].last) return true;
  return false;
}

// ---------------------------------------------------------------- decision

struct PivotDecider {
  PointSpan pts;
  double beta, omega, tol;
  OfflineHulls tree;
  WidthProfile profile;
  std::vector<double> events;
  std::vector<Lifetime> lifetimes;
  std::vector<std::size_t> owner_begin;  // lifetimes of point j: [owner_begin[j], owner_begin[j+1])

  // Leaf 2k is the event direction events[k]; leaf 2k+1 the open cell after it.
  double leaf_lo(std::size_t leaf) const { return events.empty() ? 0.0 : events[leaf / 2]; }
  double leaf_hi(std::size_t leaf) const {
    if (events.empty()) return kTwoPi;
    if (leaf % 2 == 0) return events[leaf / 2];
    const std::size_t k = leaf / 2 + 1;
    return k < events.size() ? events[k] : events[0] + kTwoPi;
  }

  double min_width(std::span<const Point> hull, double lo, double hi, double* arg) {
    if (hull.size() < 2) {
      if (arg) *arg = lo;
      return 0.0;
    }
    profile.assign(hull);
    const WidthResult r = profile.min_over(lo + beta, hi + beta);
    if (arg) *arg = r.theta - beta;
    return r.width;
  }

  // Direction theta of a feasible placement at pivot i, or NaN.
  double run(std::uint32_t i, Counters& c, std::size_t& found_leaf) {
    const Point p = pts[i];
    const std::size_t n = pts.size();
    // Memberships use the relaxed width so that events which coincide exactly
    // (two points on one boundary line) still overlap after rounding.
    const double wide = omega + 0.5 * tol;
    struct Arc {
      double a, b;
    };
    std::vector<std::pair<std::uint32_t, Arc>> arcs;
    events.clear();
    for (std::uint32_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Point v = pts[j] - p;
      const double d = v.norm();
      if (d == 0.0) continue;
      const double al = normalize_direction(angle_of(v));
      auto push = [&](double a, double b) {
        const Arc arc{normalize_direction(a), normalize_direction(b)};
        arcs.push_back({j, arc});
        events.push_back(arc.a);
        events.push_back(arc.b);
      };
      if (d <= wide) {
        push(al - kPi, al);
      } else {
        const double s = std::asin(wide / d);
        push(al - kPi, al - kPi + s);
        push(al - s, al);
      }
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    const std::size_t m = events.empty() ? 1 : 2 * events.size();
    c.events += events.size();

    auto index = [&](double x) {
      return static_cast<std::size_t>(std::lower_bound(events.begin(), events.end(), x) - events.begin());
    };
    lifetimes.clear();
    owner_begin.assign(n + 1, 0);
    std::vector<std::pair<std::size_t, std::size_t>> covered;
    std::size_t a = 0;
    for (std::uint32_t j = 0; j < n; ++j) {
      owner_begin[j] = lifetimes.size();
      if (j == i || pts[j] == p) continue;
      covered.clear();
      for (; a < arcs.size() && arcs[a].first == j; ++a)
        covered.emplace_back(2 * index(arcs[a].second.a), 2 * index(arcs[a].second.b));
      add_complement(j, covered, m, lifetimes);
    }
    owner_begin[n] = lifetimes.size();

    tree.reset(m);
    for (const Lifetime& t : lifetimes) tree.add(t);
    const double limit = omega + 0.5 * tol;
    double theta = std::numeric_limits<double>::quiet_NaN();
    tree.run(
        pts,
        [&](std::size_t lo, std::size_t hi, std::span<const Point> hull) {
          if (hi - lo == 1) return false;
          ++c.queries;
          return min_width(hull, leaf_lo(lo), leaf_hi(hi - 1), nullptr) > limit;
        },
        [&](std::size_t leaf, std::span<const Point> hull) {
          ++c.queries;
          double arg = leaf_lo(leaf);
          const double w = leaf % 2 == 0 ? (hull.size() < 2 ? 0.0 : width_at(hull, arg + beta).width())
                                         : min_width(hull, leaf_lo(leaf), leaf_hi(leaf), &arg);
          if (w > limit) return false;
          theta = arg;
          found_leaf = leaf;
          return true;
        });
    return theta;
  }
};

}  // namespace

DecisionOutcome fixed_angle_decide(PointSpan points, double beta, double omega, const FixedAngleOptions&) {
  check_beta(beta);
  if (!(omega >= 0.0)) throw DomainError("omega must be non-negative");
  validate_points(points);
  DecisionOutcome out;
  out.counters.decision_calls = 1;
  const std::size_t n = points.size();
  if (n == 0) throw DomainError("empty point set");
  if (n <= 2) {
    out.feasible = true;
    out.assignment.assign(n, 0);
    if (n == 2) out.assignment[1] = 1;
    out.witness = strips_for_partition(points, out.assignment, 0.0, beta);
    return out;
  }
  PivotDecider dec{points, beta, omega, abs_tol(points), {}, {}, {}, {}, {}};
  for (std::uint32_t i = 0; i < n; ++i) {
    std::size_t leaf = 0;
    const double theta = dec.run(i, out.counters, leaf);
    if (std::isnan(theta)) continue;
    out.feasible = true;
    out.assignment.assign(n, 0);
    for (std::uint32_t j = 0; j < n; ++j)
      if (alive_at(dec.lifetimes, dec.owner_begin[j], dec.owner_begin[j + 1], leaf)) out.assignment[j] = 1;
    out.witness = strips_for_partition(points, out.assignment, theta, theta + beta);
    return out;
  }
  return out;
}

// ---------------------------------------------------------------- bracket

BracketInterval bracket_w2_w3(PointSpan points, double beta, Counters* counters) {
  check_beta(beta);
  const std::size_t n = points.size();
  if (n < 3) throw DomainError("bracket_w2_w3 needs at least three points");
  Counters local;
  Counters& c = counters ? *counters : local;
  auto yes = [&](double w) {
    ++c.decision_calls;
    return fixed_angle_decide(points, beta, w).feasible;
  };
  // Smallest index of a YES value in ascending `vals`, given YES at the end.
  auto first_yes = [&](const std::vector<double>& vals) {
    std::size_t lo = 0, hi = vals.size() - 1;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (yes(vals[mid]))
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  };

  std::vector<double> w2{0.0};
  w2.reserve(n * (n - 1) / 2 + 1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) w2.push_back((points[b] - points[a]).norm());
  std::sort(w2.begin(), w2.end());
  w2.erase(std::unique(w2.begin(), w2.end()), w2.end());
  // The diameter always admits a single covering strip.
  const std::size_t k2 = first_yes(w2);
  BracketInterval br{k2 == 0 ? -kInf : w2[k2 - 1], w2[k2]};
  if (br.w1 == 0.0) return br;

  // Point-to-line distances, streamed and kept only inside the W2 bracket.
  std::vector<double> w3;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const Point u = points[b] - points[a];
      const double len = u.norm();
      if (len == 0.0) continue;
      for (std::size_t r = 0; r < n; ++r) {
        const double d = std::abs(cross(u, points[r] - points[a])) / len;
        if (d > br.w0 && d < br.w1) w3.push_back(d);
      }
    }
  if (w3.empty()) return br;
  std::sort(w3.begin(), w3.end());
  w3.erase(std::unique(w3.begin(), w3.end()), w3.end());
  w3.push_back(br.w1);
  const std::size_t k3 = first_yes(w3);
  br.w1 = w3[k3];
  if (k3 > 0) br.w0 = w3[k3 - 1];
  return br;
}

// ---------------------------------------------------------------- schedule

SweepSchedule build_schedule(PointSpan points, std::uint32_t pivot, double beta, const BracketInterval& bracket,
                             bool reversed) {
  const std::size_t n = points.size();
  if (pivot >= n) throw UsageError("pivot index out of range");
  if (!(bracket.w0 >= 0.0 && bracket.w1 > bracket.w0)) throw UsageError("schedule needs 0 <= w0 < w1");
  SweepSchedule s;
  s.pivot = pivot;
  s.reversed = reversed;
  s.beta = reversed ? -beta : beta;
  s.bracket = bracket;
  auto input = [&](std::size_t j) {
    const Point& q = points[j];
    return reversed ? Point(q.x(), -q.y()) : q;
  };
  const Point base = input(pivot);
  std::uint32_t r0 = static_cast<std::uint32_t>(n);
  for (std::uint32_t j = 0; j < n; ++j)
    if (j != pivot && input(j) != base) {
      r0 = j;
      break;
    }
  s.frame.resize(n);
  s.inside_at_start.assign(n, 1);
  if (r0 == n) {
    for (auto& f : s.frame) f = Point::Zero();
    return s;
  }
  s.frame_angle = angle_of(input(r0) - base);
  for (std::size_t j = 0; j < n; ++j) s.frame[j] = rotate(input(j) - base, -s.frame_angle);
  s.frame[r0] = Point((input(r0) - base).norm(), 0.0);
  s.frame[pivot] = Point::Zero();

  const double w0 = bracket.w0, w1 = bracket.w1, w = 0.5 * (w0 + w1);
  for (std::uint32_t j = 0; j < n; ++j) {
    if (j == pivot) continue;
    const double d = s.frame[j].norm();
    if (d == 0.0) continue;
    const double al = j == r0 ? 0.0 : normalize_direction(angle_of(s.frame[j]));
    s.updates.push_back({j, UpdateSide::Right, UpdateKind::Leaving, al, al, al});
    const double ra = normalize_direction(al - kPi);
    s.updates.push_back({j, UpdateSide::Right, UpdateKind::Approaching, ra, ra, ra});
    if (d <= w) continue;
    const double sm = std::asin(w / d), s0 = std::asin(w0 / d), s1 = std::asin(std::min(1.0, w1 / d));
    const double kl = normalize_direction(al - kPi + sm);
    s.updates.push_back({j, UpdateSide::Left, UpdateKind::Leaving, kl, kl - (sm - s0), kl + (s1 - sm)});
    const double ka = normalize_direction(al - sm);
    s.updates.push_back({j, UpdateSide::Left, UpdateKind::Approaching, ka, ka - (s1 - sm), ka + (sm - s0)});
  }
  std::stable_sort(s.updates.begin(), s.updates.end(), [&](const Update& a, const Update& b) {
    if (a.key != b.key) return a.key < b.key;
    // The leaving of r0 opens the sweep.
    const bool a0 = a.point == r0 && a.side == UpdateSide::Right && a.kind == UpdateKind::Leaving;
    const bool b0 = b.point == r0 && b.side == UpdateSide::Right && b.kind == UpdateKind::Leaving;
    return a0 && !b0;
  });
  // A point is inside sigma at the start iff its next update lets it leave.
  std::vector<char> seen(n, 0);
  for (std::size_t k = 1; k < s.updates.size(); ++k) {
    const Update& u = s.updates[k];
    if (seen[u.point]) continue;
    seen[u.point] = 1;
    s.inside_at_start[u.point] = u.kind == UpdateKind::Leaving;
  }
  s.inside_at_start[r0] = 0;
  return s;
}

double input_direction(const SweepSchedule& s, double frame_theta) {
  const double t = frame_theta + s.frame_angle;
  return normalize_direction(s.reversed ? -t : t);
}

// ---------------------------------------------------------------- sweep

SweepReport pivot_sweep(PointSpan points, const SweepSchedule& s, const BracketInterval& bracket,
                        const FixedAngleOptions& opts, double cutoff) {
  if (s.bracket.w0 != bracket.w0 || s.bracket.w1 != bracket.w1 || s.frame.size() != points.size())
    throw UsageError("schedule does not belong to this bracket and point set");
  const std::size_t n = points.size();
  const std::vector<Update>& up = s.updates;
  const std::size_t m = up.size();
  SweepReport rep;
  if (m == 0) return rep;
  const bool full = opts.check_invariants || opts.count_events;
  if (cutoff < 0.0 || full) cutoff = bracket.w1;
  const double beta = s.beta;
  const PointSpan fr(s.frame);
  const double scale = scale_of(points);

  // Leaf k holds Q_k, the points outside sigma after executing u_0..u_k.
  std::vector<Lifetime> lifetimes;
  std::vector<std::size_t> born(n, 0);
  std::vector<char> in_q(n, 0);
  for (std::uint32_t j = 0; j < n; ++j) in_q[j] = !s.inside_at_start[j];
  for (std::size_t k = 1; k < m; ++k) {
    const Update& u = up[k];
    const bool leave = u.kind == UpdateKind::Leaving;
    if (leave && !in_q[u.point]) {
      in_q[u.point] = 1;
      born[u.point] = k;
    } else if (!leave && in_q[u.point]) {
      in_q[u.point] = 0;
      lifetimes.push_back({u.point, born[u.point], k});
    }
  }
  for (std::uint32_t j = 0; j < n; ++j)
    if (in_q[j]) lifetimes.push_back({j, born[j], m});
  std::sort(lifetimes.begin(), lifetimes.end(),
            [](const Lifetime& a, const Lifetime& b) { return a.point < b.point || (a.point == b.point && a.first < b.first); });
  std::vector<std::size_t> owner(n + 1, 0);
  {
    std::size_t k = 0;
    for (std::uint32_t j = 0; j <= n; ++j) {
      while (k < lifetimes.size() && lifetimes[k].point < j) ++k;
      owner[j] = k;
    }
  }
  auto in_q_at = [&](std::uint32_t j, std::size_t leaf) {
    return alive_at(lifetimes, owner[j], owner[j + 1], leaf);
  };

  if (opts.check_invariants) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        if (a == b) continue;
        const Update &x = up[a], &y = up[b];
        // Ends may touch: w0 and w1 are themselves point-line distances.
        if (x.lo < y.lo - kTouch && y.hi < x.hi - kTouch) throw InvariantError("properly nested update intervals");
        const bool overlap = std::max(x.lo, y.lo) < std::min(x.hi, y.hi) - kTouch;
        if (overlap && (x.side != y.side || x.kind != y.kind))
          throw InvariantError("overlapping update intervals of different kinds");
      }
  }

  rep.phi.resize(m);
  for (std::size_t k = 0; k < m; ++k) rep.phi[k] = up[k].side == UpdateSide::Right ? up[k].key : up[k].hi;
  rep.phi[0] = 0.0;

  // Node range of directions where some left leaving interval needs solving.
  std::vector<double> need_lo(m, kInf), need_hi(m, -kInf);
  for (std::size_t k = 0; k + 1 < m; ++k)
    if (up[k + 1].side == UpdateSide::Left && up[k + 1].kind == UpdateKind::Leaving) {
      need_lo[k] = up[k + 1].lo;
      need_hi[k] = up[k + 1].hi;
    }
  WidthProfile profile;
  OfflineHulls tree;
  tree.reset(m);
  for (const Lifetime& t : lifetimes) tree.add(t);

  std::uint64_t changes = 0;
  tree.run(
      fr,
      [&](std::size_t lo, std::size_t hi, std::span<const Point> hull) {
        if (opts.count_events) return false;
        double a = kInf, b = -kInf;
        for (std::size_t k = lo; k < hi; ++k) {
          a = std::min(a, need_lo[k]);
          b = std::max(b, need_hi[k]);
        }
        if (a > b) return true;
        if (hull.size() < 2) return false;
        profile.assign(hull);
        return profile.min_over(a + beta, b + beta).width >= cutoff;
      },
      [&](std::size_t k, std::span<const Point> hull) {
        profile.assign(hull);
        if (k + 1 < m && up[k + 1].side == UpdateSide::Left && up[k + 1].kind == UpdateKind::Leaving) {
          const Update& u = up[k + 1];
          const Point r = fr[u.point];
          if (opts.check_invariants) {
            for (double f : {0.25, 0.5, 0.75}) {
              const double t = u.lo + f * (u.hi - u.lo);
              const Point nt = normal(t);
              double lo = 0.0, hi = 0.0;  // the pivot is always inside
              for (std::uint32_t j = 0; j < n; ++j) {
                if (in_q_at(j, k)) continue;
                const double x = fr[j].dot(nt);
                lo = std::min(lo, x);
                hi = std::max(hi, x);
              }
              if (std::abs((hi - lo) - r.dot(nt)) > 1e-9 * scale)
                throw InvariantError("first strip width differs from the leaving pair width");
            }
          }
          double first = kInf;
          if (hull.size() >= 2) {
            profile.for_each_piece(u.lo + beta, u.hi + beta, [&](double a, double b, const Point& d) {
              const Point g = r - rotate(d, -beta);
              if (g.squaredNorm() == 0.0) return;
              const double x = a - beta, y = b - beta;
              for (double t = x + normalize_orientation(angle_of(g) - x); t <= y; t += kPi) {
                if (t <= u.lo || t >= u.hi) continue;
                const double v = r.dot(normal(t));
                if (!(v < cutoff)) continue;
                first = std::min(first, t);
                // Cover width of this configuration, computed from the sets.
                std::vector<int> flags(n, 0);
                for (std::uint32_t j = 0; j < n; ++j) flags[j] = in_q_at(j, k) ? 1 : 0;
                const double dir = input_direction(s, t);
                const double sb = s.reversed ? -beta : beta;  // input-space angle of the second strip
                SweepCandidate c;
                c.theta = dir;
                const TwoStrip ts = strips_for_partition(points, flags, dir, dir + sb);
                c.width = ts.width();
                c.assignment = std::move(flags);
                if (c.width < cutoff) rep.candidates.push_back(std::move(c));
              }
            });
          }
          if (first < kInf) rep.phi[k + 1] = first;
        }
        if (opts.count_events && k + 1 < m && hull.size() >= 2) {
          std::uint64_t cnt = 1;
          profile.for_each_breakpoint(rep.phi[k] + beta, rep.phi[k + 1] + beta, [&](double) { ++cnt; });
          changes += cnt;
        }
        return false;
      });
  rep.extreme_changes = changes;

  if (opts.check_invariants) {
    for (std::size_t k = 1; k < m; ++k)
      if (rep.phi[k] < rep.phi[k - 1] - 1e-12 || rep.phi[k] > kTwoPi)
        throw InvariantError("execution directions are not monotone");
  }
  return rep;
}

// ---------------------------------------------------------------- solve

Solution fixed_angle_solve(PointSpan points, double beta, const FixedAngleOptions& opts) {
  check_beta(beta);
  validate_points(points);
  const std::size_t n = points.size();
  if (n == 0) throw DomainError("empty point set");
  using clock = std::chrono::steady_clock;
  Solution sol;
  auto witness_from_decide = [&](double w) {
    DecisionOutcome d = fixed_angle_decide(points, beta, w);
    ++sol.counters.decision_calls;
    if (!d.feasible) throw InvariantError("decision at the bracket top is infeasible");
    sol.strips = d.witness;
    sol.assignment = d.assignment;
  };
  if (n <= 2) {
    witness_from_decide(0.0);
    sol.width = 0.0;
    return sol;
  }
  const auto t0 = clock::now();
  const BracketInterval br = bracket_w2_w3(points, beta, &sol.counters);
  const auto t1 = clock::now();
  sol.timings["bracket"] = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();

  double best = br.w1;
  SweepCandidate winner;
  bool have = false;
  if (br.w1 > 0.0) {
    for (std::uint32_t i = 0; i < n; ++i)
      for (bool rev : {false, true}) {
        const SweepSchedule s = build_schedule(points, i, beta, br, rev);
        sol.counters.events += s.updates.size();
        SweepReport rep = pivot_sweep(points, s, br, opts, best);
        sol.counters.extreme_changes = std::max(sol.counters.extreme_changes, rep.extreme_changes);
        sol.counters.candidates += rep.candidates.size();
        for (SweepCandidate& c : rep.candidates)
          if (c.width < best) {
            best = c.width;
            winner = std::move(c);
            have = true;
          }
      }
  }
  sol.timings["sweep"] = std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t1).count();

  if (have) {
    sol.width = best;
    sol.assignment = winner.assignment;
    sol.strips = strips_for_partition(points, winner.assignment, winner.theta, winner.theta + beta);
  } else {
    sol.width = br.w1;
    witness_from_decide(br.w1);
  }
  return sol;
}

}  // namespace tlc
