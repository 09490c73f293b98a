#include "tlc/two_fixed.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

namespace tlc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t elapsed_ns(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

Solution two_fixed_solve(PointSpan points, double theta, double phi, const TwoFixedOptions& opts) {
  const std::size_t n = points.size();
  if (n == 0) throw DomainError("two_fixed_solve: empty point set");
  validate_points(points);
  auto clock = std::chrono::steady_clock::now();
  Solution sol;

  const Point ny = normal(phi), nx = unit(phi), nt = normal(theta);
  std::vector<double> y(n), x(n);
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = points[k].dot(ny);
    x[k] = points[k].dot(nx);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) { return y[a] < y[b] || (y[a] == y[b] && x[a] < x[b]); };
  if (opts.presorted) {
    for (std::size_t k = 1; k < n; ++k)
      if (less(k, k - 1)) throw PreconditionError("two_fixed_solve: input is not presorted");
  } else {
    std::sort(order.begin(), order.end(), less);
  }
  std::vector<double> ys(n), s(n);
  for (std::size_t k = 0; k < n; ++k) {
    ys[k] = y[order[k]];
    s[k] = points[order[k]].dot(nt);
  }
  sol.timings["sort"] = elapsed_ns(clock);
  clock = std::chrono::steady_clock::now();

  // P_i = first i sorted points, Pbar_j = sorted points j..n-1.
  std::vector<double> pmin(n + 1, kInf), pmax(n + 1, -kInf), smin(n + 1, kInf), smax(n + 1, -kInf);
  for (std::size_t i = 0; i < n; ++i) {
    pmin[i + 1] = std::min(pmin[i], s[i]);
    pmax[i + 1] = std::max(pmax[i], s[i]);
  }
  for (std::size_t j = n; j-- > 0;) {
    smin[j] = std::min(smin[j + 1], s[j]);
    smax[j] = std::max(smax[j + 1], s[j]);
  }
  auto w1 = [&](std::size_t i, std::size_t j) { return j > i ? ys[j - 1] - ys[i] : 0.0; };
  auto w2 = [&](std::size_t i, std::size_t j) {
    const double lo = std::min(pmin[i], smin[j]), hi = std::max(pmax[i], smax[j]);
    return hi >= lo ? hi - lo : 0.0;
  };

  double best = kInf;
  std::size_t bi = 0, bj = 0;
  std::uint64_t probes = 0;
  auto evaluate = [&](std::size_t i, std::size_t j) {
    ++probes;
    const double w = std::max(w1(i, j), w2(i, j));
    if (w < best) {
      best = w;
      bi = i;
      bj = j;
    }
  };
  auto check = [&](std::size_t i, std::size_t j) {
    if (!opts.check_invariants) return;
    if (j < n && w1(i, j) > w1(i, j + 1)) throw InvariantError("two_fixed: w1 not monotone in j");
    if (j < n && w2(i, j) < w2(i, j + 1)) throw InvariantError("two_fixed: w2 not monotone in j");
    if (i > 0 && w1(i, j) > w1(i - 1, j)) throw InvariantError("two_fixed: w1 not monotone in i");
    if (i > 0 && w2(i, j) < w2(i - 1, j)) throw InvariantError("two_fixed: w2 not monotone in i");
  };

  std::size_t j = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    j = std::max(j, i);
    while (true) {
      ++probes;
      check(i, j);
      if (j < n && w1(i, j) < w2(i, j)) ++j;
      else break;
    }
    evaluate(i, j);
    if (j > i) evaluate(i, j - 1);
  }
  sol.counters.probes = probes;
  sol.timings["walk"] = elapsed_ns(clock);

  sol.assignment.assign(n, 1);
  for (std::size_t k = bi; k < bj; ++k) sol.assignment[order[k]] = 0;
  sol.strips = strips_for_partition(points, sol.assignment, phi, theta);
  sol.width = sol.strips.width();
  return sol;
}

}  // namespace tlc
