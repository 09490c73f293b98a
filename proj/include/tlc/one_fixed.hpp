#pragma once

// One strip with fixed orientation phi, the other free. The decision sweeps a
// width-omega strip of orientation phi upward; the points below (P_i) and above
// (Pbar_j) must then fit in one strip of width omega, which is decided by an
// orientation-constrained width query on whichever side dominates.

#include "tlc/solution.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tlc {

struct OneFixedOptions {
  // Assert the hull gap d(conv P_i, conv Pbar_j) > omega at every handled pair
  // and |X| <= 2n + 1.
  bool check_invariants = false;
};

// strips.first has orientation phi. Answers are relaxed by abs_tol(points).
DecisionOutcome one_fixed_decide(PointSpan points, double phi, double omega, const OneFixedOptions& opts = {});

// Consecutive members w0 < w1 of the set of pairwise coordinate differences
// along n(phi) with w0 < w* <= w1. Requires at least two points.
BracketInterval bracket_w1(PointSpan points, double phi, Counters* counters = nullptr);

Solution one_fixed_solve(PointSpan points, double phi, const OneFixedOptions& opts = {});

// k-th smallest (1-based) of y[b] - y[a] over a < b for ascending y.
double kth_pairwise_difference(std::span<const double> sorted_y, std::uint64_t k);
// Number of differences y[b] - y[a], a < b, strictly below v.
std::uint64_t count_pairwise_below(std::span<const double> sorted_y, double v);

// The pairs (i, j) met while a width-omega strip slides upward over ascending
// y: i points lie below it and n - j above it.
std::vector<std::pair<std::uint32_t, std::uint32_t>> sweep_pairs(std::span<const double> sorted_y, double omega);

}  // namespace tlc
