#pragma once

// Brute-force reference solvers. They share only the geom_core primitives
// with the real solvers and are meant for tests and audits, not speed.

#include "tlc/solution.hpp"

#include <string>

namespace tlc {

constexpr std::size_t kOracleMaxPoints = 200;
constexpr std::size_t kOracleMaxPointsFixedAngle = 14;

struct OracleReport {
  double width = 0.0;
  TwoStrip witness;
  std::vector<int> assignment;
  std::string method;
};

// TwoFixed: every contiguous run (i, j] along n(phi), recomputed from scratch.
// OneFixed: every contiguous run along n(phi) against the min width of the rest.
// FixedAngle: every ordered bipartition against min_max_width.
OracleReport oracle_solve(PointSpan points, const Variant& variant);
bool oracle_decide(PointSpan points, const Variant& variant, double omega);

// Two parallel strips: orientation cells of the sorted order, every
// prefix/suffix split, exact min-max inside each cell.
OracleReport parallel_oracle(PointSpan points);

}  // namespace tlc
