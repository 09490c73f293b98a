#pragma once

#include "tlc/geom_core.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tlc {

struct TwoStrip {
  Strip first;
  Strip second;

  double width() const { return std::max(first.width(), second.width()); }
};

struct Counters {
  std::uint64_t probes = 0;          // (i, j) pairs evaluated by the two-orientation walk
  std::uint64_t pairs = 0;           // sweep pairs visited
  std::uint64_t decision_calls = 0;  // calls into a decision procedure
  std::uint64_t queries = 0;         // width-structure queries
  std::uint64_t events = 0;          // sweep events processed
  std::uint64_t extreme_changes = 0; // largest per-pivot breakpoint/extreme-pair change count
  std::uint64_t candidates = 0;      // candidate optimum values produced
};

// Per-phase wall-clock time in nanoseconds, keyed by phase name.
using Timings = std::map<std::string, std::int64_t>;

struct Solution {
  double width = 0.0;
  TwoStrip strips;
  // 0 for points assigned to strips.first, 1 for strips.second.
  std::vector<int> assignment;
  Counters counters;
  Timings timings;
};

struct DecisionOutcome {
  bool feasible = false;
  TwoStrip witness;
  std::vector<int> assignment;
  Counters counters;
};

// w0 < w* <= w1 with no candidate value strictly between; w0 may be -infinity.
struct BracketInterval {
  double w0 = 0.0;
  double w1 = 0.0;
};

enum class VariantKind { TwoFixed, OneFixed, FixedAngle };

// Problem variant and its angle parameters (unused ones stay 0).
struct Variant {
  VariantKind kind = VariantKind::TwoFixed;
  double theta = 0.0;
  double phi = 0.0;
  double beta = 0.0;

  static Variant two_fixed(double theta, double phi) { return {VariantKind::TwoFixed, theta, phi, 0.0}; }
  static Variant one_fixed(double phi) { return {VariantKind::OneFixed, 0.0, phi, 0.0}; }
  static Variant fixed_angle(double beta) { return {VariantKind::FixedAngle, 0.0, 0.0, beta}; }
};

const char* variant_name(VariantKind kind);

// Tight strip of the given subset (flags[k] == which) at orientation theta;
// the empty marker when the subset is empty.
Strip subset_strip(PointSpan points, const std::vector<int>& flags, int which, double theta);

TwoStrip strips_for_partition(PointSpan points, const std::vector<int>& flags, double theta_first,
                              double theta_second);

// Assigns every point to a strip containing it (first preferred). Returns false
// if some point lies in neither strip within tol.
bool assign_to_strips(PointSpan points, const TwoStrip& strips, double tol, std::vector<int>& assignment);

// Every point lies inside its assigned strip within tol.
bool validate_cover(PointSpan points, const TwoStrip& strips, const std::vector<int>& assignment, double tol);

}  // namespace tlc
