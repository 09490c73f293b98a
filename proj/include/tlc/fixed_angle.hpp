#pragma once

// Two strips whose orientations differ by exactly beta. A strip sigma(theta)
// of the first orientation is pinned with its right boundary line through a
// pivot point; everything it misses must fit in a strip of orientation
// theta + beta. Directions theta run over [0, 2pi) and are reduced mod pi only
// when strips are emitted.

#include "tlc/solution.hpp"

#include <cstdint>
#include <vector>

namespace tlc {

struct FixedAngleOptions {
  // Assert phi monotonicity, interval non-nesting and the leaving-width identity
  // inside every sweep. Disables cutoff pruning below w1.
  bool check_invariants = false;
  // Record the extreme-pair change count E of each sweep. Visits every update.
  bool count_events = false;
};

// Answers are relaxed by abs_tol(points). 0 <= beta <= pi/2.
DecisionOutcome fixed_angle_decide(PointSpan points, double beta, double omega,
                                   const FixedAngleOptions& opts = {});

// Consecutive values w0 < w1 of (pairwise distances) U (point-to-line
// distances) U {0} with the decision NO at w0 and YES at w1. w0 is -infinity
// when w1 = 0. Requires at least three points.
BracketInterval bracket_w2_w3(PointSpan points, double beta, Counters* counters = nullptr);

enum class UpdateSide { Right, Left };
enum class UpdateKind { Leaving, Approaching };

struct Update {
  std::uint32_t point = 0;  // index into the input
  UpdateSide side = UpdateSide::Right;
  UpdateKind kind = UpdateKind::Leaving;
  double key = 0.0;  // direction at the bracket midpoint
  double lo = 0.0;   // direction interval over widths in (w0, w1); lo == hi for right updates
  double hi = 0.0;
};

// Updates of one pivot, sorted by their direction at the bracket midpoint.
// Directions are measured in a frame where the pivot is the origin and the
// first update (a right leaving one) happens at direction 0.
struct SweepSchedule {
  std::uint32_t pivot = 0;
  bool reversed = false;
  double beta = 0.0;         // signed angle used inside the frame
  double frame_angle = 0.0;  // frame direction 0 in input coordinates (mirrored if reversed)
  BracketInterval bracket;
  std::vector<Point> frame;  // all input points in frame coordinates
  std::vector<Update> updates;
  std::vector<char> inside_at_start;  // membership in sigma just after direction 0
};

// reversed = true sweeps clockwise, implemented as the counterclockwise sweep
// of the mirrored input with -beta.
SweepSchedule build_schedule(PointSpan points, std::uint32_t pivot, double beta, const BracketInterval& bracket,
                             bool reversed);

// Input direction of a frame direction.
double input_direction(const SweepSchedule& s, double frame_theta);

struct SweepCandidate {
  double theta = 0.0;  // direction of the first strip, input coordinates
  double width = 0.0;
  std::vector<int> assignment;
};

struct SweepReport {
  std::vector<SweepCandidate> candidates;
  std::vector<double> phi;  // execution directions (frame); complete only with check_invariants or count_events
  std::uint64_t extreme_changes = 0;
};

// Runs the variable-width sweep of one schedule. Candidates are crossings on
// left leaving intervals whose covering width is below `cutoff` (default w1).
SweepReport pivot_sweep(PointSpan points, const SweepSchedule& schedule, const BracketInterval& bracket,
                        const FixedAngleOptions& opts = {}, double cutoff = -1.0);

Solution fixed_angle_solve(PointSpan points, double beta, const FixedAngleOptions& opts = {});

}  // namespace tlc
