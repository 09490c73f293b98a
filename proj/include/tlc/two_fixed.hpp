#pragma once

// Two strips with both orientations given: phi for the strip that takes a
// contiguous run of the points sorted along n(phi), theta for the strip that
// takes the rest.

#include "tlc/solution.hpp"

namespace tlc {

struct TwoFixedOptions {
  // Points are already sorted by <p, n(phi)> (ties by <p, unit(phi)>).
  bool presorted = false;
  // Assert the row/column monotonicity of both width tables at every probe.
  bool check_invariants = false;
};

// strips.first has orientation phi, strips.second has orientation theta.
// counters.probes counts evaluated (i, j) pairs and never exceeds 4n + 4.
Solution two_fixed_solve(PointSpan points, double theta, double phi, const TwoFixedOptions& opts = {});

}  // namespace tlc
