#include "tlc/solution.hpp"

#include <limits>

namespace tlc {

const char* variant_name(VariantKind kind) {
  switch (kind) {
    case VariantKind::TwoFixed: return "two-fixed";
    case VariantKind::OneFixed: return "one-fixed";
    case VariantKind::FixedAngle: return "fixed-angle";
  }
  return "unknown";
}

Strip subset_strip(PointSpan points, const std::vector<int>& flags, int which, double theta) {
  Strip s;
  s.theta = normalize_orientation(theta);
  const Point n = normal(s.theta);
  s.c_lo = std::numeric_limits<double>::infinity();
  s.c_hi = -s.c_lo;
  bool any = false;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (flags[k] != which) continue;
    const double t = points[k].dot(n);
    s.c_lo = std::min(s.c_lo, t);
    s.c_hi = std::max(s.c_hi, t);
    any = true;
  }
  return any ? s : Strip::empty_strip(s.theta);
}

TwoStrip strips_for_partition(PointSpan points, const std::vector<int>& flags, double theta_first,
                              double theta_second) {
  return {subset_strip(points, flags, 0, theta_first), subset_strip(points, flags, 1, theta_second)};
}

bool assign_to_strips(PointSpan points, const TwoStrip& strips, double tol, std::vector<int>& assignment) {
  assignment.assign(points.size(), 0);
  bool ok = true;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (strips.first.contains(points[k], tol)) continue;
    assignment[k] = 1;
    if (!strips.second.contains(points[k], tol)) ok = false;
  }
  return ok;
}

bool validate_cover(PointSpan points, const TwoStrip& strips, const std::vector<int>& assignment, double tol) {
  if (assignment.size() != points.size()) return false;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Strip& s = assignment[k] == 0 ? strips.first : strips.second;
    if (!s.contains(points[k], tol)) return false;
  }
  return true;
}

}  // namespace tlc
