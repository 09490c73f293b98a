#include "tlc/oracles.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace tlc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::size_t> sorted_along(PointSpan points, double phi) {
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  const Point ny = normal(phi), nx = unit(phi);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double ya = points[a].dot(ny), yb = points[b].dot(ny);
    if (ya != yb) return ya < yb;
    return points[a].dot(nx) < points[b].dot(nx);
  });
  return idx;
}

double direct_width(const PointSet& pts, double theta) {
  if (pts.empty()) return 0.0;
  const Point n = normal(theta);
  double lo = kInf, hi = -kInf;
  for (const Point& p : pts) {
    lo = std::min(lo, p.dot(n));
    hi = std::max(hi, p.dot(n));
  }
  return hi - lo;
}

void split_run(PointSpan points, const std::vector<std::size_t>& order, std::size_t i, std::size_t j,
               PointSet& run, PointSet& rest, std::vector<int>* flags = nullptr) {
  run.clear();
  rest.clear();
  if (flags) flags->assign(points.size(), 1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k >= i && k < j) {
      run.push_back(points[order[k]]);
      if (flags) (*flags)[order[k]] = 0;
    } else {
      rest.push_back(points[order[k]]);
    }
  }
}

OracleReport two_fixed_oracle(PointSpan points, double theta, double phi) {
  const auto order = sorted_along(points, phi);
  const std::size_t n = points.size();
  OracleReport r;
  r.width = kInf;
  r.method = "contiguous-runs";
  std::size_t bi = 0, bj = 0;
  PointSet run, rest;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) {
      split_run(points, order, i, j, run, rest);
      const double w = std::max(direct_width(run, phi), direct_width(rest, theta));
      if (w < r.width) {
        r.width = w;
        bi = i;
        bj = j;
      }
    }
  split_run(points, order, bi, bj, run, rest, &r.assignment);
  r.witness = strips_for_partition(points, r.assignment, phi, theta);
  return r;
}

OracleReport one_fixed_oracle(PointSpan points, double phi) {
  const auto order = sorted_along(points, phi);
  const std::size_t n = points.size();
  OracleReport r;
  r.width = kInf;
  r.method = "contiguous-runs+min-width";
  std::size_t bi = 0, bj = 0;
  double btheta = 0.0;
  PointSet run, rest;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) {
      split_run(points, order, i, j, run, rest);
      const double w1 = direct_width(run, phi);
      if (w1 >= r.width) continue;
      WidthResult w2{0.0, 0.0};
      if (!rest.empty()) w2 = min_width(rest);
      const double w = std::max(w1, w2.width);
      if (w < r.width) {
        r.width = w;
        bi = i;
        bj = j;
        btheta = w2.theta;
      }
    }
  split_run(points, order, bi, bj, run, rest, &r.assignment);
  r.witness = strips_for_partition(points, r.assignment, phi, btheta);
  return r;
}

OracleReport fixed_angle_oracle(PointSpan points, double beta) {
  const std::size_t n = points.size();
  OracleReport r;
  r.width = kInf;
  r.method = "bipartitions";
  std::uint32_t best_mask = 0;
  double best_theta = 0.0;
  PointSet a, b;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    a.clear();
    b.clear();
    for (std::size_t k = 0; k < n; ++k) ((mask >> k) & 1u ? b : a).push_back(points[k]);
    const MinMaxWidth m = min_max_width(a, b, beta);
    if (m.width < r.width) {
      r.width = m.width;
      best_mask = mask;
      best_theta = m.theta;
    }
  }
  r.assignment.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) r.assignment[k] = static_cast<int>((best_mask >> k) & 1u);
  r.witness = strips_for_partition(points, r.assignment, best_theta, best_theta + beta);
  return r;
}

void check_size(PointSpan points, const Variant& v) {
  const std::size_t limit = v.kind == VariantKind::FixedAngle ? kOracleMaxPointsFixedAngle : kOracleMaxPoints;
  if (points.size() > limit) throw UsageError("oracle size limit exceeded");
  if (points.empty()) throw DomainError("oracle: empty point set");
}

}  // namespace

OracleReport oracle_solve(PointSpan points, const Variant& variant) {
  check_size(points, variant);
  validate_points(points);
  switch (variant.kind) {
    case VariantKind::TwoFixed: return two_fixed_oracle(points, variant.theta, variant.phi);
    case VariantKind::OneFixed: return one_fixed_oracle(points, variant.phi);
    case VariantKind::FixedAngle:
      if (variant.beta < 0.0 || variant.beta > kHalfPi) throw DomainError("beta must lie in [0, pi/2]");
      return fixed_angle_oracle(points, variant.beta);
  }
  throw UsageError("unknown variant");
}

bool oracle_decide(PointSpan points, const Variant& variant, double omega) {
  if (!(omega >= 0.0)) throw DomainError("omega must be non-negative");
  return oracle_solve(points, variant).width <= omega;
}

OracleReport parallel_oracle(PointSpan points) {
  check_size(points, Variant::fixed_angle(0.0));
  const std::size_t n = points.size();
  // The order along n(theta) only changes where theta is a pair orientation.
  std::vector<double> cuts{0.0, kPi};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i] != points[j]) cuts.push_back(normalize_orientation(angle_of(points[j] - points[i])));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  OracleReport r;
  r.width = kInf;
  r.method = "parallel-cells";
  std::vector<int> flags;
  double best_theta = 0.0;
  PointSet lo_part, hi_part;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
    const auto order = sorted_along(points, mid);
    for (std::size_t split = 0; split <= n; ++split) {
      lo_part.clear();
      hi_part.clear();
      for (std::size_t k = 0; k < n; ++k) (k < split ? lo_part : hi_part).push_back(points[order[k]]);
      const MinMaxWidth m = min_max_width(lo_part, hi_part, 0.0, cuts[c], cuts[c + 1]);
      if (m.width < r.width) {
        r.width = m.width;
        best_theta = m.theta;
        flags.assign(n, 1);
        for (std::size_t k = 0; k < split; ++k) flags[order[k]] = 0;
      }
    }
  }
  r.assignment = flags;
  r.witness = strips_for_partition(points, r.assignment, best_theta, best_theta);
  return r;
}

}  // namespace tlc
