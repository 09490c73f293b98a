#pragma once

#include <Eigen/Core>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlc {

using Point = Eigen::Vector2d;
using PointSet = std::vector<Point>;
using PointSpan = std::span<const Point>;

// Bad coordinates or malformed input files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside the mathematical domain of an operation (empty set,
// negative width, angle out of range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// API misuse: undo on an empty journal, deleting an absent point, size limits.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A documented geometric precondition does not hold (e.g. intersecting hulls).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal invariant failed while checks were enabled.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kHalfPi = 0.5 * kPi;

// Largest accepted coordinate magnitude.
constexpr double kCoordinateBound = 1e6;

// Global comparison tolerance. Defaults to 1e-9; the TLC_EPS environment
// variable overrides the default on first use.
double eps();
void set_eps(double value);

// Length scale used to turn eps() into an absolute tolerance: max(1, bbox diagonal).
double scale_of(PointSpan points);

// Absolute tolerance for width comparisons on `points`.
inline double abs_tol(PointSpan points) { return eps() * scale_of(points); }

// Throws InputError on non-finite or out-of-bound coordinates.
void validate_points(PointSpan points);

}  // namespace tlc
