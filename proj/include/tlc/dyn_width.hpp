#pragma once

// Dynamic width structures. Both keep a counterclockwise hull with an undo
// journal; width queries run rotating calipers over the current hull, so a
// query costs O(h) rather than the polylogarithmic bounds of the classical
// structures. Contracts (answers and LIFO semantics) are exact.

#include "tlc/geom_core.hpp"

#include <cstddef>
#include <vector>

namespace tlc {

class IncrementalHull {
 public:
  void insert(const Point& p);
  // Reverts the latest insert that has not been undone.
  void undo();
  void clear();

  const std::vector<Point>& vertices() const { return v_; }
  std::size_t journal_size() const { return journal_.size(); }

 private:
  struct Entry {
    enum class Kind { Inside, Splice, Replace } kind = Kind::Inside;
    std::size_t rotation = 0;    // Splice: left-rotation applied before splicing
    std::size_t removed_at = 0;  // Splice: index of the first removed vertex
    std::vector<Point> removed;  // Splice: removed chain; Replace: previous hull
  };

  std::vector<Point> v_;
  std::vector<Entry> journal_;
};

class LifoWidthStructure {
 public:
  // Answers "width <= omega" up to the absolute slack `tol`.
  explicit LifoWidthStructure(double omega, double tol = 0.0);

  void insert(const Point& p);
  void undo();

  bool width_leq() const;
  // min over theta in [theta1, theta2] of width_theta(S) <= omega.
  bool constrained_width_leq(double theta1, double theta2);

  double omega() const { return omega_; }
  std::size_t size() const { return hull_.journal_size(); }
  const std::vector<Point>& hull() const { return hull_.vertices(); }

 private:
  double omega_;
  double tol_;
  IncrementalHull hull_;
};

// Width of S + Q for small query sets Q while S only shrinks. Removing the
// most recently inserted remaining point is an undo; removing any other point
// rebuilds from the remaining insertion order.
class DeletionWidthStructure {
 public:
  DeletionWidthStructure() = default;
  explicit DeletionWidthStructure(PointSpan points) { build(points); }

  void build(PointSpan points);
  void remove(const Point& p);
  double width_with(PointSpan extra);

  std::size_t size() const { return order_.size(); }
  const std::vector<Point>& hull() const { return hull_.vertices(); }

 private:
  std::vector<Point> order_;
  IncrementalHull hull_;
};

}  // namespace tlc
