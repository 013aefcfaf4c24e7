#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mifs/geometry.hpp"

namespace mifs {

/// Finite nonempty cloud of finite points, stored sorted and deduplicated.
class PointSet {
 public:
  /// Sorts and deduplicates. Throws std::invalid_argument on an empty input or
  /// a non-finite coordinate.
  explicit PointSet(std::vector<Point> points);
  static PointSet singleton(Point p) { return PointSet(std::vector<Point>{p}); }
  /// Trusts the caller: `points` is already sorted, unique, finite and nonempty.
  static PointSet from_canonical(std::vector<Point> points);

  std::span<const Point> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t k) const { return points_[k]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  bool contains(Point p) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  struct Canonical {};
  PointSet(Canonical, std::vector<Point> points) : points_(std::move(points)) {}

  std::vector<Point> points_;
};

enum class SearchMethod { Auto, BruteForce, Grid };

/// D(A,B) = max_{a∈A} min_{b∈B} d(a,b).
double semidistance(const PointSet& a, const PointSet& b, SearchMethod method = SearchMethod::Auto);
/// h(A,B) = max{D(A,B), D(B,A)}.
double hausdorff(const PointSet& a, const PointSet& b, SearchMethod method = SearchMethod::Auto);
double diameter(const PointSet& a);

PointSet set_union(const PointSet& a, const PointSet& b);

/// Snaps each coordinate to the nearest multiple of delta and deduplicates.
PointSet decimate(const PointSet& a, double delta);

}  // namespace mifs
