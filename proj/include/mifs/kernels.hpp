#pragma once

// Data-parallel kernels over point clouds. Each kernel has a serial reference
// implementation kept for testing and benchmarking; the OpenMP variants must
// return bit-identical results for every thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mifs/geometry.hpp"

namespace mifs::kernels {

/// Uniform-grid nearest-neighbour index over a fixed cloud.
class GridIndex {
 public:
  explicit GridIndex(std::span<const Point> points);

  std::size_t size() const noexcept { return xs_.size(); }
  double cell_size() const noexcept { return cell_; }

  /// Minimum of squared_distance(q, p) over the indexed points.
  double nearest_squared(Point q) const;
  /// Index (into the constructor's span) of a nearest point; ties go to the lowest index.
  std::size_t nearest(Point q) const;

 private:
  template <typename Visit>
  void search(Point q, Visit&& visit) const;

  double x0_ = 0.0, y0_ = 0.0, cell_ = 1.0;
  std::int64_t nx_ = 1, ny_ = 1;
  std::vector<std::uint32_t> cell_start_;  // CSR offsets, size nx*ny + 1
  std::vector<double> xs_, ys_;            // points in cell order
  std::vector<std::uint32_t> original_;    // cell order -> input index
};

/// D(A,B) = max_a min_b d(a,b) by exhaustive search.
double semidistance_serial(std::span<const Point> a, std::span<const Point> b);
double semidistance_parallel(std::span<const Point> a, std::span<const Point> b);
double semidistance_grid(std::span<const Point> a, const GridIndex& b);

double diameter_serial(std::span<const Point> points);
/// Convex hull (counter-clockwise, no repeated endpoint) of lexicographically sorted points.
std::vector<Point> convex_hull(std::span<const Point> sorted_points);
double diameter_hull(std::span<const Point> sorted_points);

/// Concatenation of f_k(points) over the maps, map-major.
std::vector<Point> map_union_serial(std::span<const AffineMap> maps, std::span<const Point> points);
std::vector<Point> map_union_parallel(std::span<const AffineMap> maps, std::span<const Point> points);

/// Sorts lexicographically and removes duplicates.
void canonicalize(std::vector<Point>& points);

/// Nearest multiple of delta, coordinate-wise.
Point snap(Point p, double delta);

/// Canonical (sorted, deduplicated) set of snap(f_k(p), delta) over maps and
/// points. Uses a lattice bitmap when the bounding box is small enough.
std::vector<Point> map_union_snapped(std::span<const AffineMap> maps, std::span<const Point> points,
                                     double delta);
/// Serial reference for map_union_snapped: map, snap, sort, unique.
std::vector<Point> map_union_snapped_serial(std::span<const AffineMap> maps,
                                            std::span<const Point> points, double delta);

}  // namespace mifs::kernels
