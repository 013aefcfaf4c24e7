#include "mifs/point_set.hpp"

#include <algorithm>
#include <stdexcept>

#include "mifs/kernels.hpp"

namespace mifs {

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("a point set must be nonempty");
  for (Point p : points_)
    if (!is_finite(p)) throw std::invalid_argument("point set coordinates must be finite");
  kernels::canonicalize(points_);
}

PointSet PointSet::from_canonical(std::vector<Point> points) {
  return PointSet(Canonical{}, std::move(points));
}

bool PointSet::contains(Point p) const { return std::binary_search(points_.begin(), points_.end(), p); }

namespace {

// Below this many point pairs the exhaustive search beats building an index.
constexpr double kBruteForcePairs = 4.0e6;

}  // namespace

double semidistance(const PointSet& a, const PointSet& b, SearchMethod method) {
  if (method == SearchMethod::Auto)
    method = static_cast<double>(a.size()) * static_cast<double>(b.size()) <= kBruteForcePairs
                 ? SearchMethod::BruteForce
                 : SearchMethod::Grid;
  if (method == SearchMethod::BruteForce) return kernels::semidistance_parallel(a.points(), b.points());
  const kernels::GridIndex index(b.points());
  return kernels::semidistance_grid(a.points(), index);
}

double hausdorff(const PointSet& a, const PointSet& b, SearchMethod method) {
  return std::max(semidistance(a, b, method), semidistance(b, a, method));
}

double diameter(const PointSet& a) { return kernels::diameter_hull(a.points()); }

PointSet set_union(const PointSet& a, const PointSet& b) {
  std::vector<Point> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return PointSet::from_canonical(std::move(out));
}

PointSet decimate(const PointSet& a, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("decimation resolution must be positive");
  const AffineMap identity = AffineMap::identity();
  return PointSet::from_canonical(kernels::map_union_snapped({&identity, 1}, a.points(), delta));
}

}  // namespace mifs
