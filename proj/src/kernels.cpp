#include "mifs/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#if defined(_OPENMP) && __has_include(<parallel/algorithm>)
#include <parallel/algorithm>
#define MIFS_PARALLEL_SORT 1
#endif

namespace mifs::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Box {
  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  void add(Point p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
};

Box bounding_box(std::span<const Point> points) {
  Box box;
  for (Point p : points) box.add(p);
  return box;
}

}  // namespace

// ---------------------------------------------------------------------------
// GridIndex

GridIndex::GridIndex(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("cannot index an empty cloud");
  if (points.size() >= std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("cloud too large to index");
  const Box box = bounding_box(points);
  const double wx = box.xmax - box.xmin;
  const double wy = box.ymax - box.ymin;
  const double target = std::max<double>(1.0, static_cast<double>(points.size()) / 2.0);
  x0_ = box.xmin;
  y0_ = box.ymin;
  if (wx > 0.0 || wy > 0.0) {
    cell_ = std::max(std::sqrt(wx * wy / target), std::max(wx, wy) / target);
    nx_ = static_cast<std::int64_t>(wx / cell_) + 1;
    ny_ = static_cast<std::int64_t>(wy / cell_) + 1;
  }

  const auto cell_of = [this](Point p) {
    const auto ix = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((p.x - x0_) / cell_)), 0, nx_ - 1);
    const auto iy = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((p.y - y0_) / cell_)), 0, ny_ - 1);
    return static_cast<std::size_t>(ix * ny_ + iy);
  };

  const std::size_t cells = static_cast<std::size_t>(nx_ * ny_);
  cell_start_.assign(cells + 1, 0);
  std::vector<std::uint32_t> cell_id(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    cell_id[k] = static_cast<std::uint32_t>(cell_of(points[k]));
    ++cell_start_[cell_id[k] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) cell_start_[c + 1] += cell_start_[c];
  std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  xs_.resize(points.size());
  ys_.resize(points.size());
  original_.resize(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const std::uint32_t slot = fill[cell_id[k]]++;
    xs_[slot] = points[k].x;
    ys_[slot] = points[k].y;
    original_[slot] = static_cast<std::uint32_t>(k);
  }
}

template <typename Visit>
void GridIndex::search(Point q, Visit&& visit) const {
  // Visits cells in Chebyshev rings around q's (clamped) cell. Points beyond
  // ring r are at least (r − ½)·cell away; the half-cell margin absorbs
  // rounding in the cell assignment.
  const auto cx = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((q.x - x0_) / cell_)), 0, nx_ - 1);
  const auto cy = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((q.y - y0_) / cell_)), 0, ny_ - 1);
  const std::int64_t r_max = std::max({cx, nx_ - 1 - cx, cy, ny_ - 1 - cy});
  double best = kInf;
  auto scan = [&](std::int64_t ix, std::int64_t iy) {
    if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) return;
    const auto c = static_cast<std::size_t>(ix * ny_ + iy);
    for (std::uint32_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
      const double d2 = squared_distance(q, Point{xs_[k], ys_[k]});
      best = visit(d2, k, best);
    }
  };
  for (std::int64_t r = 0; r <= r_max; ++r) {
    if (r == 0) {
      scan(cx, cy);
      if (best == 0.0) return;
    } else {
      for (std::int64_t ix = cx - r; ix <= cx + r; ++ix) {
        scan(ix, cy - r);
        scan(ix, cy + r);
      }
      for (std::int64_t iy = cy - r + 1; iy <= cy + r - 1; ++iy) {
        scan(cx - r, iy);
        scan(cx + r, iy);
      }
      const double reach = (static_cast<double>(r) - 0.5) * cell_;
      if (best <= reach * reach) return;
    }
  }
}

double GridIndex::nearest_squared(Point q) const {
  double result = kInf;
  search(q, [&](double d2, std::uint32_t, double best) {
    result = std::min(best, d2);
    return result;
  });
  return result;
}

std::size_t GridIndex::nearest(Point q) const {
  double result = kInf;
  std::uint32_t index = std::numeric_limits<std::uint32_t>::max();
  search(q, [&](double d2, std::uint32_t slot, double best) {
    if (d2 < best || (d2 == best && original_[slot] < index)) {
      result = d2;
      index = original_[slot];
    }
    return result;
  });
  return index;
}

// ---------------------------------------------------------------------------
// Semidistance

double semidistance_serial(std::span<const Point> a, std::span<const Point> b) {
  double worst = 0.0;
  for (Point p : a) {
    double best = kInf;
    for (Point q : b) best = std::min(best, squared_distance(p, q));
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

double semidistance_parallel(std::span<const Point> a, std::span<const Point> b) {
  double worst = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    double best = kInf;
    for (Point q : b) best = std::min(best, squared_distance(a[static_cast<std::size_t>(k)], q));
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

double semidistance_grid(std::span<const Point> a, const GridIndex& b) {
  double worst = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for reduction(max : worst) schedule(dynamic, 4096)
  for (std::ptrdiff_t k = 0; k < n; ++k)
    worst = std::max(worst, b.nearest_squared(a[static_cast<std::size_t>(k)]));
  return std::sqrt(worst);
}

// ---------------------------------------------------------------------------
// Diameter

double diameter_serial(std::span<const Point> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, squared_distance(points[i], points[j]));
  return std::sqrt(best);
}

std::vector<Point> convex_hull(std::span<const Point> pts) {
  if (pts.size() < 3) return {pts.begin(), pts.end()};
  auto cross = [](Point o, Point a, Point b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (Point p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double diameter_hull(std::span<const Point> sorted_points) {
  const auto hull = convex_hull(sorted_points);
  return diameter_serial(hull);
}

// ---------------------------------------------------------------------------
// Map application and canonical ordering

std::vector<Point> map_union_serial(std::span<const AffineMap> maps, std::span<const Point> points) {
  std::vector<Point> out;
  out.reserve(maps.size() * points.size());
  for (const auto& f : maps)
    for (Point p : points) out.push_back(f(p));
  return out;
}

std::vector<Point> map_union_parallel(std::span<const AffineMap> maps, std::span<const Point> points) {
  std::vector<Point> out(maps.size() * points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  for (std::size_t m = 0; m < maps.size(); ++m) {
    const AffineMap f = maps[m];
    Point* dst = out.data() + m * points.size();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) dst[k] = f(points[static_cast<std::size_t>(k)]);
  }
  return out;
}

void canonicalize(std::vector<Point>& points) {
#ifdef MIFS_PARALLEL_SORT
  if (omp_get_max_threads() > 1 && points.size() > (1u << 16))
    __gnu_parallel::sort(points.begin(), points.end());
  else
    std::sort(points.begin(), points.end());
#else
  std::sort(points.begin(), points.end());
#endif
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

Point snap(Point p, double delta) {
  // Adding +0.0 turns a negative zero into positive zero.
  return {std::round(p.x / delta) * delta + 0.0, std::round(p.y / delta) * delta + 0.0};
}

std::vector<Point> map_union_snapped_serial(std::span<const AffineMap> maps,
                                            std::span<const Point> points, double delta) {
  auto out = map_union_serial(maps, points);
  for (auto& p : out) p = snap(p, delta);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// The bitmap must stay small relative to the cloud, or clearing it dominates.
constexpr double kMaxBitmapCells = double(std::uint64_t{1} << 30);
constexpr double kMinBitmapBudget = double(std::uint64_t{1} << 24);
constexpr double kCellsPerPoint = 64.0;

}  // namespace

std::vector<Point> map_union_snapped(std::span<const AffineMap> maps, std::span<const Point> points,
                                     double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("snap resolution must be positive");
  if (points.empty() || maps.empty()) return {};

  // Bounding box of the image: an affine map sends a box to the hull of its corners.
  const Box src = bounding_box(points);
  Box dst;
  for (const auto& f : maps)
    for (Point c : {Point{src.xmin, src.ymin}, Point{src.xmin, src.ymax}, Point{src.xmax, src.ymin},
                    Point{src.xmax, src.ymax}})
      dst.add(f(c));
  // One lattice cell of slack on each side covers rounding of the corner images.
  const double kx_min = std::floor(dst.xmin / delta) - 1.0, kx_max = std::ceil(dst.xmax / delta) + 1.0;
  const double ky_min = std::floor(dst.ymin / delta) - 1.0, ky_max = std::ceil(dst.ymax / delta) + 1.0;
  const double span_x = kx_max - kx_min + 1.0, span_y = ky_max - ky_min + 1.0;
  const double budget = std::min(kMaxBitmapCells,
                                 std::max(kMinBitmapBudget, kCellsPerPoint * double(points.size() * maps.size())));
  if (!(span_x * span_y <= budget))
    return map_union_snapped_serial(maps, points, delta);

  const auto kx0 = static_cast<std::int64_t>(kx_min);
  const auto ky0 = static_cast<std::int64_t>(ky_min);
  const auto ny = static_cast<std::uint64_t>(span_y);
  const auto cells = static_cast<std::uint64_t>(span_x) * ny;
  std::vector<std::uint64_t> bits((cells + 63) / 64, 0);

  const auto n = static_cast<std::ptrdiff_t>(points.size());
  for (const auto& f : maps) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const Point q = f(points[static_cast<std::size_t>(k)]);
      const auto ix = static_cast<std::int64_t>(std::round(q.x / delta)) - kx0;
      const auto iy = static_cast<std::int64_t>(std::round(q.y / delta)) - ky0;
      const auto cell = static_cast<std::uint64_t>(ix) * ny + static_cast<std::uint64_t>(iy);
      std::atomic_ref<std::uint64_t>(bits[cell / 64]).fetch_or(std::uint64_t{1} << (cell % 64),
                                                                std::memory_order_relaxed);
    }
  }

  std::size_t count = 0;
  for (auto w : bits) count += static_cast<std::size_t>(std::popcount(w));
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t w = 0; w < bits.size(); ++w) {
    for (std::uint64_t word = bits[w]; word != 0; word &= word - 1) {
      const std::uint64_t cell = w * 64 + static_cast<std::uint64_t>(std::countr_zero(word));
      const auto ix = static_cast<std::int64_t>(cell / ny) + kx0;
      const auto iy = static_cast<std::int64_t>(cell % ny) + ky0;
      out.push_back({static_cast<double>(ix) * delta, static_cast<double>(iy) * delta});
    }
  }
  return out;
}

}  // namespace mifs::kernels
