#pragma once

#include <cmath>
#include <compare>

namespace mifs {

/// Point of (ℝ², ‖·‖₂). Ordered lexicographically (x, then y).
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
};

inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Every distance in the library goes through these two functions so that
// brute-force, parallel and grid-indexed searches compare bit-identical values.
constexpr double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double point_distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

/// Row-major 2×2 matrix.
struct Matrix2 {
  double a11 = 1.0, a12 = 0.0;
  double a21 = 0.0, a22 = 1.0;

  friend constexpr bool operator==(const Matrix2&, const Matrix2&) = default;

  constexpr Point operator*(Point p) const { return {a11 * p.x + a12 * p.y, a21 * p.x + a22 * p.y}; }
  constexpr Matrix2 operator*(const Matrix2& m) const {
    return {a11 * m.a11 + a12 * m.a21, a11 * m.a12 + a12 * m.a22,
            a21 * m.a11 + a22 * m.a21, a21 * m.a12 + a22 * m.a22};
  }
  constexpr double determinant() const { return a11 * a22 - a12 * a21; }

  /// Largest singular value, i.e. the operator 2-norm.
  double spectral_norm() const;
};

/// x ↦ linear·x + translation.
struct AffineMap {
  Matrix2 linear;
  Point translation;

  static constexpr AffineMap identity() { return {}; }

  friend constexpr bool operator==(const AffineMap&, const AffineMap&) = default;

  constexpr Point operator()(Point p) const { return linear * p + translation; }

  /// Lipschitz constant with respect to the Euclidean metric.
  double lipschitz() const { return linear.spectral_norm(); }
};

/// outer ∘ inner.
constexpr AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
  return {outer.linear * inner.linear, outer(inner.translation)};
}

}  // namespace mifs
