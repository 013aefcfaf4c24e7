#include "mifs/geometry.hpp"

#include <algorithm>

namespace mifs {

double Matrix2::spectral_norm() const {
  // σ_max = (‖(a11+a22, a21−a12)‖ + ‖(a11−a22, a21+a12)‖) / 2, which is exact for
  // diagonal and conformal matrices and avoids the cancellation in the
  // eigenvalue formula for AᵀA.
  const double p = std::hypot(a11 + a22, a21 - a12);
  const double q = std::hypot(a11 - a22, a21 + a12);
  return 0.5 * (p + q);
}

}  // namespace mifs
