#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mifs/codespace.hpp"
#include "mifs/geometry.hpp"
#include "mifs/point_set.hpp"

namespace mifs {

/// Alphabet partition (I, J), one affine map per letter, and the contraction constant a.
class MixedSystem {
 public:
  /// `maps[k]` belongs to the letter with index k. Throws std::invalid_argument
  /// on a size mismatch, non-finite coefficients, or a ∉ [0, 1).
  MixedSystem(AlphabetPtr alphabet, std::vector<AffineMap> maps, double contraction_a);

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  double contraction() const noexcept { return a_; }
  const AffineMap& map(Letter l) const { return maps_.at(l.index); }
  std::span<const AffineMap> maps() const noexcept { return maps_; }

  /// The subsystem S_I (J removed).
  MixedSystem restricted_to_I() const;

 private:
  AlphabetPtr alphabet_;
  std::vector<AffineMap> maps_;
  double a_;
};

/// The example system on ℝ²: I = {1,2,3}, J = {4}, a = 1/2.
MixedSystem example_system(double contraction_a = 0.5);

// ---------------------------------------------------------------------------
// Validation

struct LetterCheck {
  Letter letter;
  LetterClass cls = LetterClass::I;
  double lipschitz = 0.0;
  bool nonexpansive = true;   // lip ≤ 1
  bool contractive = true;    // I: lip ≤ a; J: every sampled orbit ratio ≤ a
  double worst_orbit_ratio = 0.0;  // J only
  std::size_t orbit_samples = 0;   // J only
};

struct ValidationWitness {
  Letter letter;
  std::string condition;
  Point y, z;        // sampled orbit pair (J letters)
  double ratio = 0;  // measured Lipschitz ratio
};

struct ValidationReport {
  std::vector<LetterCheck> letters;
  std::optional<ValidationWitness> witness;
  bool passed = true;
  /// The orbit condition on J letters is checked by sampling only.
  bool sampled_only = true;

  std::string summary(const Alphabet& alphabet) const;
};

ValidationReport validate_system(const MixedSystem& sys, std::size_t trials = 2000,
                                 std::uint64_t seed = 0x76a11d);
/// Throws ValidationFailure carrying the witness when the report failed.
void require_valid(const ValidationReport& report, const Alphabet& alphabet);

// ---------------------------------------------------------------------------
// Words and the fractal operator

/// f_α(x) = f_{α₁}(f_{α₂}(…f_{α_n}(x)…)); f_λ is the identity.
Point apply_word(const MixedSystem& sys, const FiniteWord& alpha, Point x);
/// The single affine map f_α.
AffineMap compose_word(const MixedSystem& sys, const FiniteWord& alpha);

/// F_S(B) = ∪_i f_i(B).
PointSet fractal_step(const MixedSystem& sys, const PointSet& b);
/// decimate(F_S(B), delta), computed without materializing F_S(B).
PointSet fractal_step(const MixedSystem& sys, const PointSet& b, double delta);

struct AttractorOptions {
  std::size_t max_iters = 20;
  double stop_h = 0.0;   // stop once h(B_n, B_{n+1}) < stop_h
  double delta = 1e-4;   // 0 disables decimation
};

enum class StopReason { Converged, BudgetExceeded, NoIterations };

struct AttractorApprox {
  PointSet cloud;
  std::size_t iterations = 0;
  std::vector<double> successive_h;  // h(B_n, B_{n+1})
  double delta = 0.0;
  StopReason stop = StopReason::NoIterations;
  /// Upper bound on h(cloud, F_S^[n](B0)) caused by decimation: n·δ·√2/2.
  double decimation_slack = 0.0;
};

AttractorApprox iterate_attractor(const MixedSystem& sys, const PointSet& b0, const AttractorOptions& options = {});

const char* to_string(StopReason reason);

// ---------------------------------------------------------------------------
// Orbits

enum class OrbitFamily { JOnly, Mixed };

struct OrbitSampling {
  std::size_t depth = 48;
  std::size_t width = 128;
  std::uint64_t seed = 0x0b17;
  double safety = 2.0;
};

/// JOnly: the J-word tree of depth ≤ depth (sampled past 65536 nodes);
/// Mixed: `width` random words over I ∪ J of length `depth`, with every
/// intermediate point. Always contains x.
PointSet orbit_sample(const MixedSystem& sys, Point x, OrbitFamily family, std::size_t depth,
                      std::size_t width, std::uint64_t seed);

/// Estimated orbit diameters (N̂_J, N̂_𝔖) with the safety factor applied.
struct OrbitBound {
  double j = 0.0;
  double mixed = 0.0;
};

OrbitBound estimate_orbit_bound(const MixedSystem& sys, Point x, const OrbitSampling& sampling = {});
/// Supremum over B. The sampled diameters are convex in x, so the hull vertices suffice.
OrbitBound estimate_orbit_bound(const MixedSystem& sys, const PointSet& b, const OrbitSampling& sampling = {});
/// N̂_J alone, which is all an all-J tail needs.
double estimate_j_orbit_bound(const MixedSystem& sys, std::span<const Point> points, const OrbitSampling& sampling = {});

}  // namespace mifs
