#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mifs/codespace.hpp"
#include "mifs/point_set.hpp"
#include "mifs/system.hpp"

namespace mifs {

struct ProjectionOptions {
  double tol = 1e-9;
  std::size_t max_steps = 1'000'000;
  OrbitSampling orbit;
};

/// A limit point with the stopping bound that certified it. The bound is
/// conditional on the sampled orbit diameters in `orbit_bound`.
struct ProjectionValue {
  Point value;
  double error_bound = 0.0;
  std::size_t iterations = 0;
  std::size_t i_letters_consumed = 0;
  OrbitBound orbit_bound;

  /// `value=(x,y) bound=<b> iters=<n> nI=<c>`
  std::string to_record() const;
};

/// The composite f_{[α]_n} for the first n whose stopping bound is below tol.
/// `bound` holds for every start point whose orbit diameters are covered by
/// `orbit`; an infinite `orbit.mixed` restricts the rule to the all-J tail bound.
struct StreamLimit {
  AffineMap composite;
  double bound = 0.0;
  std::size_t iterations = 0;
  std::size_t i_letters = 0;
};

/// Throws NotClassified, BudgetExceeded.
StreamLimit resolve_stream_limit(const MixedSystem& sys, const AddressStream& alpha, const OrbitBound& orbit,
                                 double tol, std::size_t max_steps);

/// a_α(x) = lim f_{[α]_n}(x).
ProjectionValue project_stream(const MixedSystem& sys, const AddressStream& alpha, Point x,
                               const ProjectionOptions& options = {});
/// 𝒜_σ(x) = f_{β₀} ∘ a_{γ₁} ∘ f_{β₁} ∘ … ∘ a_{γ_n} ∘ f_{β_n}(x), each γ block at tol/n.
ProjectionValue project_sigma0(const MixedSystem& sys, const Sigma0Word& sigma, Point x,
                               const ProjectionOptions& options = {});
/// π(σ, x).
ProjectionValue canonical_projection(const MixedSystem& sys, const SigmaWord& sigma, Point x,
                                     const ProjectionOptions& options = {});

/// d(π(iσ, x), f_i(π(σ, x))).
double equivariance_residual(const MixedSystem& sys, Letter i, const SigmaWord& sigma, Point x,
                             const ProjectionOptions& options = {});

struct SetImage {
  PointSet cloud;
  double error_bound = 0.0;  // holds uniformly over the input set
};

SetImage image_of_set(const MixedSystem& sys, const AddressStream& alpha, const PointSet& b,
                      const ProjectionOptions& options = {});
SetImage image_of_set(const MixedSystem& sys, const SigmaWord& sigma, const PointSet& b,
                      const ProjectionOptions& options = {});

struct NestedStep {
  std::size_t n = 0;
  std::size_t i_letters = 0;  // n_I([α]_n)
  double distance = 0.0;      // h(f_{[α]_n}(B), {a_α})
};

struct NestedDiagnostic {
  Point limit;
  double limit_bound = 0.0;
  double inclusion = 0.0;  // upper bound on D(F_S(B), B)
  std::vector<NestedStep> steps;
};

/// Requires D(F_S(B), B) ≤ inclusion_delta (throws PreconditionFailed) and a
/// Σ₁ stream (throws WrongClass). Steps cover n = 1..n_max.
NestedDiagnostic nested_diagnostic(const MixedSystem& sys, const AddressStream& alpha, const PointSet& b,
                                   std::size_t n_max, double inclusion_delta, const ProjectionOptions& options = {});

/// a_α(B) = f_{[α]_{n*}}(a_γ(B)) for α = [α]_{n*}γ with γ ∈ Λ(J).
struct Sigma0Factorization {
  FiniteWord head;
  AddressStream tail;
  PointSet tail_image;
  PointSet composed;
  double error_bound = 0.0;
};

/// Throws WrongClass when α has infinitely many I-letters.
Sigma0Factorization sigma0_factorization(const MixedSystem& sys, const AddressStream& alpha, const PointSet& b,
                                         const ProjectionOptions& options = {});

struct SampleOptions {
  std::size_t count = 50'000;
  double sigma1_fraction = 0.5;
  std::uint64_t seed = 0x5a3b1e;
  SigmaShape shape;
  ProjectionOptions projection{1e-6, 1'000'000, {}};
};

struct SampledL {
  PointSet cloud;
  std::size_t sigma0_words = 0;
  std::size_t sigma1_words = 0;
  std::size_t dropped = 0;  // projections that exhausted their step budget
  std::uint64_t seed = 0;
};

/// Projects `count` random (σ, x ∈ B) pairs. Sample s uses derive_seed(seed, s);
/// the first round(sigma1_fraction·count) samples are Σ₁ words.
SampledL sample_L(const MixedSystem& sys, const PointSet& b, const SampleOptions& options = {});

}  // namespace mifs
