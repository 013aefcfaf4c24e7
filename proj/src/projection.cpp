#include "mifs/projection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include "mifs/error.hpp"
#include "mifs/kernels.hpp"
#include "mifs/random.hpp"

namespace mifs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

StreamClassification classify_or_throw(const AddressStream& alpha) {
  try {
    return classify_sigma(alpha);
  } catch (const Undecidable& e) {
    throw NotClassified(e.what());
  }
}

void apply_in_place(const AffineMap& f, std::vector<Point>& pts) {
  for (auto& p : pts) p = f(p);
}

PointSet hull_or_self(std::span<const Point> pts) {
  std::vector<Point> v(pts.begin(), pts.end());
  kernels::canonicalize(v);
  if (v.size() > 2) v = kernels::convex_hull(v);
  return PointSet::from_canonical(std::move(v));
}

/// Orbit bound sufficient for streaming α from any of `pts`.
OrbitBound stream_orbit_bound(const MixedSystem& sys, const StreamClassification& cls, std::span<const Point> pts,
                              const OrbitSampling& sampling) {
  if (std::holds_alternative<AllJTail>(cls)) return {estimate_j_orbit_bound(sys, pts, sampling), kInf};
  return estimate_orbit_bound(sys, hull_or_self(pts), sampling);
}

struct Staged {
  std::vector<Point> points;
  double bound = 0.0;
  std::size_t iterations = 0;
  std::size_t i_letters = 0;
  OrbitBound orbit{0.0, kInf};
};

Staged stream_image(const MixedSystem& sys, const AddressStream& alpha, std::vector<Point> pts,
                    const ProjectionOptions& options, std::optional<OrbitBound> known = std::nullopt) {
  const auto cls = classify_or_throw(alpha);
  const OrbitBound orbit = known ? *known : stream_orbit_bound(sys, cls, pts, options.orbit);
  const StreamLimit lim = resolve_stream_limit(sys, alpha, orbit, options.tol, options.max_steps);
  apply_in_place(lim.composite, pts);
  return {std::move(pts), lim.bound, lim.iterations, lim.i_letters, orbit};
}

Staged sigma0_image(const MixedSystem& sys, const Sigma0Word& sigma, std::vector<Point> pts,
                    const ProjectionOptions& options) {
  const auto blocks = sigma.blocks();
  const double stage_tol = options.tol / static_cast<double>(blocks.size());
  Staged out;
  auto apply_beta = [&](const FiniteWord& beta) {
    apply_in_place(compose_word(sys, beta), pts);
    out.iterations += beta.length();
    out.i_letters += n_I_count(beta);
  };
  // Right to left: f_{β_n} first, then a_{γ_n}, f_{β_{n−1}}, …, f_{β₀}.
  for (std::size_t k = blocks.size(); k-- > 0;) {
    apply_beta(blocks[k].beta);
    const double j = estimate_j_orbit_bound(sys, pts, options.orbit);
    const StreamLimit lim = resolve_stream_limit(sys, blocks[k].gamma, {j, kInf}, stage_tol, options.max_steps);
    apply_in_place(lim.composite, pts);
    // Later maps are 1-Lipschitz, so stage errors add without amplification.
    out.bound += lim.bound;
    out.iterations += lim.iterations;
    out.orbit.j = std::max(out.orbit.j, j);
  }
  apply_beta(sigma.beta0());
  out.points = std::move(pts);
  return out;
}

Staged sigma_image(const MixedSystem& sys, const SigmaWord& sigma, std::vector<Point> pts,
                   const ProjectionOptions& options) {
  if (const auto* s1 = std::get_if<Sigma1Word>(&sigma)) return stream_image(sys, s1->stream(), std::move(pts), options);
  return sigma0_image(sys, std::get<Sigma0Word>(sigma), std::move(pts), options);
}

ProjectionValue to_value(Staged s) {
  return {s.points.front(), s.bound, s.iterations, s.i_letters, s.orbit};
}

void check_tol(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

}  // namespace

std::string ProjectionValue::to_record() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "value=(%.17g,%.17g) bound=%.6g iters=%zu nI=%zu", value.x, value.y, error_bound,
                iterations, i_letters_consumed);
  return buf;
}

StreamLimit resolve_stream_limit(const MixedSystem& sys, const AddressStream& alpha, const OrbitBound& orbit,
                                 double tol, std::size_t max_steps) {
  check_tol(tol);
  if (!same_alphabet(sys.alphabet(), alpha.alphabet())) throw AlphabetMismatch();
  const auto cls = classify_or_throw(alpha);
  const Alphabet& letters = *sys.alphabet();
  const double a = sys.contraction();
  const std::size_t tail_start =
      std::holds_alternative<AllJTail>(cls) ? std::get<AllJTail>(cls).head.length() : std::numeric_limits<std::size_t>::max();

  StreamLimit out{AffineMap::identity(), kInf, 0, 0};
  double a_c = 1.0;  // a^{I-letters consumed}
  double a_m = 1.0;  // a^{J-letters consumed inside the all-J tail}
  const double mixed_term = std::isfinite(orbit.mixed) ? 2.0 * orbit.j + orbit.mixed / (1.0 - a) : kInf;
  for (std::size_t n = 0;; ++n) {
    double b = std::isfinite(mixed_term) ? a_c * mixed_term : kInf;
    if (n >= tail_start) b = std::min(b, a_m * orbit.j);
    out.bound = b;
    if (b < tol) return out;
    if (n == max_steps) throw BudgetExceeded(max_steps, b);
    const Letter l = alpha.letter_at(n + 1);
    out.composite = compose(out.composite, sys.map(l));
    ++out.iterations;
    if (letters.in_I(l)) {
      ++out.i_letters;
      a_c *= a;
    }
    if (n + 1 > tail_start) a_m *= a;
  }
}

ProjectionValue project_stream(const MixedSystem& sys, const AddressStream& alpha, Point x,
                               const ProjectionOptions& options) {
  return to_value(stream_image(sys, alpha, {x}, options));
}

ProjectionValue project_sigma0(const MixedSystem& sys, const Sigma0Word& sigma, Point x,
                               const ProjectionOptions& options) {
  check_tol(options.tol);
  if (!same_alphabet(sys.alphabet(), sigma.alphabet())) throw AlphabetMismatch();
  return to_value(sigma0_image(sys, sigma, {x}, options));
}

ProjectionValue canonical_projection(const MixedSystem& sys, const SigmaWord& sigma, Point x,
                                     const ProjectionOptions& options) {
  if (const auto* s1 = std::get_if<Sigma1Word>(&sigma)) return project_stream(sys, s1->stream(), x, options);
  return project_sigma0(sys, std::get<Sigma0Word>(sigma), x, options);
}

double equivariance_residual(const MixedSystem& sys, Letter i, const SigmaWord& sigma, Point x,
                             const ProjectionOptions& options) {
  const Point lhs = canonical_projection(sys, prepend(i, sigma), x, options).value;
  const Point rhs = sys.map(i)(canonical_projection(sys, sigma, x, options).value);
  return point_distance(lhs, rhs);
}

SetImage image_of_set(const MixedSystem& sys, const AddressStream& alpha, const PointSet& b,
                      const ProjectionOptions& options) {
  auto s = stream_image(sys, alpha, {b.begin(), b.end()}, options);
  return {PointSet(std::move(s.points)), s.bound};
}

SetImage image_of_set(const MixedSystem& sys, const SigmaWord& sigma, const PointSet& b,
                      const ProjectionOptions& options) {
  check_tol(options.tol);
  if (!same_alphabet(sys.alphabet(), alphabet_of(sigma))) throw AlphabetMismatch();
  auto s = sigma_image(sys, sigma, {b.begin(), b.end()}, options);
  return {PointSet(std::move(s.points)), s.bound};
}

NestedDiagnostic nested_diagnostic(const MixedSystem& sys, const AddressStream& alpha, const PointSet& b,
                                   std::size_t n_max, double inclusion_delta, const ProjectionOptions& options) {
  if (!std::holds_alternative<Sigma1Word>(classify_or_throw(alpha)))
    throw WrongClass("nested diagnostic needs a stream with infinitely many I-letters");

  NestedDiagnostic out;
  // Cloud-level form of F_S(B) ⊆ B. Large clouds are compared through a
  // coarser snap of F_S(B), which adds at most δ·√2/2 to the measured value.
  if (b.size() * sys.maps().size() <= 200'000) {
    out.inclusion = semidistance(fractal_step(sys, b), b);
  } else {
    const double snap = inclusion_delta / 8.0;
    out.inclusion = semidistance(fractal_step(sys, b, snap), b) + snap * std::sqrt(2.0) / 2.0;
  }
  if (!(out.inclusion <= inclusion_delta))
    throw PreconditionFailed("D(F_S(B), B) exceeds the inclusion tolerance", out.inclusion);

  const ProjectionValue limit = project_stream(sys, alpha, b[0], options);
  out.limit = limit.value;
  out.limit_bound = limit.error_bound;

  AffineMap m = AffineMap::identity();
  std::size_t c = 0;
  const auto pts = b.points();
  const auto count = static_cast<std::ptrdiff_t>(pts.size());
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Letter l = alpha.letter_at(n);
    m = compose(m, sys.map(l));
    if (sys.alphabet()->in_I(l)) ++c;
    double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k)
      worst = std::max(worst, squared_distance(m(pts[static_cast<std::size_t>(k)]), out.limit));
    out.steps.push_back({n, c, std::sqrt(worst)});
  }
  return out;
}

Sigma0Factorization sigma0_factorization(const MixedSystem& sys, const AddressStream& alpha, const PointSet& b,
                                         const ProjectionOptions& options) {
  const auto cls = classify_or_throw(alpha);
  const auto* split = std::get_if<AllJTail>(&cls);
  if (!split) throw WrongClass("stream has infinitely many I-letters");
  const SetImage tail = image_of_set(sys, split->tail, b, options);
  const AffineMap head = compose_word(sys, split->head);
  std::vector<Point> composed(tail.cloud.begin(), tail.cloud.end());
  apply_in_place(head, composed);
  return {split->head, split->tail, tail.cloud, PointSet(std::move(composed)), tail.error_bound};
}

SampledL sample_L(const MixedSystem& sys, const PointSet& b, const SampleOptions& options) {
  if (options.count == 0) throw std::invalid_argument("sample count must be positive");
  if (!(options.sigma1_fraction >= 0.0 && options.sigma1_fraction <= 1.0))
    throw std::invalid_argument("sigma1 fraction must lie in [0, 1]");
  check_tol(options.projection.tol);

  const auto n1 = static_cast<std::size_t>(std::llround(options.sigma1_fraction * static_cast<double>(options.count)));
  // Σ₁ samples start from points of B, so one bound over B serves all of them.
  const OrbitBound over_b = n1 > 0 ? estimate_orbit_bound(sys, b, options.projection.orbit) : OrbitBound{};

  std::vector<Point> values(options.count);
  std::vector<unsigned char> ok(options.count, 0);
  const auto count = static_cast<std::ptrdiff_t>(options.count);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t s = 0; s < count; ++s) {
    const auto k = static_cast<std::size_t>(s);
    const std::uint64_t seed = derive_seed(options.seed, k);
    const Point x = b[derive_seed(seed, 0x78) % b.size()];
    try {
      if (k < n1) {
        const auto sigma = random_sigma_word(sys.alphabet(), SigmaKind::Sigma1, seed, options.shape);
        values[k] = stream_image(sys, std::get<Sigma1Word>(sigma).stream(), {x}, options.projection, over_b).points[0];
      } else {
        const auto sigma = random_sigma_word(sys.alphabet(), SigmaKind::Sigma0, seed, options.shape);
        values[k] = sigma0_image(sys, std::get<Sigma0Word>(sigma), {x}, options.projection).points[0];
      }
      ok[k] = 1;
    } catch (const BudgetExceeded&) {
    }
  }

  SampledL out{PointSet::singleton(b[0]), 0, 0, 0, options.seed};
  std::vector<Point> kept;
  kept.reserve(options.count);
  for (std::size_t k = 0; k < options.count; ++k) {
    if (!ok[k]) {
      ++out.dropped;
      continue;
    }
    kept.push_back(values[k]);
    ++(k < n1 ? out.sigma1_words : out.sigma0_words);
  }
  if (kept.empty()) throw BudgetExceeded(options.projection.max_steps, kInf);
  out.cloud = PointSet(std::move(kept));
  return out;
}

}  // namespace mifs
