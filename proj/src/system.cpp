#include "mifs/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mifs/error.hpp"
#include "mifs/kernels.hpp"
#include "mifs/random.hpp"

namespace mifs {

namespace {

constexpr double kLipSlack = 1e-12;
constexpr std::size_t kFullTreeCap = 65536;

bool finite_map(const AffineMap& f) {
  const auto& m = f.linear;
  return std::isfinite(m.a11) && std::isfinite(m.a12) && std::isfinite(m.a21) && std::isfinite(m.a22) &&
         is_finite(f.translation);
}

std::vector<Point> hull_vertices(const PointSet& b) {
  if (b.size() <= 2) return {b.begin(), b.end()};
  return kernels::convex_hull(b.points());
}

}  // namespace

MixedSystem::MixedSystem(AlphabetPtr alphabet, std::vector<AffineMap> maps, double contraction_a)
    : alphabet_(std::move(alphabet)), maps_(std::move(maps)), a_(contraction_a) {
  if (!alphabet_) throw std::invalid_argument("system needs an alphabet");
  if (maps_.size() != alphabet_->size()) throw std::invalid_argument("one map per letter is required");
  if (!(a_ >= 0.0 && a_ < 1.0)) throw std::invalid_argument("contraction constant must lie in [0, 1)");
  for (const auto& f : maps_)
    if (!finite_map(f)) throw std::invalid_argument("map coefficients must be finite");
}

MixedSystem MixedSystem::restricted_to_I() const {
  std::vector<Alphabet::Entry> entries;
  std::vector<AffineMap> maps;
  for (Letter l : alphabet_->letters_I()) {
    entries.push_back({alphabet_->label(l), LetterClass::I});
    maps.push_back(maps_[l.index]);
  }
  return MixedSystem(Alphabet::create(std::move(entries)), std::move(maps), a_);
}

MixedSystem example_system(double contraction_a) {
  const double r3_4 = std::sqrt(3.0) / 4.0;
  std::vector<AffineMap> maps{
      {{0.5, 0.0, 0.0, 0.5}, {0.0, 0.0}},
      {{0.5, 0.0, 0.0, 0.5}, {0.5, 0.0}},
      {{0.5, 0.0, 0.0, 0.5}, {0.25, r3_4}},
      {{1.0, 0.0, 0.0, 0.2}, {0.0, 0.0}},
  };
  return MixedSystem(Alphabet::create({"1", "2", "3"}, {"4"}), std::move(maps), contraction_a);
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_system(const MixedSystem& sys, std::size_t trials, std::uint64_t seed) {
  const Alphabet& alpha = *sys.alphabet();
  const double a = sys.contraction();
  const auto js = alpha.letters_J();
  ValidationReport report;

  auto fail = [&](ValidationWitness w) {
    report.passed = false;
    if (!report.witness) report.witness = std::move(w);
  };

  for (Letter l : alpha.letters()) {
    LetterCheck check;
    check.letter = l;
    check.cls = alpha.class_of(l);
    check.lipschitz = sys.map(l).lipschitz();
    check.nonexpansive = check.lipschitz <= 1.0 + kLipSlack;
    if (!check.nonexpansive) fail({l, "lip <= 1", {}, {}, check.lipschitz});
    if (check.cls == LetterClass::I) {
      check.contractive = check.lipschitz <= a + kLipSlack;
      if (!check.contractive) fail({l, "lip <= a", {}, {}, check.lipschitz});
    } else {
      // Pairs y = f_u(x), z = f_v(x) on a common J-orbit.
      const AffineMap& fj = sys.map(l);
      for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, l.index, t);
        const Point x{40.0 * unit_interval(derive_seed(s, 0)) - 20.0, 40.0 * unit_interval(derive_seed(s, 1)) - 20.0};
        auto walk = [&](std::uint64_t stream) {
          Point p = x;
          const std::size_t len = derive_seed(s, stream) % 9;
          for (std::size_t k = 0; k < len; ++k) p = sys.map(js[derive_seed(s, stream, k) % js.size()])(p);
          return p;
        };
        const Point y = walk(2);
        const Point z = walk(3);
        const double d = point_distance(y, z);
        if (d == 0.0) continue;
        const double image = point_distance(fj(y), fj(z));
        const double ratio = image / d;
        ++check.orbit_samples;
        check.worst_orbit_ratio = std::max(check.worst_orbit_ratio, ratio);
        if (image > a * d + kLipSlack) {
          if (check.contractive) fail({l, "orbit lip <= a", y, z, ratio});
          check.contractive = false;
        }
      }
    }
    report.letters.push_back(check);
  }
  return report;
}

std::string ValidationReport::summary(const Alphabet& alphabet) const {
  std::ostringstream out;
  out.precision(6);
  for (const auto& c : letters) {
    out << "letter " << alphabet.label(c.letter) << " (" << (c.cls == LetterClass::I ? 'I' : 'J')
        << ")  lip=" << c.lipschitz;
    if (c.cls == LetterClass::J)
      out << "  orbit_ratio<=" << c.worst_orbit_ratio << " over " << c.orbit_samples << " pairs";
    out << "  " << (c.nonexpansive && c.contractive ? "ok" : "FAIL") << '\n';
  }
  if (witness) {
    out << "witness: letter " << alphabet.label(witness->letter) << " violates " << witness->condition
        << " (ratio " << witness->ratio << ")";
    if (witness->condition == "orbit lip <= a")
      out << " at y=(" << witness->y.x << "," << witness->y.y << ") z=(" << witness->z.x << "," << witness->z.y << ")";
    out << '\n';
  }
  out << (passed ? "PASS" : "FAIL");
  if (sampled_only) out << " (J orbit condition sampled only)";
  out << '\n';
  return out.str();
}

void require_valid(const ValidationReport& report, const Alphabet& alphabet) {
  if (!report.passed) throw ValidationFailure(report.summary(alphabet));
}

// ---------------------------------------------------------------------------
// Words and the fractal operator

Point apply_word(const MixedSystem& sys, const FiniteWord& alpha, Point x) {
  if (!same_alphabet(sys.alphabet(), alpha.alphabet())) throw AlphabetMismatch();
  const auto letters = alpha.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) x = sys.map(*it)(x);
  return x;
}

AffineMap compose_word(const MixedSystem& sys, const FiniteWord& alpha) {
  if (!same_alphabet(sys.alphabet(), alpha.alphabet())) throw AlphabetMismatch();
  AffineMap m = AffineMap::identity();
  for (Letter l : alpha.letters()) m = compose(m, sys.map(l));
  return m;
}

PointSet fractal_step(const MixedSystem& sys, const PointSet& b) {
  auto out = kernels::map_union_parallel(sys.maps(), b.points());
  kernels::canonicalize(out);
  return PointSet::from_canonical(std::move(out));
}

PointSet fractal_step(const MixedSystem& sys, const PointSet& b, double delta) {
  if (delta == 0.0) return fractal_step(sys, b);
  return PointSet::from_canonical(kernels::map_union_snapped(sys.maps(), b.points(), delta));
}

AttractorApprox iterate_attractor(const MixedSystem& sys, const PointSet& b0, const AttractorOptions& options) {
  if (options.delta < 0.0) throw std::invalid_argument("decimation resolution must be non-negative");
  AttractorApprox out{b0, 0, {}, options.delta, StopReason::NoIterations, 0.0};
  PointSet current = b0;
  for (std::size_t n = 0; n < options.max_iters; ++n) {
    PointSet next = fractal_step(sys, current, options.delta);
    const double h = hausdorff(current, next);
    out.successive_h.push_back(h);
    current = std::move(next);
    ++out.iterations;
    if (h < options.stop_h) {
      out.stop = StopReason::Converged;
      break;
    }
  }
  if (out.iterations == options.max_iters && options.max_iters > 0 && out.stop != StopReason::Converged)
    out.stop = StopReason::BudgetExceeded;
  out.cloud = std::move(current);
  out.decimation_slack = static_cast<double>(out.iterations) * options.delta * std::sqrt(2.0) / 2.0;
  return out;
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Converged: return "converged";
    case StopReason::BudgetExceeded: return "iteration budget reached";
    case StopReason::NoIterations: return "no iterations";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Orbits

namespace {

// Random walk w of length `depth`: letter at position k is drawn from
// derive_seed(seed, w, k), so samples for smaller depth/width are subsets.
void random_walks(const MixedSystem& sys, std::span<const Letter> letters, Point x, std::size_t depth,
                  std::size_t width, std::uint64_t seed, std::vector<Point>& out) {
  for (std::size_t w = 0; w < width; ++w) {
    Point p = x;
    for (std::size_t k = 0; k < depth; ++k) {
      p = sys.map(letters[derive_seed(seed, w, k) % letters.size()])(p);
      out.push_back(p);
    }
  }
}

std::vector<Point> j_orbit_points(const MixedSystem& sys, Point x, std::size_t depth, std::size_t width,
                                  std::uint64_t seed) {
  const auto js = sys.alphabet()->letters_J();
  std::vector<Point> out{x};
  if (js.empty()) return out;
  std::vector<Point> level{x};
  std::size_t full_depth = 0;
  while (full_depth < depth && out.size() + level.size() * js.size() <= kFullTreeCap) {
    std::vector<Point> next;
    next.reserve(level.size() * js.size());
    for (Letter j : js)
      for (Point p : level) next.push_back(sys.map(j)(p));
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
    ++full_depth;
  }
  if (full_depth < depth) random_walks(sys, js, x, depth, width, seed, out);
  return out;
}

std::vector<Point> mixed_orbit_points(const MixedSystem& sys, Point x, std::size_t depth, std::size_t width,
                                      std::uint64_t seed) {
  std::vector<Point> out{x};
  random_walks(sys, sys.alphabet()->letters(), x, depth, width, seed, out);
  return out;
}

double cloud_diameter(std::vector<Point> pts) {
  kernels::canonicalize(pts);
  return kernels::diameter_hull(pts);
}

}  // namespace

PointSet orbit_sample(const MixedSystem& sys, Point x, OrbitFamily family, std::size_t depth, std::size_t width,
                      std::uint64_t seed) {
  return PointSet(family == OrbitFamily::JOnly ? j_orbit_points(sys, x, depth, width, seed)
                                               : mixed_orbit_points(sys, x, depth, width, seed));
}

OrbitBound estimate_orbit_bound(const MixedSystem& sys, Point x, const OrbitSampling& s) {
  OrbitBound bound;
  bound.j = s.safety * cloud_diameter(j_orbit_points(sys, x, s.depth, s.width, s.seed));
  auto mixed = mixed_orbit_points(sys, x, s.depth, s.width, s.seed);
  for (const auto& f : sys.maps()) mixed.push_back(f(x));  // {x} ∪ F_S({x})
  bound.mixed = s.safety * cloud_diameter(std::move(mixed));
  return bound;
}

OrbitBound estimate_orbit_bound(const MixedSystem& sys, const PointSet& b, const OrbitSampling& s) {
  OrbitBound bound;
  for (Point v : hull_vertices(b)) {
    const OrbitBound at = estimate_orbit_bound(sys, v, s);
    bound.j = std::max(bound.j, at.j);
    bound.mixed = std::max(bound.mixed, at.mixed);
  }
  return bound;
}

double estimate_j_orbit_bound(const MixedSystem& sys, std::span<const Point> points, const OrbitSampling& s) {
  std::vector<Point> pts(points.begin(), points.end());
  kernels::canonicalize(pts);
  const auto vertices = pts.size() <= 2 ? pts : kernels::convex_hull(pts);
  double j = 0.0;
  for (Point v : vertices) j = std::max(j, s.safety * cloud_diameter(j_orbit_points(sys, v, s.depth, s.width, s.seed)));
  return j;
}

}  // namespace mifs
