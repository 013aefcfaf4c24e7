#include "mifs/properties.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "mifs/error.hpp"
#include "mifs/kernels.hpp"
#include "mifs/parallel.hpp"
#include "mifs/projection.hpp"
#include "mifs/random.hpp"
#include "mifs/word_spec.hpp"

namespace mifs {

namespace {

constexpr double kSlack = 1e-12;
constexpr double kTol = 1e-9;
constexpr double kMembershipSlack = 0.01;

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string show(Point p) { return fmt("(%.17g,%.17g)", p.x, p.y); }

// ---------------------------------------------------------------------------
// Shared state and random generators

struct Context {
  const MixedSystem& sys;   // ground truth: attractors, oracles
  const MixedSystem& proj;  // projection side (differs under fault injection)
  std::uint64_t seed;
  std::optional<PointSet> attractor14;  // F^[14]({(0,0)}) at δ = 1e-4
  std::optional<kernels::GridIndex> attractor14_index;

  const PointSet& reference_attractor() {
    if (!attractor14) attractor14 = iterate_attractor(sys, PointSet::singleton({0, 0}), {14, 0.0, 1e-4}).cloud;
    return *attractor14;
  }
  const kernels::GridIndex& reference_index() {
    if (!attractor14_index) attractor14_index.emplace(reference_attractor().points());
    return *attractor14_index;
  }
};

class Gen {
 public:
  Gen(const AlphabetPtr& alphabet, std::uint64_t seed) : alphabet_(alphabet), rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  std::uint64_t bits() { return rng_(); }
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Point point(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }

  Letter letter(std::span<const Letter> from) { return from[below(from.size())]; }
  Letter letter() { return letter(alphabet_->letters()); }

  FiniteWord word(std::size_t max_len, std::span<const Letter> from) {
    std::vector<Letter> out(below(max_len + 1));
    for (auto& l : out) l = letter(from);
    return FiniteWord(alphabet_, std::move(out));
  }
  FiniteWord word(std::size_t max_len) { return word(max_len, alphabet_->letters()); }

  FiniteWord nonempty_word(std::size_t max_len, std::span<const Letter> from) {
    std::vector<Letter> out(1 + below(max_len));
    for (auto& l : out) l = letter(from);
    return FiniteWord(alphabet_, std::move(out));
  }

  AddressStream periodic(std::size_t max_prefix = 5, std::size_t max_cycle = 4) {
    return AddressStream::periodic(word(max_prefix), nonempty_word(max_cycle, alphabet_->letters()));
  }

  /// Periodic stream with an I-letter in its cycle.
  AddressStream periodic_sigma1() {
    auto cycle = nonempty_word(4, alphabet_->letters());
    std::vector<Letter> letters(cycle.letters().begin(), cycle.letters().end());
    letters[below(letters.size())] = letter(alphabet_->letters_I());
    return AddressStream::periodic(word(5), FiniteWord(alphabet_, std::move(letters)));
  }

  /// Periodic stream whose cycle holds J-letters only.
  AddressStream periodic_jtail() {
    return AddressStream::periodic(word(6), nonempty_word(3, alphabet_->letters_J()));
  }

  SigmaWord sigma(std::optional<SigmaKind> kind = std::nullopt) {
    const bool has_j = !alphabet_->letters_J().empty();
    const SigmaKind k = kind ? *kind : (has_j && below(2) == 0 ? SigmaKind::Sigma0 : SigmaKind::Sigma1);
    if (k == SigmaKind::Sigma1 && below(2) == 0) return Sigma1Word(periodic_sigma1());
    return random_sigma_word(alphabet_, k, bits());
  }

  PointSet cloud(std::size_t max_size, double lo, double hi) {
    std::vector<Point> pts(1 + below(max_size));
    for (auto& p : pts) p = point(lo, hi);
    return PointSet(std::move(pts));
  }

 private:
  AlphabetPtr alphabet_;
  std::mt19937_64 rng_;
};

bool letterwise_equal(const AddressStream& a, const AddressStream& b, std::size_t depth) {
  for (std::size_t n = 1; n <= depth; ++n)
    if (a.letter_at(n) != b.letter_at(n)) return false;
  return true;
}

// Accumulates the worst measured value and the first failing case.
struct Tally {
  PropertyResult& r;
  void check(double measured, double limit, const std::function<std::string()>& witness) {
    if (!(measured <= limit) && r.passed) {
      r.passed = false;
      r.witness = witness();
    }
    r.worst = std::max(r.worst, std::isnan(measured) ? INFINITY : measured);
  }
  void fail(std::string witness) {
    if (r.passed) r.witness = std::move(witness);
    r.passed = false;
  }
};

std::vector<Point> apply(const AffineMap& m, const PointSet& b) {
  std::vector<Point> out(b.begin(), b.end());
  for (auto& p : out) p = m(p);
  return out;
}

PointSet exact_iterate(const MixedSystem& sys, PointSet b, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) b = fractal_step(sys, b);
  return b;
}

// ---------------------------------------------------------------------------
// Code space

void baire_ultrametric(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto a = g.periodic();
    // Share prefixes so that disagreements appear at varied depths.
    const auto b = concat(prefix(a, g.below(6)), g.periodic());
    const auto c = g.below(2) ? concat(prefix(b, g.below(6)), g.periodic()) : g.periodic();
    const double ab = baire_distance(a, b).value(), ba = baire_distance(b, a).value();
    const double bc = baire_distance(b, c).value(), ac = baire_distance(a, c).value();
    const auto witness = [&] { return render(a) + " | " + render(b) + " | " + render(c); };
    t.check(std::abs(ab - ba), 0.0, witness);
    t.check(baire_distance(a, a).value(), 0.0, witness);
    t.check(ac - std::max(ab, bc), 0.0, witness);
    if ((ab == 0.0) != letterwise_equal(a, b, 256)) t.fail("identity of indiscernibles: " + witness());
  }
  (void)ctx;
}

void baire_shift_halving(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto a = g.periodic();
    const auto b = concat(prefix(a, g.below(6)), g.periodic());
    const double d = baire_distance(a, b).value();
    if (d == 0.0) continue;
    const Letter i = g.letter();
    const double shifted = baire_distance(shift_tau(i, a), shift_tau(i, b)).value();
    t.check(std::abs(shifted - d / 2), 0.0, [&] { return render(a) + " | " + render(b); });
  }
  (void)ctx;
}

void prefix_concat(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto a = g.word(8);
    const auto s = g.periodic();
    if (!(prefix(concat(a, s), a.length()) == a)) t.fail(render(a) + " then " + render(s));
    const auto b = g.word(8);
    if (!(prefix(concat(a, b), a.length()) == a)) t.fail(render(a) + " then " + render(b));
  }
  (void)ctx;
}

void n_I_additivity(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto a = g.word(10), b = g.word(10);
    const double lhs = static_cast<double>(n_I_count(concat(a, b)));
    const double rhs = static_cast<double>(n_I_count(a) + n_I_count(b));
    t.check(std::abs(lhs - rhs), 0.0, [&] { return render(a) + " . " + render(b); });
  }
  (void)ctx;
}

void word_spec_round_trip(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  const auto& alphabet = ctx.sys.alphabet();
  for (std::size_t k = 0; k < trials; ++k) {
    const SigmaWord sigma = g.sigma();
    const std::string text = render(sigma);
    try {
      if (!(parse_sigma_word(text, alphabet) == sigma)) t.fail("round trip changed " + text);
    } catch (const Error& e) {
      t.fail(text + ": " + e.what());
    }
    const auto w = g.word(8);
    const auto parsed = parse_word_spec(render(w), alphabet);
    if (!std::holds_alternative<FiniteWord>(parsed) || !(std::get<FiniteWord>(parsed) == w))
      t.fail("round trip changed " + render(w));
  }
}

// ---------------------------------------------------------------------------
// Point clouds

void hausdorff_axioms(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto a = g.cloud(30, -2, 2), b = g.cloud(30, -2, 2), c = g.cloud(30, -2, 2);
    const double ab = hausdorff(a, b), ba = hausdorff(b, a), bc = hausdorff(b, c), ac = hausdorff(a, c);
    const auto witness = [&] { return fmt("|A|=%zu |B|=%zu |C|=%zu trial %zu", a.size(), b.size(), c.size(), k); };
    t.check(hausdorff(a, a), 0.0, witness);
    t.check(std::abs(ab - ba), kSlack, witness);
    t.check(ac - (ab + bc), kSlack, witness);
    if (!(a == b) && !(ab > 0.0)) t.fail("distinct clouds at distance 0: " + witness());
  }
  (void)ctx;
}

void union_bound(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t m = 2 + g.below(3);
    std::vector<Point> ua, ub;
    double sup = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto a = g.cloud(15, -2, 2), b = g.cloud(15, -2, 2);
      sup = std::max(sup, hausdorff(a, b));
      ua.insert(ua.end(), a.begin(), a.end());
      ub.insert(ub.end(), b.begin(), b.end());
    }
    const double lhs = hausdorff(PointSet(ua), PointSet(ub));
    t.check(lhs - sup, kSlack, [&] { return fmt("family of %zu pairs, lhs %.17g sup %.17g", m, lhs, sup); });
  }
  (void)ctx;
}

void nested_chain(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto top = g.cloud(40, -2, 2);
    std::vector<std::vector<Point>> chain{{top.begin(), top.end()}};
    while (chain.back().size() > 1 && chain.size() < 12) {
      auto next = chain.back();
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(g.below(next.size())));
      if (g.below(2) && next.size() > 1) next.erase(next.begin() + static_cast<std::ptrdiff_t>(g.below(next.size())));
      chain.push_back(std::move(next));
    }
    const PointSet bottom(chain.back());  // the intersection of the chain
    double previous = INFINITY;
    for (const auto& level : chain) {
      const double h = hausdorff(PointSet(level), bottom);
      t.check(h - previous, kSlack, [&] { return fmt("chain %zu: h rose from %.17g to %.17g", k, previous, h); });
      previous = h;
    }
  }
  (void)ctx;
}

void grid_matches_brute_force(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    // Clouds near a coarse lattice produce many exact ties and empty cells.
    auto lattice_cloud = [&](std::size_t n) {
      std::vector<Point> pts(1 + g.below(n));
      const double step = g.uniform(0.01, 0.3);
      for (auto& p : pts)
        p = g.below(3) == 0 ? g.point(-3, 3)
                            : Point{step * static_cast<double>(g.below(20)), step * static_cast<double>(g.below(20))};
      return PointSet(std::move(pts));
    };
    const auto a = lattice_cloud(600), b = lattice_cloud(600);
    const double brute = semidistance(a, b, SearchMethod::BruteForce);
    const double grid = semidistance(a, b, SearchMethod::Grid);
    const double serial = kernels::semidistance_serial(a.points(), b.points());
    t.check(std::abs(brute - grid) + std::abs(brute - serial), 0.0,
            [&] { return fmt("trial %zu: brute %.17g grid %.17g serial %.17g", k, brute, grid, serial); });
  }
  (void)ctx;
}

void decimation_bound(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto a = g.cloud(200, -3, 3);
    const double delta = std::pow(10.0, g.uniform(-4, -1));
    const auto d = decimate(a, delta);
    const double h = hausdorff(a, d);
    t.check(h - delta * std::sqrt(2.0) / 2.0, kSlack, [&] { return fmt("delta %.6g h %.17g", delta, h); });
    if (!(decimate(d, delta) == d)) t.fail(fmt("decimation at %.6g not idempotent", delta));
  }
  (void)ctx;
}

// ---------------------------------------------------------------------------
// System

void operator_lipschitz(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  double lip = 0.0;
  for (const auto& f : ctx.sys.maps()) lip = std::max(lip, f.lipschitz());
  for (std::size_t k = 0; k < trials; ++k) {
    const auto a = g.cloud(20, -3, 3), b = g.cloud(20, -3, 3);
    const double lhs = hausdorff(fractal_step(ctx.sys, a), fractal_step(ctx.sys, b));
    const double rhs = lip * hausdorff(a, b);
    t.check(lhs - rhs, kSlack, [&] { return fmt("trial %zu: %.17g > %.17g", k, lhs, rhs); });
  }
}

void word_union(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  const auto letters = ctx.sys.alphabet()->letters();
  for (std::size_t k = 0; k < trials; ++k) {
    const PointSet b = k == 0 ? PointSet::singleton({0, 0}) : g.cloud(3, -1, 2);
    const std::size_t n = 1 + k % 6;
    std::vector<Point> direct;
    std::vector<Letter> word(n);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= letters.size();
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (auto& l : word) {
        l = letters[c % letters.size()];
        c /= letters.size();
      }
      const FiniteWord alpha(ctx.sys.alphabet(), word);
      for (Point x : b) direct.push_back(apply_word(ctx.sys, alpha, x));
    }
    const double h = hausdorff(exact_iterate(ctx.sys, b, n), PointSet(std::move(direct)));
    t.check(h, kSlack, [&] { return fmt("n=%zu |B|=%zu h=%.17g", n, b.size(), h); });
  }
}

void nonexpansive_words(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  const double a = ctx.sys.contraction();
  for (std::size_t k = 0; k < trials; ++k) {
    const auto alpha = g.word(30);
    const Point x = g.point(-20, 20), y = g.point(-20, 20);
    const double lhs = point_distance(apply_word(ctx.sys, alpha, x), apply_word(ctx.sys, alpha, y));
    const double rhs = std::pow(a, static_cast<double>(n_I_count(alpha))) * point_distance(x, y);
    t.check(lhs - rhs, kSlack, [&] { return render(alpha) + " at " + show(x) + ", " + show(y); });
  }
}

void orbit_inclusion(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const Point x = g.point(-2, 3);
    const Letter i = g.letter();
    const std::size_t n = 1 + g.below(6);
    const auto inner = exact_iterate(ctx.sys, PointSet::singleton(ctx.sys.map(i)(x)), n);
    const auto outer = exact_iterate(ctx.sys, PointSet::singleton(x), n + 1);
    const double d = semidistance(inner, outer);
    t.check(d, 1e-9, [&] { return fmt("x=%s i=%s n=%zu", show(x).c_str(), ctx.sys.alphabet()->label(i).c_str(), n); });
  }
}

void thread_determinism(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const PointSet b = k == 0 ? PointSet::singleton({0, 0}) : g.cloud(3, -1, 2);
    const AttractorOptions opts{9, 0.0, 1e-3};
    AttractorApprox serial = [&] {
      ThreadCap cap(1);
      return iterate_attractor(ctx.sys, b, opts);
    }();
    AttractorApprox parallel = [&] {
      ThreadCap cap(4);
      return iterate_attractor(ctx.sys, b, opts);
    }();
    if (!(serial.cloud == parallel.cloud) || serial.successive_h != parallel.successive_h)
      t.fail(fmt("trial %zu: 1-thread and 4-thread iterates differ", k));
  }
}

void system_validation(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto report = validate_system(ctx.sys, 2000, g.bits());
    if (!report.passed) t.fail(report.summary(*ctx.sys.alphabet()));
  }
}

// ---------------------------------------------------------------------------
// Projection

void projection_lipschitz(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto sigma = g.sigma();
    const Point x = g.point(-5, 5), y = g.point(-5, 5);
    const double lhs =
        point_distance(canonical_projection(ctx.proj, sigma, x).value, canonical_projection(ctx.proj, sigma, y).value);
    t.check(lhs - point_distance(x, y), 2 * kTol, [&] { return render(sigma) + " at " + show(x) + ", " + show(y); });
  }
}

void sigma1_constancy(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  const Point starts[] = {{0, 0}, {1, 1}, {20, 20}};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto sigma = g.sigma(SigmaKind::Sigma1);
    std::vector<ProjectionValue> v;
    for (Point x : starts) v.push_back(canonical_projection(ctx.proj, sigma, x));
    double spread = 0.0, bound = 0.0;
    for (const auto& p : v) {
      bound = std::max(bound, p.error_bound);
      for (const auto& q : v) spread = std::max(spread, point_distance(p.value, q.value));
    }
    t.check(spread - bound, 2 * kTol, [&] { return render(sigma) + fmt(" spread %.3g", spread); });
  }
}

void equivariance(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  const auto& alphabet = *ctx.sys.alphabet();
  for (std::size_t k = 0; k < trials; ++k) {
    // Alternate I and J letters so both kinds of prepending are covered.
    const bool use_j = k % 2 == 1 && !alphabet.letters_J().empty();
    const Letter i = g.letter(use_j ? alphabet.letters_J() : alphabet.letters_I());
    const auto sigma = g.sigma();
    const Point x = g.point(-3, 3);
    const Point lhs = canonical_projection(ctx.proj, prepend(i, sigma), x, {kTol, 1'000'000, {}}).value;
    const Point rhs = ctx.sys.map(i)(canonical_projection(ctx.proj, sigma, x, {kTol, 1'000'000, {}}).value);
    const double residual = point_distance(lhs, rhs);
    t.check(residual, 2 * kTol,
            [&] { return "i=" + alphabet.label(i) + " sigma=" + render(sigma) + " x=" + show(x) + fmt(" residual %.3g", residual); });
  }
}

void membership(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  const auto& index = ctx.reference_index();
  for (std::size_t k = 0; k < trials; ++k) {
    const auto sigma = g.sigma();
    const auto v = canonical_projection(ctx.proj, sigma, {0, 0});
    const double d = std::sqrt(index.nearest_squared(v.value));
    t.check(d, kTol + kMembershipSlack, [&] { return render(sigma) + " -> " + show(v.value) + fmt(" at distance %.3g", d); });
  }
}

void stopping_consistency(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto sigma = g.sigma();
    const Point x = g.point(-5, 5);
    const auto loose = canonical_projection(ctx.proj, sigma, x, {1e-6, 1'000'000, {}});
    const auto tight = canonical_projection(ctx.proj, sigma, x, {1e-8, 1'000'000, {}});
    const double gap = point_distance(loose.value, tight.value);
    t.check(gap - loose.error_bound, 0.0,
            [&] { return render(sigma) + " at " + show(x) + fmt(": gap %.3g bound %.3g", gap, loose.error_bound); });
  }
}

void sample_density(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  for (std::size_t k = 0; k < trials; ++k) {
    SampleOptions so;
    so.seed = g.bits();
    const auto sample = sample_L(ctx.proj, PointSet::singleton({0, 0}), so);
    const double h = hausdorff(sample.cloud, ctx.reference_attractor());
    t.check(h, 0.05, [&] { return fmt("seed %llu: h = %.4g", static_cast<unsigned long long>(so.seed), h); });
  }
}

void attractor_lipschitz(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  const AttractorOptions opts{8, 0.0, 1e-3};
  for (std::size_t k = 0; k < trials; ++k) {
    const Point x = g.point(-1, 2), y = g.point(-1, 2);
    const auto ax = iterate_attractor(ctx.sys, PointSet::singleton(x), opts);
    const auto ay = iterate_attractor(ctx.sys, PointSet::singleton(y), opts);
    const double lhs = hausdorff(ax.cloud, ay.cloud);
    t.check(lhs - point_distance(x, y), ax.decimation_slack + ay.decimation_slack + kSlack,
            [&] { return show(x) + ", " + show(y) + fmt(": h %.6g", lhs); });
  }
}

void orbit_of_limit(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  constexpr double delta = 1e-3;
  for (std::size_t k = 0; k < trials; ++k) {
    const Point x = g.point(0, 1);
    const auto sigma = g.sigma();
    const Point p = canonical_projection(ctx.proj, sigma, x).value;
    const auto from_p = iterate_attractor(ctx.sys, PointSet::singleton(p), {6, 0.0, delta});
    const auto from_x = iterate_attractor(ctx.sys, PointSet::singleton(x), {14, 0.0, delta});
    const double d = semidistance(from_p.cloud, from_x.cloud);
    const double slack = kMembershipSlack + from_p.decimation_slack + from_x.decimation_slack;
    t.check(d, kTol + slack, [&] { return render(sigma) + " at " + show(x) + fmt(": D %.4g", d); });
  }
}

void set_decomposition(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  const AttractorOptions opts{8, 0.0, 1e-3};
  for (std::size_t k = 0; k < trials; ++k) {
    const PointSet b = g.cloud(4, -1, 2);
    const auto whole = iterate_attractor(ctx.sys, b, opts);
    std::vector<Point> pieces;
    for (Point x : b) {
      const auto part = iterate_attractor(ctx.sys, PointSet::singleton(x), opts);
      pieces.insert(pieces.end(), part.cloud.begin(), part.cloud.end());
    }
    const double h = hausdorff(whole.cloud, PointSet(std::move(pieces)));
    t.check(h, 2 * whole.decimation_slack, [&] { return fmt("|B|=%zu h=%.6g", b.size(), h); });
  }
}

void factorization(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  if (ctx.sys.alphabet()->letters_J().empty()) return;
  const ProjectionOptions opts{kTol, 1'000'000, {}};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto alpha = g.periodic_jtail();
    const PointSet b = g.cloud(20, -2, 3);
    const auto fact = sigma0_factorization(ctx.proj, alpha, b, opts);
    const auto direct = image_of_set(ctx.proj, alpha, b, opts);
    const double h = hausdorff(fact.composed, direct.cloud);
    t.check(h, 2 * kTol, [&] { return render(alpha) + fmt(": h %.3g", h); });
  }
}

void nested_decay(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  const PointSet b = iterate_attractor(ctx.sys, PointSet::singleton({0, 0}), {10, 0.0, 1e-3}).cloud;
  const double diam = diameter(b);
  const double a = ctx.sys.contraction();
  for (std::size_t k = 0; k < trials; ++k) {
    const auto alpha = g.periodic_sigma1();
    try {
      const auto diag = nested_diagnostic(ctx.proj, alpha, b, 12, kMembershipSlack);
      for (const auto& s : diag.steps) {
        const double allowed = std::pow(a, static_cast<double>(s.i_letters)) * diam + kMembershipSlack;
        t.check(s.distance - allowed, 0.0, [&] { return render(alpha) + fmt(" n=%zu: %.4g", s.n, s.distance); });
      }
    } catch (const PreconditionFailed& e) {
      t.fail(e.what());
    }
  }
}

void image_convergence(Context& ctx, Gen& g, std::size_t trials, PropertyResult& r) {
  Tally t{r};
  const ProjectionOptions opts{kTol, 1'000'000, {}};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto alpha = k % 2 == 0 || ctx.sys.alphabet()->letters_J().empty() ? g.periodic_sigma1() : g.periodic_jtail();
    const PointSet b = g.cloud(20, -2, 3);
    const auto image = image_of_set(ctx.proj, alpha, b, opts);
    // f_{[α]_n}(B) for n well past the stopping index stays within the bound.
    const auto cls = classify_sigma(alpha);
    const OrbitBound orbit = std::holds_alternative<AllJTail>(cls)
                                 ? OrbitBound{estimate_j_orbit_bound(ctx.proj, b.points()), INFINITY}
                                 : estimate_orbit_bound(ctx.proj, b);
    const auto lim = resolve_stream_limit(ctx.proj, alpha, orbit, kTol, 1'000'000);
    const auto later = compose_word(ctx.proj, prefix(alpha, lim.iterations + 25));
    const double h = hausdorff(image.cloud, PointSet(apply(later, b)));
    t.check(h, 2 * kTol, [&] { return render(alpha) + fmt(": h %.3g", h); });
  }
}

// ---------------------------------------------------------------------------

struct Property {
  const char* name;
  std::size_t trials;
  void (*run)(Context&, Gen&, std::size_t, PropertyResult&);
  double limit;  // reported threshold
};

const Property kProperties[] = {
    {"codespace.baire_ultrametric", 1000, baire_ultrametric, 0.0},
    {"codespace.baire_shift_halving", 1000, baire_shift_halving, 0.0},
    {"codespace.prefix_concat", 500, prefix_concat, 0.0},
    {"codespace.n_I_additivity", 500, n_I_additivity, 0.0},
    {"codespace.word_spec_round_trip", 500, word_spec_round_trip, 0.0},
    {"metric.hausdorff_axioms", 500, hausdorff_axioms, kSlack},
    {"metric.union_bound", 500, union_bound, kSlack},
    {"metric.nested_chain", 100, nested_chain, kSlack},
    {"metric.grid_matches_brute_force", 200, grid_matches_brute_force, 0.0},
    {"metric.decimation_bound", 200, decimation_bound, kSlack},
    {"system.operator_lipschitz", 200, operator_lipschitz, kSlack},
    {"system.word_union", 12, word_union, kSlack},
    {"system.nonexpansive_words", 1000, nonexpansive_words, kSlack},
    {"system.orbit_inclusion", 20, orbit_inclusion, 1e-9},
    {"system.thread_determinism", 2, thread_determinism, 0.0},
    {"system.validation", 1, system_validation, 0.0},
    {"projection.lipschitz", 500, projection_lipschitz, 2 * kTol},
    {"projection.sigma1_constancy", 100, sigma1_constancy, 2 * kTol},
    {"projection.equivariance", 200, equivariance, 2 * kTol},
    {"projection.membership", 100, membership, kTol + kMembershipSlack},
    {"projection.stopping_consistency", 100, stopping_consistency, 0.0},
    {"projection.sample_density", 1, sample_density, 0.05},
    {"projection.attractor_lipschitz", 20, attractor_lipschitz, 0.0},
    {"projection.orbit_of_limit", 20, orbit_of_limit, kTol + kMembershipSlack},
    {"projection.set_decomposition", 20, set_decomposition, 0.0},
    {"projection.factorization", 50, factorization, 2 * kTol},
    {"projection.nested_decay", 20, nested_decay, 0.0},
    {"projection.image_convergence", 40, image_convergence, 2 * kTol},
};

MixedSystem with_fault(const MixedSystem& sys, const std::string& label) {
  const Letter l = sys.alphabet()->at(label);
  std::vector<AffineMap> maps(sys.maps().begin(), sys.maps().end());
  maps[l.index].translation = Point{} - maps[l.index].translation;
  return MixedSystem(sys.alphabet(), std::move(maps), sys.contraction());
}

}  // namespace

std::vector<std::string> property_names() {
  std::vector<std::string> out;
  for (const auto& p : kProperties) out.emplace_back(p.name);
  return out;
}

VerifyReport run_verify(const MixedSystem& sys, const VerifyOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const MixedSystem proj = options.inject_fault ? with_fault(sys, *options.inject_fault) : sys;
  Context ctx{sys, proj, options.seed, std::nullopt, std::nullopt};
  VerifyReport report;
  if (options.trials && *options.trials == 0)
    report.warnings.push_back("trial count 0: every property passes vacuously");
  if (options.inject_fault)
    report.warnings.push_back("fault injected: letter " + *options.inject_fault + " has a negated translation");

  std::size_t index = 0;
  for (const auto& p : kProperties) {
    ++index;
    if (!options.only.empty() &&
        std::none_of(options.only.begin(), options.only.end(),
                     [&](const std::string& s) { return std::string_view(p.name).find(s) != std::string_view::npos; }))
      continue;
    PropertyResult r;
    r.name = p.name;
    r.trials = options.trials.value_or(p.trials);
    r.limit = p.limit;
    const auto t0 = clock::now();
    Gen gen(sys.alphabet(), derive_seed(options.seed, index));
    try {
      p.run(ctx, gen, r.trials, r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.witness = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    report.passed = report.passed && r.passed;
    report.results.push_back(std::move(r));
  }
  report.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return report;
}

std::string VerifyReport::format() const {
  std::ostringstream out;
  for (const auto& w : warnings) out << "warning: " << w << '\n';
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << fmt("  trials=%zu worst=%.3g limit=%.3g (%.2fs)", r.trials,
                                                               r.worst, r.limit, r.seconds)
        << '\n';
    if (!r.passed) {
      ++failed;
      out << "       witness: " << r.witness << '\n';
    }
  }
  out << fmt("%zu/%zu properties passed in %.1fs", results.size() - failed, results.size(), seconds) << '\n';
  return out.str();
}

}  // namespace mifs
