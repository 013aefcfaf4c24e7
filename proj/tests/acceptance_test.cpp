// Acceptance criteria for the example system. Prints one PASS/FAIL line per
// criterion and exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "mifs/point_set.hpp"
#include "mifs/projection.hpp"
#include "mifs/properties.hpp"
#include "mifs/system.hpp"
#include "mifs/word_spec.hpp"
#include "oracles.hpp"

using namespace mifs;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds; 0 means no limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const MixedSystem& sys() {
  static const MixedSystem s = example_system();
  return s;
}

const PointSet& origin() {
  static const PointSet b = PointSet::singleton({0, 0});
  return b;
}

const PointSet& attractor(std::size_t iters) {
  static std::map<std::size_t, PointSet> cache;
  auto it = cache.find(iters);
  if (it == cache.end()) it = cache.emplace(iters, iterate_attractor(sys(), origin(), {iters, 0.0, 1e-4}).cloud).first;
  return it->second;
}

AddressStream stream_of(std::string_view text) {
  return std::get<Sigma1Word>(parse_sigma_word(text, sys().alphabet())).stream();
}

double dist(Point p, oracle::P q) { return std::hypot(p.x - q.first, p.y - q.second); }

Outcome sigma1_start_independence() {
  const ProjectionOptions opts{1e-9, 1'000'000, {}};
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sigma = random_sigma_word(sys().alphabet(), SigmaKind::Sigma1, seed);
    std::vector<Point> v;
    for (Point u : {Point{0, 0}, Point{1, 1}, Point{20, 20}}) v.push_back(canonical_projection(sys(), sigma, u, opts).value);
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b) worst = std::max(worst, point_distance(v[a], v[b]));
  }
  return {worst <= 1e-6, fmt("max pairwise distance %.3g over 10 words", worst)};
}

Outcome omega_values() {
  const auto a = sys().alphabet();
  const ProjectionOptions opts{1e-9, 1'000'000, {}};
  const auto omega = parse_sigma_word("(4)^w", a);
  const double e1 = dist(canonical_projection(sys(), omega, {0, 0}, opts).value, {0, 0});
  const double e2 = dist(canonical_projection(sys(), omega, {1, 1}, opts).value, {1, 0});
  const double e3 = dist(canonical_projection(sys(), parse_sigma_word("3.2.1.(4)^w", a), {1, 1}, opts).value,
                         {5.0 / 8, std::sqrt(3.0) / 4});
  const double worst = std::max({e1, e2, e3});
  return {worst <= 1e-9, fmt("errors %.3g %.3g %.3g", e1, e2, e3)};
}

Outcome word_union() {
  PointSet b = origin();
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    b = fractal_step(sys(), b);
    std::vector<Point> words;
    for (auto [x, y] : oracle::all_words_image({{0.0, 0.0}}, n)) words.push_back({x, y});
    worst = std::max(worst, hausdorff(b, PointSet(words)));
  }
  return {worst <= 1e-12, fmt("max h %.3g for n <= 6", worst)};
}

Outcome dense_sample() {
  SampleOptions opts;
  opts.count = 50'000;
  opts.projection.tol = 1e-6;
  const auto s = sample_L(sys(), origin(), opts);
  const double h = hausdorff(s.cloud, attractor(14));
  return {h <= 0.05 && s.dropped == 0,
          fmt("h %.4g, %zu distinct points, %zu dropped", h, s.cloud.size(), s.dropped)};
}

Outcome nested_decay() {
  const auto d = nested_diagnostic(sys(), stream_of("1.4.3.4.(1.2)^w"), attractor(20), 9, 0.01);
  const std::size_t ns[] = {1, 2, 3, 6, 9};
  bool monotone = true;
  std::string list;
  double prev = INFINITY;
  for (std::size_t n : ns) {
    const double v = d.steps.at(n - 1).distance;
    monotone = monotone && v <= prev + 1e-6;
    prev = v;
    list += fmt(" %.4g", v);
  }
  return {monotone && prev <= 0.05, "distances" + list};
}

Outcome factorization() {
  const auto beta = parse_sigma_word("4.1.2.(4)^w", sys().alphabet());
  const auto& s0 = std::get<Sigma0Word>(beta);
  const auto alpha = concat(s0.beta0(), s0.blocks()[0].gamma);
  const auto& b = attractor(20);
  const ProjectionOptions opts{1e-6, 1'000'000, {}};
  const auto f = sigma0_factorization(sys(), alpha, b, opts);
  const auto direct = image_of_set(sys(), alpha, b, opts);
  const double h = hausdorff(f.composed, direct.cloud);
  double flat = 0.0;
  for (const Point& p : direct.cloud) flat = std::max(flat, std::abs(p.y));
  return {h <= 2e-6 && flat <= 1e-6, fmt("h %.3g, max |y| %.3g", h, flat)};
}

Outcome equivariance() {
  const auto a = sys().alphabet();
  const ProjectionOptions opts{1e-9, 1'000'000, {}};
  std::mt19937_64 rng(0xe9);
  std::uniform_real_distribution<double> coord(-5, 5);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Letter i = a->letters()[rng() % a->size()];
    const auto kind = t % 2 ? SigmaKind::Sigma1 : SigmaKind::Sigma0;
    const auto sigma = random_sigma_word(a, kind, rng());
    const Point x{coord(rng), coord(rng)};
    worst = std::max(worst, equivariance_residual(sys(), i, sigma, x, opts));
  }
  return {worst <= 2e-9, fmt("max residual %.3g over 200 triples", worst)};
}

Outcome property_suite() {
  const auto report = run_verify(sys());
  std::size_t failed = 0;
  for (const auto& r : report.results) failed += r.passed ? 0 : 1;
  return {report.passed, fmt("%zu/%zu properties passed", report.results.size() - failed, report.results.size())};
}

Outcome sub_system() {
  const auto sub = sys().restricted_to_I();
  const auto cloud = iterate_attractor(sub, origin(), {20, 0.0, 1e-4}).cloud;
  const std::vector<Point> fixed{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  double worst = 0.0;
  for (const Point& p : fixed) worst = std::max(worst, semidistance(PointSet::singleton(p), cloud));
  // Cross-check against the fixed points found by iterating each contraction.
  for (const char* l : {"1", "2", "3"}) {
    const auto fp = oracle::fixed_point(l);
    worst = std::max(worst, semidistance(PointSet::singleton({fp.first, fp.second}), cloud));
  }
  return {worst <= 1e-3, fmt("max distance to cloud %.3g (%zu points)", worst, cloud.size())};
}

Outcome stopping_consistency() {
  const auto a = sys().alphabet();
  std::mt19937_64 rng(0x5c);
  std::uniform_real_distribution<double> coord(-5, 5);
  double worst_ratio = 0.0;
  std::size_t bad = 0;
  for (int t = 0; t < 100; ++t) {
    const auto sigma = random_sigma_word(a, t % 2 ? SigmaKind::Sigma1 : SigmaKind::Sigma0, rng());
    const Point x{coord(rng), coord(rng)};
    const auto loose = canonical_projection(sys(), sigma, x, {1e-6, 1'000'000, {}});
    const auto tight = canonical_projection(sys(), sigma, x, {1e-8, 1'000'000, {}});
    const double gap = point_distance(loose.value, tight.value);
    if (gap > loose.error_bound) ++bad;
    if (loose.error_bound > 0) worst_ratio = std::max(worst_ratio, gap / loose.error_bound);
  }
  return {bad == 0, fmt("%zu violations, max gap/bound %.3g", bad, worst_ratio)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "sigma1 limits independent of start", 10, sigma1_start_independence},
      {2, "omega and 321omega closed forms", 0, omega_values},
      {3, "fractal operator equals word union", 5, word_union},
      {4, "projected sample dense in attractor", 120, dense_sample},
      {5, "nested image decay", 0, nested_decay},
      {6, "sigma0 factorization and flat image", 0, factorization},
      {7, "equivariance", 0, equivariance},
      {8, "property suites", 300, property_suite},
      {9, "subsystem contains fixed points", 0, sub_system},
      {10, "certified stopping self-consistency", 0, stopping_consistency},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs > c.time_limit) {
      o.passed = false;
      o.detail += fmt(", over the %.0f s limit", c.time_limit);
    }
    std::printf("%s criterion %d: %s; %s (%.2fs)\n", o.passed ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.passed ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
