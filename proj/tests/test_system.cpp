#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mifs/error.hpp"
#include "mifs/point_set.hpp"
#include "mifs/system.hpp"
#include "mifs/system_config.hpp"
#include "oracles.hpp"

using namespace mifs;

namespace {

const double kS3 = std::sqrt(3.0);

FiniteWord word(const MixedSystem& sys, std::initializer_list<std::string_view> labels) {
  return FiniteWord(sys.alphabet(), labels);
}

Point map_of(const MixedSystem& sys, const char* label, Point p) { return sys.map(sys.alphabet()->at(label))(p); }

MixedSystem with_map(const MixedSystem& sys, const char* label, AffineMap m, double a) {
  std::vector<AffineMap> maps(sys.maps().begin(), sys.maps().end());
  maps[sys.alphabet()->at(label).index] = m;
  return MixedSystem(sys.alphabet(), maps, a);
}

}  // namespace

TEST(Maps, Examples) {
  const auto sys = example_system();
  EXPECT_EQ(map_of(sys, "1", {1, 1}), (Point{0.5, 0.5}));
  EXPECT_EQ(map_of(sys, "4", {2, 5}), (Point{2, 1}));
  const Point p = map_of(sys, "3", {0, 0});
  EXPECT_NEAR(p.x, 0.25, 1e-16);
  EXPECT_NEAR(p.y, kS3 / 4, 1e-16);
}

TEST(Maps, MatchOracleMaps) {
  const auto sys = example_system();
  for (const char* l : {"1", "2", "3", "4"})
    for (Point q : {Point{0, 0}, Point{1, -2}, Point{20, 20}, Point{-3.5, 0.25}}) {
      const Point got = map_of(sys, l, q);
      const auto want = oracle::f(l[0], {q.x, q.y});
      EXPECT_NEAR(got.x, want.first, 1e-14);
      EXPECT_NEAR(got.y, want.second, 1e-14);
    }
}

TEST(ApplyWord, Examples) {
  const auto sys = example_system();
  EXPECT_EQ(apply_word(sys, FiniteWord(sys.alphabet()), {3, 7}), (Point{3, 7}));
  EXPECT_EQ(apply_word(sys, word(sys, {"1", "2"}), {1, 1}), (Point{0.5, 0.25}));
  const Point p = apply_word(sys, word(sys, {"1", "2", "3"}), {0, 0});
  EXPECT_NEAR(p.x, 5.0 / 16, 1e-15);
  EXPECT_NEAR(p.y, kS3 / 16, 1e-15);
}

TEST(ApplyWord, ComposeAgrees) {
  const auto sys = example_system();
  const auto w = word(sys, {"3", "4", "2", "4", "1", "3"});
  const AffineMap m = compose_word(sys, w);
  for (Point q : {Point{0, 0}, Point{1, 1}, Point{-4, 9}}) {
    const Point a = m(q), b = apply_word(sys, w, q);
    const auto o = oracle::apply("342413", {q.x, q.y});
    EXPECT_NEAR(a.x, b.x, 1e-14);
    EXPECT_NEAR(a.y, b.y, 1e-14);
    EXPECT_NEAR(b.x, o.first, 1e-14);
    EXPECT_NEAR(b.y, o.second, 1e-14);
  }
}

TEST(Validation, ExampleSystemPasses) {
  const auto sys = example_system();
  const auto r = validate_system(sys);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.sampled_only);
  ASSERT_EQ(r.letters.size(), 4u);
  for (const auto& c : r.letters) {
    if (c.cls == LetterClass::I) {
      EXPECT_NEAR(c.lipschitz, 0.5, 1e-15);
    } else {
      EXPECT_NEAR(c.lipschitz, 1.0, 1e-15);
      EXPECT_GT(c.orbit_samples, 0u);
      EXPECT_LE(c.worst_orbit_ratio, 0.2 + 1e-9);
    }
  }
  EXPECT_NO_THROW(require_valid(r, *sys.alphabet()));
}

TEST(Validation, TooSmallContractionFailsOnF1) {
  const auto sys = example_system(0.4);
  const auto r = validate_system(sys);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(sys.alphabet()->label(r.witness->letter), "1");
  EXPECT_NEAR(r.witness->ratio, 0.5, 1e-15);
  EXPECT_THROW(require_valid(r, *sys.alphabet()), ValidationFailure);
}

TEST(Validation, ExpansiveJMapFails) {
  const auto sys = with_map(example_system(), "4", {{2, 0, 0, 0.2}, {0, 0}}, 0.5);
  const auto r = validate_system(sys);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(sys.alphabet()->label(r.witness->letter), "4");
}

TEST(Validation, TranslatedJMapIsCaughtBySampling) {
  // (x, y) ↦ (x + 1, y/5) keeps lip = 1, but orbit pairs drift apart in x only
  // by the same unit step, so the orbit ratio approaches 1 > a.
  const auto sys = with_map(example_system(), "4", {{1, 0, 0, 0.2}, {1, 0}}, 0.5);
  const auto r = validate_system(sys);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GT(r.witness->ratio, 0.5);
  EXPECT_TRUE(r.sampled_only);
}

TEST(FractalStep, Examples) {
  const auto sys = example_system();
  const auto out = fractal_step(sys, PointSet::singleton({0, 0}));
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0], (Point{0, 0}));
  EXPECT_NEAR(out[1].x, 0.25, 1e-16);
  EXPECT_NEAR(out[1].y, kS3 / 4, 1e-16);
  EXPECT_EQ(out[2], (Point{0.5, 0}));
}

TEST(FractalStep, WordUnionOracle) {
  const auto sys = example_system();
  PointSet b = PointSet::singleton({0, 0});
  for (int n = 1; n <= 5; ++n) {
    b = fractal_step(sys, b);
    std::vector<Point> expect;
    for (auto [x, y] : oracle::all_words_image({{0.0, 0.0}}, n)) expect.push_back({x, y});
    EXPECT_LE(hausdorff(b, PointSet(expect)), 1e-12) << n;
  }
}

TEST(IterateAttractor, FixedSingletonUnderF1) {
  const auto sys = example_system();
  const MixedSystem only1(Alphabet::create({"1"}, {}), {sys.map(sys.alphabet()->at("1"))}, 0.5);
  const auto r = iterate_attractor(only1, PointSet::singleton({0, 0}), {5, 0.0, 0.0});
  EXPECT_EQ(r.iterations, 5u);
  for (double h : r.successive_h) EXPECT_EQ(h, 0.0);
}

TEST(IterateAttractor, StopsOnStopH) {
  const auto sys = example_system();
  const auto r = iterate_attractor(sys, PointSet::singleton({0, 0}), {40, 0.01, 1e-4});
  EXPECT_EQ(r.stop, StopReason::Converged);
  EXPECT_LT(r.successive_h.back(), 0.01);
  EXPECT_NEAR(r.decimation_slack, r.iterations * 1e-4 * std::sqrt(2.0) / 2, 1e-18);
  const auto zero = iterate_attractor(sys, PointSet::singleton({0, 0}), {0, 0.0, 1e-4});
  EXPECT_EQ(zero.stop, StopReason::NoIterations);
  EXPECT_EQ(zero.cloud, PointSet::singleton({0, 0}));
  const auto budget = iterate_attractor(sys, PointSet::singleton({0, 0}), {3, 0.0, 1e-4});
  EXPECT_EQ(budget.stop, StopReason::BudgetExceeded);
}

TEST(Orbits, JOnlyChain) {
  const auto sys = example_system();
  const auto o = orbit_sample(sys, {1, 1}, OrbitFamily::JOnly, 3, 0, 0);
  const PointSet expect(std::vector<Point>{{1, 1}, {1, 0.2}, {1, 0.04}, {1, 0.2 / 25}});
  EXPECT_LE(hausdorff(o, expect), 1e-16);
  EXPECT_EQ(o.size(), 4u);
  EXPECT_NEAR(diameter(o), 1 - 1.0 / 125, 1e-15);
}

TEST(Orbits, ContainsStartAndGrowsWithDepth) {
  const auto sys = example_system();
  for (auto fam : {OrbitFamily::JOnly, OrbitFamily::Mixed}) {
    double prev = 0.0;
    for (std::size_t depth : {0, 1, 2, 4, 8, 16}) {
      const auto o = orbit_sample(sys, {0.3, 0.7}, fam, depth, 16, 9);
      EXPECT_TRUE(o.contains({0.3, 0.7}));
      const double d = diameter(o);
      if (fam == OrbitFamily::JOnly) EXPECT_GE(d, prev);
      prev = d;
    }
  }
}

TEST(Orbits, CommonFixedPointGivesZeroBound) {
  const auto sys = example_system();
  const MixedSystem s(Alphabet::create({"1"}, {"4"}), {sys.map(sys.alphabet()->at("1")), sys.map(sys.alphabet()->at("4"))}, 0.5);
  const auto b = estimate_orbit_bound(s, Point{0, 0});
  EXPECT_EQ(b.j, 0.0);
  EXPECT_EQ(b.mixed, 0.0);
}

TEST(Orbits, SetBoundCoversEveryPoint) {
  const auto sys = example_system();
  const PointSet b(std::vector<Point>{{0, 0}, {1, 1}, {0.5, 0.2}, {-2, 3}});
  const auto whole = estimate_orbit_bound(sys, b);
  for (const Point& p : b) {
    const auto one = estimate_orbit_bound(sys, p);
    EXPECT_LE(one.j, whole.j);
    EXPECT_LE(one.mixed, whole.mixed * (1 + 1e-12));
  }
}

TEST(SubSystem, RestrictionDropsJ) {
  const auto sys = example_system();
  const auto sub = sys.restricted_to_I();
  EXPECT_EQ(sub.alphabet()->size(), 3u);
  EXPECT_TRUE(sub.alphabet()->letters_J().empty());
  EXPECT_TRUE(validate_system(sub).passed);
}

TEST(MixedSystem, RejectsInvalidConstruction) {
  const auto sys = example_system();
  std::vector<AffineMap> maps(sys.maps().begin(), sys.maps().end());
  EXPECT_THROW(MixedSystem(sys.alphabet(), maps, 1.0), std::invalid_argument);
  EXPECT_THROW(MixedSystem(sys.alphabet(), maps, -0.1), std::invalid_argument);
  maps.pop_back();
  EXPECT_THROW(MixedSystem(sys.alphabet(), maps, 0.5), std::invalid_argument);
}

TEST(SystemConfig, RoundTripsAndMatchesBuiltIn) {
  const auto sys = example_system();
  std::istringstream in(format_system_config(sys));
  const auto back = parse_system_config(in);
  EXPECT_EQ(*back.alphabet(), *sys.alphabet());
  EXPECT_EQ(back.contraction(), 0.5);
  for (Letter l : sys.alphabet()->letters()) EXPECT_EQ(back.map(l), sys.map(l));

  const auto shipped = load_system_config(MIFS_DATA_DIR "/example.sys");
  for (Letter l : sys.alphabet()->letters()) {
    EXPECT_EQ(shipped.map(l).linear, sys.map(l).linear);
    EXPECT_NEAR(shipped.map(l).translation.y, sys.map(l).translation.y, 1e-16);
  }
}

TEST(SystemConfig, ErrorsNameTheLine) {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_system_config(in);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("dim 2\nletter 1 I\nmap 1 affine 0.5 0 0 0.5 0\ncontraction_a 0.5\n"), 3u);
  EXPECT_EQ(line_of("dim 3\n"), 1u);
  EXPECT_EQ(line_of("dim 2\nletter 1 K\n"), 2u);
  EXPECT_EQ(line_of("dim 2\nletter 1 I\n# comment\nmap 2 affine 1 0 0 1 0 0\n"), 4u);
  EXPECT_EQ(line_of("bogus\n"), 1u);
  std::istringstream missing("dim 2\nletter 1 I\ncontraction_a 0.5\n");
  EXPECT_THROW(parse_system_config(missing), ConfigError);
}
