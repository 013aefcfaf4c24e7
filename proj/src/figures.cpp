#include "mifs/figures.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "mifs/atomic_file.hpp"
#include "mifs/cloud_csv.hpp"
#include "mifs/projection.hpp"
#include "mifs/scatter_png.hpp"
#include "mifs/word_spec.hpp"

namespace mifs {

namespace {

constexpr std::uint64_t kFigure1Seed = 1001;
constexpr std::uint64_t kFigure5Seed = 5005;
constexpr std::size_t kTrajectoryTerms = 50'000;

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Writer {
 public:
  Writer(const FigureOptions& o, FigureReport& r) : opts_(o), report_(r) {
    std::filesystem::create_directories(o.out_dir);
  }

  std::vector<Point> display(const PointSet& cloud) const {
    const PointSet shown = opts_.display_delta > 0 ? decimate(cloud, opts_.display_delta) : cloud;
    return {shown.begin(), shown.end()};
  }

  void emit(const std::string& stem, const std::vector<CloudRow>& rows, const ScatterOptions& png = {}) {
    const auto csv = opts_.out_dir / (stem + ".csv");
    write_file_atomic(csv, [&](std::ostream& out) { write_cloud_csv(out, rows); });
    report_.files.push_back(csv);
    if (opts_.png) {
      const auto image = opts_.out_dir / (stem + ".png");
      render_csv_to_png(csv, image, png);
      report_.files.push_back(image);
    }
  }

  void note(std::string line) { report_.notes.push_back(std::move(line)); }

 private:
  const FigureOptions& opts_;
  FigureReport& report_;
};

void append(std::vector<CloudRow>& rows, std::span<const Point> pts, const std::string& label) {
  for (Point p : pts) rows.push_back({p, label});
}

PointSet base_cloud(const MixedSystem& sys, const FigureOptions& o) {
  return iterate_attractor(sys, PointSet::singleton({0, 0}), {o.quick ? 12u : 20u, 0.0, 1e-4}).cloud;
}

// Trajectories f_{[α]_n}(u), n = 1..50000, for one random Σ₁ word and three starts.
void figure1(const MixedSystem& sys, const FigureOptions& o, Writer& w) {
  const std::uint64_t seed = o.seed.value_or(kFigure1Seed);
  const auto sigma = random_sigma_word(sys.alphabet(), SigmaKind::Sigma1, seed);
  const auto& alpha = std::get<Sigma1Word>(sigma).stream();
  w.note("word " + render(sigma));
  const Point starts[] = {{0, 0}, {1, 1}, {20, 20}};
  std::vector<Point> limits;
  int panel = 0;
  for (Point u : starts) {
    const Point limit = project_stream(sys, alpha, u).value;
    limits.push_back(limit);
    std::vector<CloudRow> rows;
    rows.reserve(kTrajectoryTerms + 1);
    AffineMap m = AffineMap::identity();
    for (std::size_t n = 1; n <= kTrajectoryTerms; ++n) {
      m = compose(m, sys.map(alpha.letter_at(n)));
      rows.push_back({m(u), "trajectory"});
    }
    rows.push_back({limit, "limit"});
    ScatterOptions png;
    png.inset = Viewport{limit.x - 0.02, limit.x + 0.02, limit.y - 0.02, limit.y + 0.02};
    png.radius = 2;
    w.emit(fmt("figure1_u%d", ++panel), rows, png);
    w.note(fmt("start (%g,%g) limit (%.12f,%.12f)", u.x, u.y, limit.x, limit.y));
  }
  double spread = 0.0;
  for (Point a : limits)
    for (Point b : limits) spread = std::max(spread, point_distance(a, b));
  w.note(fmt("max distance between limits %.3g", spread));
}

// 𝒜_α(u) for four Σ₀ words and two starts: eight markers.
void figure2(const MixedSystem& sys, const FigureOptions&, Writer& w) {
  const char* words[] = {"(4)^w", "3.2.1.(4)^w", "(4)^w.1.2.3", "1.2.(4)^w.3.1"};
  const Point starts[] = {{0, 0}, {1, 1}};
  std::vector<CloudRow> rows;
  for (const char* spec : words) {
    const auto sigma = parse_sigma_word(spec, sys.alphabet());
    for (Point u : starts) {
      const Point v = canonical_projection(sys, sigma, u).value;
      const std::string label = fmt("%s@%g:%g", spec, u.x, u.y);
      rows.push_back({v, label});
      w.note(fmt("%-14s u=(%g,%g)  value (%.12f,%.12f)", spec, u.x, u.y, v.x, v.y));
    }
  }
  ScatterOptions png;
  png.radius = 8;
  png.viewport = Viewport{-0.1, 1.1, -0.25, 0.95};
  w.emit("figure2", rows, png);
}

// f_{[α]_n}(B) for α = 1434(12)^∞ shrinking onto a_α.
void figure3(const MixedSystem& sys, const FigureOptions& o, Writer& w) {
  const PointSet b = base_cloud(sys, o);
  const auto alpha = std::get<Sigma1Word>(parse_sigma_word("1.4.3.4.(1.2)^w", sys.alphabet())).stream();
  const auto diag = nested_diagnostic(sys, alpha, b, 9, 0.01);
  w.note(fmt("|B| = %zu, D(F(B),B) <= %.3g", b.size(), diag.inclusion));
  const Viewport view = autoscale(std::vector<Series>{{"", {b.begin(), b.end()}, Marker::Dot}});
  for (std::size_t n : {1u, 2u, 3u, 6u, 9u}) {
    const AffineMap m = compose_word(sys, prefix(alpha, n));
    std::vector<Point> image(b.begin(), b.end());
    for (auto& p : image) p = m(p);
    std::vector<CloudRow> rows;
    append(rows, w.display(PointSet(std::move(image))), "image");
    rows.push_back({diag.limit, "limit"});
    ScatterOptions png;
    png.viewport = view;
    w.emit(fmt("figure3_n%zu", n), rows, png);
    w.note(fmt("n=%zu  h(f_[a]_n(B), {a}) = %.6g", n, diag.steps[n - 1].distance));
  }
}

// f_{[β]_n}(B) for β = 412ω with a_β(B) overlaid.
void figure4(const MixedSystem& sys, const FigureOptions& o, Writer& w) {
  const PointSet b = base_cloud(sys, o);
  const auto& alphabet = sys.alphabet();
  const auto beta = AddressStream::periodic(FiniteWord(alphabet, {"4", "1", "2"}), FiniteWord(alphabet, {"4"}));
  const ProjectionOptions popts{1e-6, 1'000'000, {}};
  const SetImage limit = image_of_set(sys, beta, b, popts);
  const auto fact = sigma0_factorization(sys, beta, b, popts);
  double flat = 0.0;
  for (Point p : limit.cloud) flat = std::max(flat, std::abs(p.y));
  w.note(fmt("|B| = %zu, h(composed, direct) = %.3g, max |y| on a_b(B) = %.3g", b.size(),
             hausdorff(fact.composed, limit.cloud), flat));
  const auto limit_rows = w.display(limit.cloud);
  const Viewport view = autoscale(std::vector<Series>{{"", {b.begin(), b.end()}, Marker::Dot}});
  for (std::size_t n : {1u, 2u, 3u, 4u, 6u}) {
    const AffineMap m = compose_word(sys, prefix(beta, n));
    std::vector<Point> image(b.begin(), b.end());
    for (auto& p : image) p = m(p);
    std::vector<CloudRow> rows;
    append(rows, w.display(PointSet(std::move(image))), "image");
    append(rows, limit_rows, "limit_set");
    ScatterOptions png;
    png.viewport = view;
    w.emit(fmt("figure4_n%zu", n), rows, png);
  }
}

// Projected random words beside the iterate cloud from {(0,0)}.
void figure5(const MixedSystem& sys, const FigureOptions& o, Writer& w) {
  const PointSet b0 = PointSet::singleton({0, 0});
  SampleOptions so;
  so.count = o.quick ? 10'000 : 100'000;
  so.sigma1_fraction = 0.5;
  so.seed = o.seed.value_or(kFigure5Seed);
  const SampledL sample = sample_L(sys, b0, so);
  const PointSet attractor = base_cloud(sys, o);
  w.note(fmt("sample: %zu distinct points from %zu Sigma1 + %zu Sigma0 words (%zu dropped)", sample.cloud.size(),
             sample.sigma1_words, sample.sigma0_words, sample.dropped));
  w.note(fmt("h(sample, attractor cloud) = %.4g", hausdorff(sample.cloud, attractor)));
  const Viewport view = autoscale(std::vector<Series>{{"", {attractor.begin(), attractor.end()}, Marker::Dot}});
  ScatterOptions png;
  png.viewport = view;
  std::vector<CloudRow> rows;
  append(rows, sample.cloud.points(), "projection");
  w.emit("figure5_sample", rows, png);
  rows.clear();
  append(rows, w.display(attractor), "attractor");
  w.emit("figure5_attractor", rows, png);
}

}  // namespace

FigureReport make_figure(int n, const MixedSystem& sys, const FigureOptions& options) {
  if (n < 1 || n > 5) throw std::invalid_argument("figure number must be 1..5");
  for (const char* label : {"1", "2", "3", "4"})
    if (!sys.alphabet()->find(label)) throw std::invalid_argument("figures need letters labelled 1, 2, 3 and 4");
  FigureReport report;
  report.figure = n;
  Writer w(options, report);
  switch (n) {
    case 1: figure1(sys, options, w); break;
    case 2: figure2(sys, options, w); break;
    case 3: figure3(sys, options, w); break;
    case 4: figure4(sys, options, w); break;
    case 5: figure5(sys, options, w); break;
  }
  return report;
}

}  // namespace mifs
