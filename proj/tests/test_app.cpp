#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mifs/atomic_file.hpp"
#include "mifs/cloud_csv.hpp"
#include "mifs/figures.hpp"
#include "mifs/scatter_png.hpp"
#include "mifs/system.hpp"

using namespace mifs;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mifs_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<CloudRow> rows(const fs::path& p) {
  std::ifstream in(p);
  return read_cloud_csv(in);
}

bool is_png(const fs::path& p) { return slurp(p).rfind("\x89PNG\r\n\x1a\n", 0) == 0; }

}  // namespace

TEST(AtomicFile, WritesAndReplaces) {
  const auto dir = scratch("atomic");
  const auto p = dir / "a.txt";
  write_file_atomic(p, [](std::ostream& o) { o << "first"; });
  write_file_atomic(p, [](std::ostream& o) { o << "second"; });
  EXPECT_EQ(slurp(p), "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1u);
  EXPECT_THROW(write_file_atomic(dir / "missing" / "b.txt", [](std::ostream& o) { o << "x"; }), std::runtime_error);
  fs::remove_all(dir);
}

TEST(Scatter, RendersPng) {
  const auto dir = scratch("png");
  std::vector<Series> s{{"a", {{0, 0}, {1, 1}}, Marker::Dot}, {"limit", {{0.5, 0.5}}, Marker::Star}};
  const Viewport v = autoscale(s);
  EXPECT_LT(v.xmin, 0.0);
  EXPECT_GT(v.xmax, 1.0);
  EXPECT_NEAR(v.xmax - v.xmin, v.ymax - v.ymin, 1e-12);
  ScatterOptions opts;
  opts.size = 200;
  opts.inset = Viewport{0.4, 0.6, 0.4, 0.6};
  render_scatter_png(dir / "s.png", s, opts);
  EXPECT_TRUE(is_png(dir / "s.png"));
  const std::vector<CloudRow> r{{{0, 0}, "cloud"}, {{1, 0}, "limit"}, {{0, 1}, "u_star"}};
  const auto grouped = series_from_rows(r);
  ASSERT_EQ(grouped.size(), 3u);
  EXPECT_EQ(grouped[0].marker, Marker::Dot);
  EXPECT_EQ(grouped[1].marker, Marker::Star);
  EXPECT_EQ(grouped[2].marker, Marker::Star);
  fs::remove_all(dir);
}

TEST(Figures, Figure2HasEightMarkers) {
  const auto dir = scratch("fig2");
  FigureOptions opts;
  opts.out_dir = dir;
  const auto rep = make_figure(2, example_system(), opts);
  ASSERT_FALSE(rep.files.empty());
  const auto r = rows(dir / "figure2.csv");
  EXPECT_EQ(r.size(), 8u);
  EXPECT_TRUE(is_png(dir / "figure2.png"));
  fs::remove_all(dir);
}

TEST(Figures, QuickRunsAreDeterministic) {
  const auto sys = example_system();
  for (int n : {1, 3, 4, 5}) {
    const auto a = scratch("figa" + std::to_string(n));
    const auto b = scratch("figb" + std::to_string(n));
    FigureOptions opts;
    opts.quick = true;
    opts.png = false;
    opts.out_dir = a;
    const auto ra = make_figure(n, sys, opts);
    opts.out_dir = b;
    const auto rb = make_figure(n, sys, opts);
    ASSERT_EQ(ra.files.size(), rb.files.size());
    for (std::size_t k = 0; k < ra.files.size(); ++k) {
      EXPECT_EQ(ra.files[k].filename(), rb.files[k].filename());
      EXPECT_EQ(slurp(ra.files[k]), slurp(rb.files[k])) << ra.files[k];
    }
    EXPECT_FALSE(ra.notes.empty());
    fs::remove_all(a);
    fs::remove_all(b);
  }
}

TEST(Figures, Figure1LimitsAgree) {
  const auto dir = scratch("fig1");
  FigureOptions opts;
  opts.out_dir = dir;
  opts.png = false;
  opts.quick = true;
  make_figure(1, example_system(), opts);
  std::vector<Point> limits;
  for (int u = 1; u <= 3; ++u)
    for (const auto& r : rows(dir / ("figure1_u" + std::to_string(u) + ".csv")))
      if (r.label == "limit") limits.push_back(r.point);
  ASSERT_EQ(limits.size(), 3u);
  for (const Point& p : limits) EXPECT_LE(point_distance(p, limits[0]), 1e-6);
  fs::remove_all(dir);
}

TEST(Figures, RejectsUnknownFigure) {
  EXPECT_THROW(make_figure(6, example_system()), std::invalid_argument);
  EXPECT_THROW(make_figure(0, example_system()), std::invalid_argument);
}
