#include "mifs/scatter_png.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mifs/atomic_file.hpp"

namespace mifs {

namespace {

constexpr std::array<Rgb, 8> kPalette{{{31, 119, 180},
                                       {214, 39, 40},
                                       {44, 160, 44},
                                       {148, 103, 189},
                                       {255, 127, 14},
                                       {23, 190, 207},
                                       {140, 86, 75},
                                       {227, 119, 194}}};
constexpr Rgb kBlack{0, 0, 0};
constexpr Rgb kStar{230, 160, 0};
constexpr Rgb kFrame{90, 90, 90};

class Canvas {
 public:
  Canvas(int w, int h) : w_(w), h_(h), pixels_(static_cast<std::size_t>(w) * h * 3, 255) {}

  void set(int x, int y, Rgb c) {
    if (x < 0 || y < 0 || x >= w_ || y >= h_) return;
    auto* p = &pixels_[(static_cast<std::size_t>(y) * w_ + x) * 3];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  void disc(double cx, double cy, int r, Rgb c) {
    const int x0 = static_cast<int>(std::lround(cx)), y0 = static_cast<int>(std::lround(cy));
    for (int dy = -r; dy <= r; ++dy)
      for (int dx = -r; dx <= r; ++dx)
        if (dx * dx + dy * dy <= r * r) set(x0 + dx, y0 + dy, c);
  }

  // Filled five-pointed star with a dark outline.
  void star(double cx, double cy, double outer, Rgb fill) {
    std::array<std::pair<double, double>, 10> poly;
    for (int k = 0; k < 10; ++k) {
      const double r = k % 2 == 0 ? outer : outer * 0.42;
      const double t = -std::numbers::pi / 2 + k * std::numbers::pi / 5;
      poly[k] = {cx + r * std::cos(t), cy + r * std::sin(t)};
    }
    auto inside = [&](double x, double y) {
      bool in = false;
      for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const auto [xi, yi] = poly[i];
        const auto [xj, yj] = poly[j];
        if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) in = !in;
      }
      return in;
    };
    const int r = static_cast<int>(std::ceil(outer)) + 1;
    const int x0 = static_cast<int>(cx), y0 = static_cast<int>(cy);
    for (int y = y0 - r; y <= y0 + r; ++y)
      for (int x = x0 - r; x <= x0 + r; ++x) {
        const bool c = inside(x + 0.5, y + 0.5);
        if (!c) continue;
        const bool edge = !inside(x - 0.5, y + 0.5) || !inside(x + 1.5, y + 0.5) || !inside(x + 0.5, y - 0.5) ||
                          !inside(x + 0.5, y + 1.5);
        set(x, y, edge ? kBlack : fill);
      }
  }

  void rect_outline(int x0, int y0, int x1, int y1, Rgb c) {
    for (int x = x0; x <= x1; ++x) {
      set(x, y0, c);
      set(x, y1, c);
    }
    for (int y = y0; y <= y1; ++y) {
      set(x0, y, c);
      set(x1, y, c);
    }
  }

  void fill_rect(int x0, int y0, int x1, int y1, Rgb c) {
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) set(x, y, c);
  }

  int width() const { return w_; }
  int height() const { return h_; }
  const std::uint8_t* row(int y) const { return &pixels_[static_cast<std::size_t>(y) * w_ * 3]; }

 private:
  int w_, h_;
  std::vector<std::uint8_t> pixels_;
};

// Maps a viewport onto the pixel box [px0, px1] × [py0, py1], y axis up.
struct Frame {
  Viewport v;
  double px0, py0, px1, py1;
  std::pair<double, double> operator()(Point p) const {
    const double sx = (px1 - px0) / (v.xmax - v.xmin);
    const double sy = (py1 - py0) / (v.ymax - v.ymin);
    return {px0 + (p.x - v.xmin) * sx, py1 - (p.y - v.ymin) * sy};
  }
  bool contains(Point p) const { return p.x >= v.xmin && p.x <= v.xmax && p.y >= v.ymin && p.y <= v.ymax; }
};

void draw(Canvas& canvas, const Frame& frame, std::span<const Series> series, int radius, double star_size) {
  const bool mono = std::count_if(series.begin(), series.end(), [](const Series& s) { return s.marker == Marker::Dot; }) <= 1;
  std::size_t colour = 0;
  for (const auto& s : series) {
    if (s.marker != Marker::Dot) continue;
    const Rgb c = mono ? kBlack : kPalette[colour++ % kPalette.size()];
    for (Point p : s.points) {
      if (!frame.contains(p)) continue;
      const auto [x, y] = frame(p);
      canvas.disc(x, y, radius, c);
    }
  }
  for (const auto& s : series) {
    if (s.marker != Marker::Star) continue;
    for (Point p : s.points) {
      if (!frame.contains(p)) continue;
      const auto [x, y] = frame(p);
      canvas.star(x, y, star_size, kStar);
    }
  }
}

void write_png(const std::filesystem::path& path, const Canvas& canvas) {
  write_file_atomic_c(path, [&](std::FILE* f) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (!info || setjmp(png_jmpbuf(png))) {
      png_destroy_write_struct(&png, &info);
      throw std::runtime_error("PNG encoding failed: " + path.string());
    }
    png_init_io(png, f);
    png_set_IHDR(png, info, static_cast<png_uint_32>(canvas.width()), static_cast<png_uint_32>(canvas.height()), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < canvas.height(); ++y) png_write_row(png, const_cast<png_bytep>(canvas.row(y)));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
  });
}

}  // namespace

Viewport autoscale(std::span<const Series> series) {
  Viewport v{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& s : series)
    for (Point p : s.points) {
      v.xmin = std::min(v.xmin, p.x);
      v.xmax = std::max(v.xmax, p.x);
      v.ymin = std::min(v.ymin, p.y);
      v.ymax = std::max(v.ymax, p.y);
    }
  if (!(v.xmin <= v.xmax)) return {};
  const double span = std::max({v.xmax - v.xmin, v.ymax - v.ymin, 1e-9}) * 1.1;
  const double cx = (v.xmin + v.xmax) / 2, cy = (v.ymin + v.ymax) / 2;
  return {cx - span / 2, cx + span / 2, cy - span / 2, cy + span / 2};
}

std::vector<Series> series_from_rows(std::span<const CloudRow> rows) {
  std::vector<Series> out;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Series& s) { return s.label == r.label; });
    if (it == out.end()) {
      const bool star = r.label == "limit" || (r.label.size() >= 5 && r.label.ends_with("_star"));
      out.push_back({r.label, {}, star ? Marker::Star : Marker::Dot});
      it = out.end() - 1;
    }
    it->points.push_back(r.point);
  }
  return out;
}

void render_scatter_png(const std::filesystem::path& path, std::span<const Series> series,
                        const ScatterOptions& options) {
  if (options.size < 16) throw std::invalid_argument("canvas too small");
  Canvas canvas(options.size, options.size);
  const Viewport view = options.viewport ? *options.viewport : autoscale(series);
  const double n = options.size;
  draw(canvas, {view, 0, 0, n - 1, n - 1}, series, options.radius, n / 80.0);
  if (options.inset) {
    const int x0 = static_cast<int>(n * 0.6), y0 = static_cast<int>(n * 0.02);
    const int x1 = static_cast<int>(n * 0.98), y1 = static_cast<int>(n * 0.4);
    canvas.fill_rect(x0, y0, x1, y1, {255, 255, 255});
    draw(canvas, {*options.inset, double(x0 + 2), double(y0 + 2), double(x1 - 2), double(y1 - 2)}, series,
         options.radius, n / 120.0);
    canvas.rect_outline(x0, y0, x1, y1, kFrame);
  }
  write_png(path, canvas);
}

void render_csv_to_png(const std::filesystem::path& csv, const std::filesystem::path& png,
                       const ScatterOptions& options) {
  std::ifstream in(csv);
  if (!in) throw std::runtime_error("cannot open " + csv.string());
  const auto rows = read_cloud_csv(in);
  const auto series = series_from_rows(rows);
  render_scatter_png(png, series, options);
}

}  // namespace mifs
