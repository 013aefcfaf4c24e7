#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mifs/cloud_csv.hpp"
#include "mifs/geometry.hpp"

namespace mifs {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
};

struct Viewport {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
};

enum class Marker { Dot, Star };

struct Series {
  std::string label;
  std::vector<Point> points;
  Marker marker = Marker::Dot;
};

struct ScatterOptions {
  int size = 1200;   // square canvas, pixels
  int radius = 1;    // dot radius, pixels
  std::optional<Viewport> viewport;  // autoscaled when empty
  std::optional<Viewport> inset;     // magnified region drawn in the top-right corner
};

/// Equal-aspect box around all points with a 5% margin.
Viewport autoscale(std::span<const Series> series);

/// Groups rows by label, in order of first appearance. Rows labelled "limit"
/// or ending in "_star" become star markers.
std::vector<Series> series_from_rows(std::span<const CloudRow> rows);

/// Single series are drawn in black; several series cycle through a fixed palette.
void render_scatter_png(const std::filesystem::path& path, std::span<const Series> series,
                        const ScatterOptions& options = {});

/// Renders a PNG from a cloud CSV, so the image is derived from the data file only.
void render_csv_to_png(const std::filesystem::path& csv, const std::filesystem::path& png,
                       const ScatterOptions& options = {});

}  // namespace mifs
