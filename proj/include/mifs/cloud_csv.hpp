#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mifs/geometry.hpp"

namespace mifs {

// Point-cloud CSV: one `x,y[,label]` row per point, optional header line.
// Coordinates are written with 17 significant digits so they read back exactly.

struct CloudRow {
  Point point;
  std::string label;
};

void write_cloud_csv(std::ostream& out, std::span<const CloudRow> rows, bool header = true);
void write_cloud_csv(std::ostream& out, std::span<const Point> points, const std::string& label = {},
                     bool header = true);

/// Throws ConfigError (with the line number) on a malformed row.
std::vector<CloudRow> read_cloud_csv(std::istream& in);

}  // namespace mifs
