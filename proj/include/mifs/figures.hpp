#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mifs/system.hpp"

namespace mifs {

struct FigureOptions {
  std::filesystem::path out_dir = ".";
  /// Snap resolution for large clouds written to CSV; 0 writes full resolution.
  double display_delta = 1e-3;
  bool png = true;
  /// Overrides the fixed per-figure seed when set.
  std::optional<std::uint64_t> seed;
  /// Sample counts and step counts are scaled down for quick runs.
  bool quick = false;
};

struct FigureReport {
  int figure = 0;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> notes;  // one line per measured quantity
};

/// Reproduces figure n ∈ {1,…,5} for the example system (any system with the
/// same alphabet labels works). Throws std::invalid_argument for other n.
FigureReport make_figure(int n, const MixedSystem& sys, const FigureOptions& options = {});

}  // namespace mifs
