#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mifs/system.hpp"

namespace mifs {

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::size_t trials = 0;
  double worst = 0.0;  // largest measured quantity compared against `limit`
  double limit = 0.0;
  std::string witness;  // first failing case, when any
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Replaces every per-property trial count when set.
  std::optional<std::size_t> trials;
  std::uint64_t seed = 0x7e51f1;
  /// Negates the translation of this letter's map on the projection side only
  /// (mutation test: the suite is expected to fail).
  std::optional<std::string> inject_fault;
  /// Runs only the properties whose names contain one of these substrings.
  std::vector<std::string> only;
};

struct VerifyReport {
  std::vector<PropertyResult> results;
  std::vector<std::string> warnings;
  bool passed = true;
  double seconds = 0.0;

  std::string format() const;
};

std::vector<std::string> property_names();

VerifyReport run_verify(const MixedSystem& sys, const VerifyOptions& options = {});

}  // namespace mifs
