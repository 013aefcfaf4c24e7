#pragma once

#include <filesystem>
#include <functional>
#include <cstdio>
#include <iosfwd>

namespace mifs {

/// Writes through a temporary sibling file and renames it over `path`, so
/// readers never observe a partial file. Throws std::runtime_error on IO failure.
void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);

/// Same contract for writers that need a C stream (libpng).
void write_file_atomic_c(const std::filesystem::path& path, const std::function<void(std::FILE*)>& writer);

}  // namespace mifs
