#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mifs/system.hpp"

namespace mifs {

// Line-oriented system description:
//
//   dim 2
//   letter <label> I|J
//   map <label> affine <a11> <a12> <a21> <a22> <tx> <ty>
//   contraction_a <value>
//
// Tokens are whitespace separated; '#' starts a comment. Letters are declared
// before their maps, and every letter needs exactly one map.

/// Throws ConfigError naming the offending line.
MixedSystem parse_system_config(std::istream& in);
MixedSystem load_system_config(const std::filesystem::path& path);

std::string format_system_config(const MixedSystem& sys);

}  // namespace mifs
