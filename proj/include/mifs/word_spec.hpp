#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "mifs/codespace.hpp"

namespace mifs {

// Word-spec grammar (tokens separated by '.'):
//
//   word    := token ('.' token)*  |  ""            (the empty word λ)
//   token   := label
//            | '(' label ('.' label)* ')' '^w'      (a cycle repeated forever)
//            | 'rand:' ('sigma1' | 'jtail') ':' seed
//
// A cycle made of J-letters, or `rand:jtail`, is an infinite J-block γ of a Σ₀
// word. A cycle containing an I-letter, or `rand:sigma1`, is a Σ₁ tail and must
// be the last token. Finite J-runs directly in front of a γ block are absorbed
// into that block's prefix before the Σ₀ constraints are checked.

using ParsedWord = std::variant<FiniteWord, SigmaWord>;

/// Throws SyntaxError (with position), UnknownLetter, or StructureError.
ParsedWord parse_word_spec(std::string_view text, const AlphabetPtr& alphabet);

/// Convenience wrapper that requires an infinite word.
SigmaWord parse_sigma_word(std::string_view text, const AlphabetPtr& alphabet);

std::string render(const FiniteWord& word);
/// Throws StructureError for seeded tails the grammar cannot express
/// (non-uniform weights, undeclared class, or an offset).
std::string render(const AddressStream& stream);
std::string render(const SigmaWord& sigma);
std::string render(const ParsedWord& word);

}  // namespace mifs
