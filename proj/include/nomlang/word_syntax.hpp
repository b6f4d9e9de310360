#pragma once

// Concrete syntax for words.
//
//   #n          name n
//   a           letter a (bare identifier)
//   <#n. ... >  binder
//   ^           the empty word
//
// Juxtaposition is concatenation.  G-words print through their embedding in
// M, l-words as `[#n #m] body` and s-words as `{#n #m} body`.

#include <string>
#include <string_view>

#include "nomlang/syntax_error.hpp"
#include "nomlang/words.hpp"

namespace nomlang {

/// Parses an m-word; throws SyntaxError.
MWord parse_word(std::string_view text);

std::string format_tokens(const TokenStream& t);
std::string format(const MWord& w);
std::string format(const GWord& w);
std::string format(const LWord& w);
std::string format(const SWord& w);
std::string format(const Word& w);

std::string sort_name(Sort s);
/// Accepts "M", "G", "L" or "S" (either case); throws std::invalid_argument.
Sort parse_sort(std::string_view text);

}  // namespace nomlang
