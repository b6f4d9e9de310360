#pragma once

// Text format for automata (`.hds`) and DOT export.
//
//   # Example: the automaton accepting n, nn, nnn, ...
//   states
//     q0: x
//     q: z
//     q1:
//   initial q0 x=#n
//   finals q1
//   trans
//     q0 --#x[z>x]--> q
//     q --#z[z>z]--> q
//     q --pop--> q1
//
// Labels are `#x` (local name), a letter, `eps`, `push`, `pop`, `open` or
// `close`.  A map lists `x>y` (local image), `x>*` or `x>#n` (name image, for
// push).  An optional `policy relaxed` line selects the relaxed injectivity
// rule.  `#` at the start of a line begins a comment.

#include <string>
#include <string_view>

#include "nomlang/hds.hpp"
#include "nomlang/syntax_error.hpp"

namespace nomlang {

/// Throws SyntaxError.
Hds parse_hds(std::string_view text);
std::string write_hds(const Hds& h);
std::string to_dot(const Hds& h);

}  // namespace nomlang
