#pragma once

#include <initializer_list>
#include <set>
#include <string>

#include "nomlang/hds.hpp"
#include "nomlang/regex.hpp"
#include "nomlang/word_syntax.hpp"
#include "nomlang/words.hpp"

namespace testing {

using namespace nomlang;

inline Name nm(const char* label) { return Name::intern(label); }
inline Letter lt(const char* label) { return Letter::intern(label); }

inline NameSet names(std::initializer_list<const char*> labels) {
  NameSet out;
  for (const char* l : labels) out.insert(nm(l));
  return out;
}

inline MWord word(const char* text) { return parse_word(text); }

inline std::set<MWord> words(std::initializer_list<const char*> texts) {
  std::set<MWord> out;
  for (const char* t : texts) out.insert(alpha_canonical(parse_word(t)));
  return out;
}

inline Regex re(const char* text) { return parse_nre(text).expr; }

// A three-state automaton with eta x -> n; it accepts n, nn, nnn, ...
inline Hds n_plus() {
  Hds h;
  Name x = nm("x");
  Name z = nm("z");
  StateId q0 = h.add_state("q0", {x});
  StateId q = h.add_state("q", {z});
  StateId q1 = h.add_state("q1");
  h.initial = q0;
  h.eta.set(x, Image::of(nm("n")));
  h.finals = {q1};
  h.add_transition(q0, Label::name(x), q, {{z, Image::of(x)}});
  h.add_transition(q, Label::name(z), q, {{z, Image::of(z)}});
  h.add_transition(q, Label::pop(), q1);
  return h;
}

}  // namespace testing
