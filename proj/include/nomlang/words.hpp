#pragma once

// The four sorts of words with binders.
//
//   M  m-words: arbitrary nesting, stored as a balanced token stream
//   G  g-words: a binder's scope runs to the end of the word
//   L  l-words: a prefix of binders followed by a binder-free body
//   S  s-words: a set of bound names and a binder-free body
//
// Values hold whatever representative they were built from.  Operations on
// G, L and S return alpha-canonical results; alpha_canonical() maps any
// representative to the unique one in its class, so `==` on canonical values
// is alpha-equivalence.  Bound names in canonical words are placeholders
// (Name::placeholder), numbered in traversal order and chosen to avoid any
// placeholder that occurs free.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <variant>
#include <vector>

#include "nomlang/names.hpp"

namespace nomlang {

enum class TokKind : std::uint8_t { kName, kLetter, kOpen, kClose };

struct Tok {
  TokKind kind = TokKind::kClose;
  std::uint32_t id = 0;

  static Tok name(Name n) { return {TokKind::kName, n.id()}; }
  static Tok letter(Letter s) { return {TokKind::kLetter, s.id()}; }
  static Tok open(Name n) { return {TokKind::kOpen, n.id()}; }
  static Tok close() { return {TokKind::kClose, 0}; }

  bool is_name() const { return kind == TokKind::kName; }
  bool is_letter() const { return kind == TokKind::kLetter; }
  bool is_open() const { return kind == TokKind::kOpen; }
  bool is_close() const { return kind == TokKind::kClose; }
  Name as_name() const { return Name::from_id(id); }
  Letter as_letter() const { return Letter::from_id(id); }

  auto operator<=>(const Tok&) const = default;
};

using TokenStream = std::vector<Tok>;
/// A word without binders: only name and letter tokens.
using PlainWord = std::vector<Tok>;

enum class Sort { kM, kG, kL, kS };

/// True iff every close matches an earlier unmatched open.
bool is_balanced(const TokenStream& t);
bool is_plain(const TokenStream& t);

class MWord {
 public:
  MWord() = default;

  static MWord epsilon() { return {}; }
  static MWord name(Name n);
  static MWord letter(Letter s);
  static MWord concat(const MWord& a, const MWord& b);
  static MWord bind(Name n, const MWord& w);
  /// Throws std::invalid_argument on an unbalanced stream.
  static MWord from_tokens(TokenStream t);

  const TokenStream& tokens() const { return toks_; }
  std::size_t token_length() const { return toks_.size(); }
  bool empty() const { return toks_.empty(); }

  auto operator<=>(const MWord&) const = default;

 private:
  TokenStream toks_;
};

/// Items are names, letters and binders (kOpen); there are no closes.
class GWord {
 public:
  GWord() = default;

  static GWord epsilon() { return {}; }
  static GWord prefix(Tok t, const GWord& w);  // t is a name or letter
  static GWord bind(Name n, const GWord& w);
  static GWord from_items(TokenStream items);

  const TokenStream& items() const { return items_; }
  /// Counts a binder as two tokens, matching its image in M.
  std::size_t token_length() const;
  bool empty() const { return items_.empty(); }

  auto operator<=>(const GWord&) const = default;

 private:
  TokenStream items_;
};

class LWord {
 public:
  LWord() = default;
  LWord(std::vector<Name> prefix, PlainWord body);

  const std::vector<Name>& prefix() const { return prefix_; }
  const PlainWord& body() const { return body_; }
  std::size_t token_length() const { return body_.size() + 2 * prefix_.size(); }

  auto operator<=>(const LWord&) const = default;

 private:
  std::vector<Name> prefix_;
  PlainWord body_;
};

class SWord {
 public:
  SWord() = default;
  /// Throws std::invalid_argument unless `bound` only holds names of `body`.
  SWord(NameSet bound, PlainWord body);

  const NameSet& bound() const { return bound_; }
  const PlainWord& body() const { return body_; }
  /// Binders are invisible in the length of an s-word.
  std::size_t token_length() const { return body_.size(); }

  auto operator<=>(const SWord&) const = default;

 private:
  NameSet bound_;
  PlainWord body_;
};

using Word = std::variant<MWord, GWord, LWord, SWord>;

// Permutation action: renames every occurrence, free or bound.
MWord permute(const Permutation& pi, const MWord& w);
GWord permute(const Permutation& pi, const GWord& w);
LWord permute(const Permutation& pi, const LWord& w);
SWord permute(const Permutation& pi, const SWord& w);
PlainWord permute(const Permutation& pi, const PlainWord& w);
Word permute(const Permutation& pi, const Word& w);

// Free names.
NameSet support(const MWord& w);
NameSet support(const GWord& w);
NameSet support(const LWord& w);
NameSet support(const SWord& w);
NameSet support(const Word& w);

/// Every name that occurs, bound or free, including binder positions.
NameSet all_names(const TokenStream& t);

MWord alpha_canonical(const MWord& w);
GWord alpha_canonical(const GWord& w);
LWord alpha_canonical(const LWord& w);
SWord alpha_canonical(const SWord& w);
Word alpha_canonical(const Word& w);

template <class W>
bool alpha_equivalent(const W& a, const W& b) {
  return alpha_canonical(a) == alpha_canonical(b);
}

GWord concat_g(const GWord& w, const GWord& v);
GWord bind_g(Name n, const GWord& w);
LWord concat_l(const LWord& x, const LWord& y);
LWord bind_l(Name n, const LWord& x);
SWord concat_s(const SWord& x, const SWord& y);
SWord bind_s(Name n, const SWord& x);

LWord embed_sl(const SWord& x);
GWord embed_lg(const LWord& x);
MWord embed_gm(const GWord& x);
MWord to_mword(const Word& w);

// The quotient maps M -> G -> L -> S, defined as the unique homomorphisms
// that send names, letters, concatenation and binding to their counterparts.
GWord quotient_mg(const MWord& w);
LWord quotient_gl(const GWord& w);
SWord quotient_ls(const LWord& w);

TokenStream tokenize(const MWord& w);
/// Throws std::invalid_argument on an unbalanced stream.
MWord parse_tokens(const TokenStream& t);

/// Pool-restricted projection to plain words.  Every input word is taken to
/// its canonical representative first, so bound names are placeholders that
/// can never collide with the pool.  Throws std::invalid_argument if the pool
/// misses a free name or holds a placeholder.
std::set<PlainWord> plain_words_bounded(const std::set<MWord>& ws,
                                        const NameSet& pool);

Sort sort_of(const Word& w);
std::size_t token_length(const Word& w);

// Sort-generic word construction.
Word word_epsilon(Sort s);
Word word_atom(Sort s, Tok t);  // t is a name or letter
Word word_concat(const Word& a, const Word& b);
Word word_bind(Name n, const Word& w);

}  // namespace nomlang
