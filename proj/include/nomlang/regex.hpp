#pragma once

// Nominal regular expressions:  e ::= 1 | 0 | n | s | e+e | e e | <n.e> | e*
//
// Concrete syntax, loosest binding first:
//
//   sum   := cat ('+' cat)*
//   cat   := post post*            (juxtaposition)
//   post  := atom '*'*
//   atom  := '1' | '0' | '#' ident | ident | '(' sum ')' | '<' '#' ident '.' sum '>'
//
// A `.nre` file may start with `letters a b c;` declaring the alphabet.

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "nomlang/names.hpp"
#include "nomlang/syntax_error.hpp"

namespace nomlang {

enum class RegexKind : std::uint8_t { kOne, kZero, kName, kLetter, kSum, kCat, kBinder, kStar };

/// Immutable expression tree; copies share structure.
class Regex {
 public:
  Regex();  // 0

  static Regex one();
  static Regex zero();
  static Regex name(Name n);
  static Regex letter(Letter s);
  static Regex sum(Regex a, Regex b);
  static Regex cat(Regex a, Regex b);
  static Regex binder(Name n, Regex body);
  static Regex star(Regex body);

  RegexKind kind() const;
  /// The name of a kName or kBinder node.
  Name name() const;
  Letter letter() const;
  /// Operands: left/right for kSum and kCat, body() for kBinder and kStar.
  const Regex& left() const;
  const Regex& right() const;
  const Regex& body() const { return left(); }

  std::size_t size() const;
  std::size_t depth() const;

  friend bool operator==(const Regex& a, const Regex& b);

 private:
  struct Node;
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct NreFile {
  Alphabet alphabet;
  Regex expr;
};

/// Parses an expression over `alphabet`; throws SyntaxError, including for
/// letters outside the alphabet.
Regex parse_regex(std::string_view text, const Alphabet& alphabet);
/// Parses a `.nre` document: optional `letters ...;` header then one expression.
NreFile parse_nre(std::string_view text);

std::string to_string(const Regex& e);
/// Renders a `.nre` document that parse_nre reads back.
std::string to_nre(const NreFile& file);

NameSet free_names(const Regex& e);
std::set<Letter> letters_of(const Regex& e);
Regex permute(const Permutation& pi, const Regex& e);

}  // namespace nomlang
