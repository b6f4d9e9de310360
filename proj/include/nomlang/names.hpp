#pragma once

// Names, letters and finite permutations.
//
// Names are interned: a label such as "n1" is mapped once to a numeric id and
// every later lookup of the same label yields the same Name.  Ids at or above
// kPlaceholderBase are reserved for the bound-name placeholders produced by
// alpha-canonicalization; they print as "_0", "_1", ... and the label "_k"
// interns back to placeholder k.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nomlang {

class Name {
 public:
  using Id = std::uint32_t;
  static constexpr Id kPlaceholderBase = 0x8000'0000u;

  constexpr Name() = default;

  /// Returns the name labelled `label`, creating it on first use.
  static Name intern(std::string_view label);
  static constexpr Name placeholder(std::uint32_t index) {
    return Name(kPlaceholderBase + index);
  }
  static constexpr Name from_id(Id id) { return Name(id); }

  constexpr Id id() const { return id_; }
  constexpr bool valid() const { return id_ != 0; }
  constexpr bool is_placeholder() const { return id_ >= kPlaceholderBase; }
  constexpr std::uint32_t placeholder_index() const {
    return id_ - kPlaceholderBase;
  }
  std::string label() const;

  constexpr auto operator<=>(const Name&) const = default;

 private:
  explicit constexpr Name(Id id) : id_(id) {}
  Id id_ = 0;
};

class Letter {
 public:
  using Id = std::uint32_t;

  constexpr Letter() = default;
  static Letter intern(std::string_view label);
  static constexpr Letter from_id(Id id) { return Letter(id); }

  constexpr Id id() const { return id_; }
  constexpr bool valid() const { return id_ != 0; }
  std::string label() const;

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  explicit constexpr Letter(Id id) : id_(id) {}
  Id id_ = 0;
};

using NameSet = std::set<Name>;

/// True for identifiers accepted as name, letter, state or local labels.
bool is_identifier(std::string_view text);

/// A finite user-declared alphabet of letters.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::set<Letter> letters) : letters_(std::move(letters)) {}

  void add(Letter l) { letters_.insert(l); }
  bool contains(Letter l) const { return letters_.count(l) != 0; }
  const std::set<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }

 private:
  std::set<Letter> letters_;
};

/// A permutation of the name space with finite support: a bijection on a
/// finite set of names, extended by the identity everywhere else.
class Permutation {
 public:
  Permutation() = default;

  static Permutation transposition(Name a, Name b);
  /// Builds the permutation from explicit `from -> to` pairs.  Throws
  /// std::invalid_argument unless the pairs form a bijection of their domain
  /// onto itself.
  static Permutation from_pairs(const std::vector<std::pair<Name, Name>>& pairs);

  Name operator()(Name n) const;
  /// `*this` after `inner`: x |-> (*this)(inner(x)).
  Permutation after(const Permutation& inner) const;
  Permutation inverse() const;
  NameSet support() const;
  bool is_identity() const { return map_.empty(); }

  bool operator==(const Permutation&) const = default;

 private:
  std::map<Name, Name> map_;  // non-identity entries only
};

NameSet permute(const Permutation& pi, const NameSet& names);

}  // namespace nomlang

template <>
struct std::hash<nomlang::Name> {
  std::size_t operator()(nomlang::Name n) const noexcept { return n.id(); }
};

template <>
struct std::hash<nomlang::Letter> {
  std::size_t operator()(nomlang::Letter l) const noexcept { return l.id(); }
};
