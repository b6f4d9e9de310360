#pragma once

// Brute-force cross-checks: regex slices against automaton slices, random
// instances of the word axioms, and alpha-equivalence by exhaustive renaming.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nomlang/hds.hpp"
#include "nomlang/regex.hpp"
#include "nomlang/words.hpp"

namespace nomlang {

using Rng = std::mt19937_64;

struct EquivalenceReport {
  std::string subject;  // the expression, as text
  std::size_t bound = 0;
  NameSet pool;
  std::uint64_t seed = 0;
  std::set<MWord> only_regex;
  std::set<MWord> only_automaton;
  std::size_t regex_count = 0;
  std::size_t automaton_count = 0;
  double regex_ms = 0;
  double automaton_ms = 0;

  bool pass() const { return only_regex.empty() && only_automaton.empty(); }
  /// Line-oriented text: a PASS or FAIL header, counts, then one witness per line.
  std::string to_text() const;
};

/// Compares the pool-restricted m-word slice of e with the slice of h.
/// Throws std::invalid_argument if the pool misses a free name of e.
EquivalenceReport check_equivalence(const Regex& e, const Hds& h, std::size_t bound,
                                    const NameSet& pool, std::uint64_t seed = 0);

enum class Axiom { kAx1, kAx2, kAx3, kAx4, kAx5, kAx6 };

std::string axiom_name(Axiom a);
/// Whether the sort's class is axiomatised by a set containing `a`:
/// G by Ax1, L by Ax1-3, S by Ax1-5.
bool axiom_in_class(Axiom a, Sort s);

struct AxiomInstance {
  Word lhs;
  Word rhs;
  std::string description;
};

struct WordGenOptions {
  std::vector<Letter> letters;
  std::size_t max_atoms = 4;
  std::size_t max_binders = 2;
};

/// Random instances whose freshness premises hold, with both sides evaluated
/// by the sort's own operations.  Throws std::invalid_argument when the sort's
/// class does not include the axiom, unless `override_table` is set.
std::vector<AxiomInstance> gen_axiom_instances(Axiom a, Sort s, std::size_t count,
                                               const NameSet& pool, std::uint64_t seed,
                                               const WordGenOptions& gen = {},
                                               bool override_table = false);

/// Number of binders of w.
std::size_t binder_count(const MWord& w);

/// True iff a sequence of capture-avoiding renamings of single binders, with
/// names from `pool`, rewrites w into v.  Throws std::invalid_argument if a
/// word has more than three binders or the pool does not hold every name of
/// both words plus two more.
bool alpha_oracle(const MWord& w, const MWord& v, const NameSet& pool);

/// Renames binder b (index among opens, left to right) to m, when that
/// neither captures nor is captured.
std::optional<MWord> rename_binder(const MWord& w, std::size_t b, Name m);

// Random generators.

Word random_word(Rng& rng, Sort s, const std::vector<Name>& names, const WordGenOptions& gen);
MWord random_mword(Rng& rng, const std::vector<Name>& names, const WordGenOptions& gen);

struct RegexGenOptions {
  std::size_t max_depth = 4;
  std::vector<Name> names;
  std::vector<Letter> letters;
};

Regex random_regex(Rng& rng, const RegexGenOptions& gen);

/// A random alpha-variant of w: each binder is renamed to a name drawn from
/// `names` whenever that is capture-avoiding.
MWord random_alpha_variant(Rng& rng, const MWord& w, const std::vector<Name>& names);

}  // namespace nomlang
