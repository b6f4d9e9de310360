#pragma once

// Bounded semantics of nominal regular expressions.  A slice is the set of
// alpha-canonical words of L(e) whose token length is at most the bound.  All
// semantic clauses are length non-decreasing, so slices are computed by plain
// structural recursion and the star clause by a fixpoint that stops once a
// round adds nothing new.

#include <cstddef>
#include <set>

#include "nomlang/regex.hpp"
#include "nomlang/words.hpp"

namespace nomlang {

struct LangSlice {
  Sort sort = Sort::kM;
  std::size_t bound = 0;
  std::set<Word> words;
};

LangSlice enumerate(const Regex& e, Sort sort, std::size_t bound);

/// Decides w in L(e) for the sort of w.
bool member(const Regex& e, const Word& w);

// Slice-level operations; inputs must be canonical words of a single sort.
std::set<Word> slice_concat(const std::set<Word>& a, const std::set<Word>& b,
                            std::size_t bound);
std::set<Word> slice_star(const std::set<Word>& a, Sort sort, std::size_t bound);
std::set<Word> slice_bind(Name n, const std::set<Word>& a, std::size_t bound);

/// Narrows a slice of m-words to the words whose free names lie in `pool`.
std::set<MWord> restrict_to_pool(const std::set<Word>& words, const NameSet& pool);

}  // namespace nomlang
