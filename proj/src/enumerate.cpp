#include "nomlang/enumerate.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace nomlang {
namespace {

// Token cost of a binder in each sort.
std::size_t bind_cost(Sort s) { return s == Sort::kS ? 0 : 2; }

std::set<Word> slice(const Regex& e, Sort sort, std::size_t bound) {
  switch (e.kind()) {
    case RegexKind::kOne:
      return {word_epsilon(sort)};
    case RegexKind::kZero:
      return {};
    case RegexKind::kName:
      if (bound < 1) return {};
      return {word_atom(sort, Tok::name(e.name()))};
    case RegexKind::kLetter:
      if (bound < 1) return {};
      return {word_atom(sort, Tok::letter(e.letter()))};
    case RegexKind::kSum: {
      std::set<Word> out = slice(e.left(), sort, bound);
      out.merge(slice(e.right(), sort, bound));
      return out;
    }
    case RegexKind::kCat: {
      std::set<Word> a = slice(e.left(), sort, bound);
      if (a.empty()) return {};
      return slice_concat(a, slice(e.right(), sort, bound), bound);
    }
    case RegexKind::kBinder: {
      std::size_t cost = bind_cost(sort);
      if (bound < cost) return {};
      return slice_bind(e.name(), slice(e.body(), sort, bound - cost), bound);
    }
    case RegexKind::kStar:
      return slice_star(slice(e.body(), sort, bound), sort, bound);
  }
  return {};
}

}  // namespace

std::set<Word> slice_concat(const std::set<Word>& a, const std::set<Word>& b,
                            std::size_t bound) {
  std::map<std::size_t, std::vector<const Word*>> by_length;
  for (const Word& v : b) {
    std::size_t len = token_length(v);
    if (len <= bound) by_length[len].push_back(&v);
  }
  std::set<Word> out;
  for (const Word& u : a) {
    std::size_t lu = token_length(u);
    if (lu > bound) continue;
    for (auto it = by_length.begin(); it != by_length.end() && it->first + lu <= bound; ++it) {
      for (const Word* v : it->second) out.insert(word_concat(u, *v));
    }
  }
  return out;
}

std::set<Word> slice_star(const std::set<Word>& a, Sort sort, std::size_t bound) {
  // Semi-naive iteration: only words new in the last round are extended.
  std::set<Word> result{word_epsilon(sort)};
  std::set<Word> frontier = result;
  while (!frontier.empty()) {
    std::set<Word> next;
    for (const Word& w : slice_concat(frontier, a, bound)) {
      if (!result.count(w)) next.insert(w);
    }
    result.insert(next.begin(), next.end());
    frontier = std::move(next);
  }
  return result;
}

std::set<Word> slice_bind(Name n, const std::set<Word>& a, std::size_t bound) {
  std::set<Word> out;
  for (const Word& w : a) {
    Word b = word_bind(n, w);
    if (token_length(b) <= bound) out.insert(std::move(b));
  }
  return out;
}

LangSlice enumerate(const Regex& e, Sort sort, std::size_t bound) {
  return LangSlice{sort, bound, slice(e, sort, bound)};
}

bool member(const Regex& e, const Word& w) {
  LangSlice s = enumerate(e, sort_of(w), token_length(w));
  return s.words.count(alpha_canonical(w)) != 0;
}

std::set<MWord> restrict_to_pool(const std::set<Word>& words, const NameSet& pool) {
  std::set<MWord> out;
  for (const Word& w : words) {
    MWord m = to_mword(w);
    NameSet free = support(m);
    if (std::all_of(free.begin(), free.end(), [&](Name n) { return pool.count(n) != 0; })) {
      out.insert(alpha_canonical(m));
    }
  }
  return out;
}

}  // namespace nomlang
