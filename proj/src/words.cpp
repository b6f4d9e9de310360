#include "nomlang/words.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace nomlang {
namespace {

// Hands out placeholders in increasing index order, skipping `avoid`.
class PlaceholderSource {
 public:
  explicit PlaceholderSource(const NameSet& avoid) : avoid_(avoid) {}

  Name next() {
    while (avoid_.count(Name::placeholder(k_))) ++k_;
    return Name::placeholder(k_++);
  }

 private:
  const NameSet& avoid_;
  std::uint32_t k_ = 0;
};

NameSet placeholders_in(const NameSet& names) {
  NameSet out;
  for (Name n : names) {
    if (n.is_placeholder()) out.insert(n);
  }
  return out;
}

// Free names of a token stream; for g-words there are no closes, so every
// binder's scope runs to the end.
NameSet scoped_free_names(const TokenStream& t) {
  std::vector<Name> scope;
  NameSet out;
  for (const Tok& tok : t) {
    switch (tok.kind) {
      case TokKind::kOpen:
        scope.push_back(tok.as_name());
        break;
      case TokKind::kClose:
        if (!scope.empty()) scope.pop_back();
        break;
      case TokKind::kName:
        if (std::find(scope.begin(), scope.end(), tok.as_name()) == scope.end()) {
          out.insert(tok.as_name());
        }
        break;
      case TokKind::kLetter:
        break;
    }
  }
  return out;
}

TokenStream scoped_canonical(const TokenStream& t, const NameSet& avoid_extra) {
  NameSet avoid = avoid_extra;
  for (Name n : placeholders_in(scoped_free_names(t))) avoid.insert(n);
  PlaceholderSource fresh(avoid);
  std::vector<std::pair<Name, Name>> scope;
  TokenStream out;
  out.reserve(t.size());
  for (const Tok& tok : t) {
    switch (tok.kind) {
      case TokKind::kOpen: {
        Name p = fresh.next();
        scope.emplace_back(tok.as_name(), p);
        out.push_back(Tok::open(p));
        break;
      }
      case TokKind::kClose:
        if (!scope.empty()) scope.pop_back();
        out.push_back(tok);
        break;
      case TokKind::kName: {
        Name n = tok.as_name();
        auto it = std::find_if(scope.rbegin(), scope.rend(),
                               [n](const auto& e) { return e.first == n; });
        out.push_back(Tok::name(it == scope.rend() ? n : it->second));
        break;
      }
      case TokKind::kLetter:
        out.push_back(tok);
        break;
    }
  }
  return out;
}

LWord canonical_l(const LWord& x, const NameSet& avoid_extra) {
  NameSet avoid = avoid_extra;
  for (Name n : placeholders_in(support(x))) avoid.insert(n);
  PlaceholderSource fresh(avoid);
  std::vector<Name> prefix;
  prefix.reserve(x.prefix().size());
  for (std::size_t i = 0; i < x.prefix().size(); ++i) prefix.push_back(fresh.next());
  PlainWord body;
  body.reserve(x.body().size());
  for (const Tok& tok : x.body()) {
    if (!tok.is_name()) {
      body.push_back(tok);
      continue;
    }
    // The innermost binder, i.e. the last prefix occurrence, wins.
    const auto& p = x.prefix();
    auto it = std::find(p.rbegin(), p.rend(), tok.as_name());
    if (it == p.rend()) {
      body.push_back(tok);
    } else {
      auto idx = static_cast<std::size_t>(p.rend() - it) - 1;
      body.push_back(Tok::name(prefix[idx]));
    }
  }
  return LWord(std::move(prefix), std::move(body));
}

SWord canonical_s(const SWord& x, const NameSet& avoid_extra) {
  NameSet avoid = avoid_extra;
  for (Name n : placeholders_in(support(x))) avoid.insert(n);
  PlaceholderSource fresh(avoid);
  std::map<Name, Name> renaming;
  PlainWord body;
  body.reserve(x.body().size());
  for (const Tok& tok : x.body()) {
    if (!tok.is_name() || !x.bound().count(tok.as_name())) {
      body.push_back(tok);
      continue;
    }
    auto [it, fresh_entry] = renaming.try_emplace(tok.as_name());
    if (fresh_entry) it->second = fresh.next();
    body.push_back(Tok::name(it->second));
  }
  NameSet bound;
  for (const auto& kv : renaming) bound.insert(kv.second);
  return SWord(std::move(bound), std::move(body));
}

NameSet plain_names(const PlainWord& w) {
  NameSet out;
  for (const Tok& t : w) {
    if (t.is_name()) out.insert(t.as_name());
  }
  return out;
}

std::vector<std::size_t> match_closes(const TokenStream& t) {
  std::vector<std::size_t> match(t.size(), t.size());
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].is_open()) {
      open.push_back(i);
    } else if (t[i].is_close()) {
      match[open.back()] = i;
      open.pop_back();
    }
  }
  return match;
}

GWord quotient_mg_range(const TokenStream& t, const std::vector<std::size_t>& match,
                        std::size_t lo, std::size_t hi) {
  std::vector<GWord> pieces;
  for (std::size_t i = lo; i < hi; ++i) {
    if (t[i].is_open()) {
      std::size_t j = match[i];
      pieces.push_back(bind_g(t[i].as_name(), quotient_mg_range(t, match, i + 1, j)));
      i = j;
    } else {
      pieces.push_back(GWord::prefix(t[i], GWord()));
    }
  }
  GWord acc;
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) acc = concat_g(*it, acc);
  return alpha_canonical(acc);
}

std::set<PlainWord> pointwise_concat(const std::set<PlainWord>& a,
                                     const std::set<PlainWord>& b) {
  std::set<PlainWord> out;
  for (const auto& u : a) {
    for (const auto& v : b) {
      PlainWord w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.insert(std::move(w));
    }
  }
  return out;
}

std::set<PlainWord> project(const TokenStream& t, const std::vector<std::size_t>& match,
                            std::size_t lo, std::size_t hi, const NameSet& pool) {
  std::set<PlainWord> acc{PlainWord{}};
  for (std::size_t i = lo; i < hi; ++i) {
    if (!t[i].is_open()) {
      acc = pointwise_concat(acc, {PlainWord{t[i]}});
      continue;
    }
    std::size_t j = match[i];
    Name n = t[i].as_name();
    std::set<PlainWord> inner = project(t, match, i + 1, j, pool);
    std::set<PlainWord> bound = inner;
    for (const auto& v : inner) {
      NameSet in_v = plain_names(v);
      for (Name m : pool) {
        if (in_v.count(m)) continue;
        bound.insert(permute(Permutation::transposition(n, m), v));
      }
    }
    acc = pointwise_concat(acc, bound);
    i = j;
  }
  return acc;
}

[[noreturn]] void sort_mismatch() {
  throw std::invalid_argument("words of different sorts cannot be combined");
}

}  // namespace

bool is_balanced(const TokenStream& t) {
  std::size_t depth = 0;
  for (const Tok& tok : t) {
    if (tok.is_open()) {
      ++depth;
    } else if (tok.is_close()) {
      if (depth == 0) return false;
      --depth;
    }
  }
  return depth == 0;
}

bool is_plain(const TokenStream& t) {
  return std::all_of(t.begin(), t.end(),
                     [](const Tok& x) { return x.is_name() || x.is_letter(); });
}

MWord MWord::name(Name n) {
  MWord w;
  w.toks_.push_back(Tok::name(n));
  return w;
}

MWord MWord::letter(Letter s) {
  MWord w;
  w.toks_.push_back(Tok::letter(s));
  return w;
}

MWord MWord::concat(const MWord& a, const MWord& b) {
  MWord w = a;
  w.toks_.insert(w.toks_.end(), b.toks_.begin(), b.toks_.end());
  return w;
}

MWord MWord::bind(Name n, const MWord& body) {
  MWord w;
  w.toks_.reserve(body.toks_.size() + 2);
  w.toks_.push_back(Tok::open(n));
  w.toks_.insert(w.toks_.end(), body.toks_.begin(), body.toks_.end());
  w.toks_.push_back(Tok::close());
  return w;
}

MWord MWord::from_tokens(TokenStream t) {
  if (!is_balanced(t)) throw std::invalid_argument("unbalanced token stream");
  MWord w;
  w.toks_ = std::move(t);
  return w;
}

GWord GWord::prefix(Tok t, const GWord& w) {
  if (!t.is_name() && !t.is_letter()) {
    throw std::invalid_argument("g-word prefix must be a name or a letter");
  }
  GWord out;
  out.items_.reserve(w.items_.size() + 1);
  out.items_.push_back(t);
  out.items_.insert(out.items_.end(), w.items_.begin(), w.items_.end());
  return out;
}

GWord GWord::bind(Name n, const GWord& w) {
  GWord out;
  out.items_.reserve(w.items_.size() + 1);
  out.items_.push_back(Tok::open(n));
  out.items_.insert(out.items_.end(), w.items_.begin(), w.items_.end());
  return out;
}

GWord GWord::from_items(TokenStream items) {
  for (const Tok& t : items) {
    if (t.is_close()) throw std::invalid_argument("g-words have no closing tokens");
  }
  GWord out;
  out.items_ = std::move(items);
  return out;
}

std::size_t GWord::token_length() const {
  auto binders = std::count_if(items_.begin(), items_.end(),
                               [](const Tok& t) { return t.is_open(); });
  return items_.size() + static_cast<std::size_t>(binders);
}

LWord::LWord(std::vector<Name> prefix, PlainWord body)
    : prefix_(std::move(prefix)), body_(std::move(body)) {
  if (!is_plain(body_)) throw std::invalid_argument("l-word body must be plain");
}

SWord::SWord(NameSet bound, PlainWord body)
    : bound_(std::move(bound)), body_(std::move(body)) {
  if (!is_plain(body_)) throw std::invalid_argument("s-word body must be plain");
  NameSet present = plain_names(body_);
  for (Name n : bound_) {
    if (!present.count(n)) {
      throw std::invalid_argument("bound name " + n.label() + " does not occur in the body");
    }
  }
}

// --- permutation action -----------------------------------------------------

namespace {
TokenStream permute_tokens(const Permutation& pi, const TokenStream& t) {
  TokenStream out = t;
  for (Tok& tok : out) {
    if (tok.is_name()) tok = Tok::name(pi(tok.as_name()));
    if (tok.is_open()) tok = Tok::open(pi(tok.as_name()));
  }
  return out;
}
}  // namespace

PlainWord permute(const Permutation& pi, const PlainWord& w) {
  return permute_tokens(pi, w);
}

MWord permute(const Permutation& pi, const MWord& w) {
  return MWord::from_tokens(permute_tokens(pi, w.tokens()));
}

GWord permute(const Permutation& pi, const GWord& w) {
  return GWord::from_items(permute_tokens(pi, w.items()));
}

LWord permute(const Permutation& pi, const LWord& w) {
  std::vector<Name> prefix;
  for (Name n : w.prefix()) prefix.push_back(pi(n));
  return LWord(std::move(prefix), permute_tokens(pi, w.body()));
}

SWord permute(const Permutation& pi, const SWord& w) {
  return SWord(nomlang::permute(pi, w.bound()), permute_tokens(pi, w.body()));
}

Word permute(const Permutation& pi, const Word& w) {
  return std::visit([&](const auto& x) -> Word { return permute(pi, x); }, w);
}

// --- support ----------------------------------------------------------------

NameSet support(const MWord& w) { return scoped_free_names(w.tokens()); }
NameSet support(const GWord& w) { return scoped_free_names(w.items()); }

NameSet support(const LWord& w) {
  NameSet out = plain_names(w.body());
  for (Name n : w.prefix()) out.erase(n);
  return out;
}

NameSet support(const SWord& w) {
  NameSet out = plain_names(w.body());
  for (Name n : w.bound()) out.erase(n);
  return out;
}

NameSet support(const Word& w) {
  return std::visit([](const auto& x) { return support(x); }, w);
}

NameSet all_names(const TokenStream& t) {
  NameSet out;
  for (const Tok& tok : t) {
    if (tok.is_name() || tok.is_open()) out.insert(tok.as_name());
  }
  return out;
}

// --- canonical forms --------------------------------------------------------

MWord alpha_canonical(const MWord& w) {
  return MWord::from_tokens(scoped_canonical(w.tokens(), {}));
}

GWord alpha_canonical(const GWord& w) {
  return GWord::from_items(scoped_canonical(w.items(), {}));
}

LWord alpha_canonical(const LWord& w) { return canonical_l(w, {}); }
SWord alpha_canonical(const SWord& w) { return canonical_s(w, {}); }

Word alpha_canonical(const Word& w) {
  return std::visit([](const auto& x) -> Word { return alpha_canonical(x); }, w);
}

// --- sort operations --------------------------------------------------------

GWord concat_g(const GWord& w, const GWord& v) {
  TokenStream items = scoped_canonical(w.items(), placeholders_in(support(v)));
  items.insert(items.end(), v.items().begin(), v.items().end());
  return GWord::from_items(scoped_canonical(items, {}));
}

GWord bind_g(Name n, const GWord& w) { return alpha_canonical(GWord::bind(n, w)); }

LWord concat_l(const LWord& x, const LWord& y) {
  LWord x2 = canonical_l(x, placeholders_in(support(y)));
  NameSet avoid = support(x2);
  avoid.insert(x2.prefix().begin(), x2.prefix().end());
  LWord y2 = canonical_l(y, placeholders_in(avoid));
  std::vector<Name> prefix = x2.prefix();
  prefix.insert(prefix.end(), y2.prefix().begin(), y2.prefix().end());
  PlainWord body = x2.body();
  body.insert(body.end(), y2.body().begin(), y2.body().end());
  return alpha_canonical(LWord(std::move(prefix), std::move(body)));
}

LWord bind_l(Name n, const LWord& x) {
  std::vector<Name> prefix{n};
  prefix.insert(prefix.end(), x.prefix().begin(), x.prefix().end());
  return alpha_canonical(LWord(std::move(prefix), x.body()));
}

SWord concat_s(const SWord& x, const SWord& y) {
  SWord x2 = canonical_s(x, placeholders_in(support(y)));
  NameSet avoid = support(x2);
  avoid.insert(x2.bound().begin(), x2.bound().end());
  SWord y2 = canonical_s(y, placeholders_in(avoid));
  NameSet bound = x2.bound();
  bound.insert(y2.bound().begin(), y2.bound().end());
  PlainWord body = x2.body();
  body.insert(body.end(), y2.body().begin(), y2.body().end());
  return alpha_canonical(SWord(std::move(bound), std::move(body)));
}

SWord bind_s(Name n, const SWord& x) {
  SWord x2 = canonical_s(x, NameSet{n});
  if (!plain_names(x2.body()).count(n)) return x2;
  NameSet bound = x2.bound();
  bound.insert(n);
  return alpha_canonical(SWord(std::move(bound), x2.body()));
}

// --- embeddings and quotients -----------------------------------------------

LWord embed_sl(const SWord& x) {
  // NameSet iterates in ascending id order.
  return LWord(std::vector<Name>(x.bound().begin(), x.bound().end()), x.body());
}

GWord embed_lg(const LWord& x) {
  TokenStream items;
  for (Name n : x.prefix()) items.push_back(Tok::open(n));
  items.insert(items.end(), x.body().begin(), x.body().end());
  return GWord::from_items(std::move(items));
}

MWord embed_gm(const GWord& x) {
  TokenStream t = x.items();
  for (const Tok& item : x.items()) {
    if (item.is_open()) t.push_back(Tok::close());
  }
  return MWord::from_tokens(std::move(t));
}

MWord to_mword(const Word& w) {
  struct Visitor {
    MWord operator()(const MWord& x) const { return x; }
    MWord operator()(const GWord& x) const { return embed_gm(x); }
    MWord operator()(const LWord& x) const { return embed_gm(embed_lg(x)); }
    MWord operator()(const SWord& x) const { return embed_gm(embed_lg(embed_sl(x))); }
  };
  return std::visit(Visitor{}, w);
}

GWord quotient_mg(const MWord& w) {
  return quotient_mg_range(w.tokens(), match_closes(w.tokens()), 0, w.tokens().size());
}

LWord quotient_gl(const GWord& w) {
  LWord acc;
  for (auto it = w.items().rbegin(); it != w.items().rend(); ++it) {
    if (it->is_open()) {
      acc = bind_l(it->as_name(), acc);
    } else {
      acc = concat_l(LWord({}, PlainWord{*it}), acc);
    }
  }
  return alpha_canonical(acc);
}

SWord quotient_ls(const LWord& w) {
  SWord acc(NameSet{}, w.body());
  for (auto it = w.prefix().rbegin(); it != w.prefix().rend(); ++it) {
    acc = bind_s(*it, acc);
  }
  return alpha_canonical(acc);
}

TokenStream tokenize(const MWord& w) { return w.tokens(); }

MWord parse_tokens(const TokenStream& t) { return MWord::from_tokens(t); }

std::set<PlainWord> plain_words_bounded(const std::set<MWord>& ws, const NameSet& pool) {
  for (Name n : pool) {
    if (n.is_placeholder()) {
      throw std::invalid_argument("pool must not contain placeholder " + n.label());
    }
  }
  std::set<PlainWord> out;
  for (const MWord& raw : ws) {
    for (Name n : support(raw)) {
      if (!pool.count(n)) {
        throw std::invalid_argument("pool misses free name " + n.label());
      }
    }
    MWord w = alpha_canonical(raw);
    const TokenStream& t = w.tokens();
    for (auto& v : project(t, match_closes(t), 0, t.size(), pool)) {
      NameSet in_v = plain_names(v);
      if (std::all_of(in_v.begin(), in_v.end(), [&](Name n) { return pool.count(n) != 0; })) {
        out.insert(v);
      }
    }
  }
  return out;
}

// --- sort-generic helpers ---------------------------------------------------

Sort sort_of(const Word& w) { return static_cast<Sort>(w.index()); }

std::size_t token_length(const Word& w) {
  return std::visit([](const auto& x) { return x.token_length(); }, w);
}

Word word_epsilon(Sort s) {
  switch (s) {
    case Sort::kM: return MWord();
    case Sort::kG: return GWord();
    case Sort::kL: return LWord();
    case Sort::kS: return SWord();
  }
  return MWord();
}

Word word_atom(Sort s, Tok t) {
  switch (s) {
    case Sort::kM: return MWord::from_tokens({t});
    case Sort::kG: return GWord::prefix(t, GWord());
    case Sort::kL: return LWord({}, PlainWord{t});
    case Sort::kS: return SWord({}, PlainWord{t});
  }
  return MWord();
}

Word word_concat(const Word& a, const Word& b) {
  if (a.index() != b.index()) sort_mismatch();
  switch (sort_of(a)) {
    case Sort::kM:
      return alpha_canonical(MWord::concat(std::get<MWord>(a), std::get<MWord>(b)));
    case Sort::kG: return concat_g(std::get<GWord>(a), std::get<GWord>(b));
    case Sort::kL: return concat_l(std::get<LWord>(a), std::get<LWord>(b));
    case Sort::kS: return concat_s(std::get<SWord>(a), std::get<SWord>(b));
  }
  return a;
}

Word word_bind(Name n, const Word& w) {
  switch (sort_of(w)) {
    case Sort::kM: return alpha_canonical(MWord::bind(n, std::get<MWord>(w)));
    case Sort::kG: return bind_g(n, std::get<GWord>(w));
    case Sort::kL: return bind_l(n, std::get<LWord>(w));
    case Sort::kS: return bind_s(n, std::get<SWord>(w));
  }
  return w;
}

}  // namespace nomlang
