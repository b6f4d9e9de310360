#include "nomlang/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <future>
#include <stdexcept>

#include "nomlang/enumerate.hpp"
#include "nomlang/word_syntax.hpp"

namespace nomlang {

// --- equivalence ------------------------------------------------------------

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string format_pool(const NameSet& pool) {
  std::string out = "{";
  for (Name n : pool) out += (out.size() > 1 ? "," : "") + ("#" + n.label());
  return out + "}";
}

}  // namespace

std::string EquivalenceReport::to_text() const {
  std::string out = pass() ? "PASS" : "FAIL";
  out += " " + subject + "\n";
  out += "bound " + std::to_string(bound) + " pool " + format_pool(pool) + " seed " +
         std::to_string(seed) + "\n";
  auto timing = [](double ms) {
    std::string t = std::to_string(ms);
    return t.substr(0, t.find('.') + 2) + " ms";
  };
  out += "regex-slice " + std::to_string(regex_count) + " words " + timing(regex_ms) + "\n";
  out += "hds-slice " + std::to_string(automaton_count) + " words " + timing(automaton_ms) + "\n";
  for (const MWord& w : only_regex) out += "only-regex " + format(w) + "\n";
  for (const MWord& w : only_automaton) out += "only-hds " + format(w) + "\n";
  return out;
}

EquivalenceReport check_equivalence(const Regex& e, const Hds& h, std::size_t bound,
                                    const NameSet& pool, std::uint64_t seed) {
  for (Name n : free_names(e)) {
    if (!pool.count(n)) throw std::invalid_argument("pool misses free name #" + n.label());
  }
  EquivalenceReport r;
  r.subject = to_string(e);
  r.bound = bound;
  r.pool = pool;
  r.seed = seed;

  auto from_regex = std::async(std::launch::async, [&] {
    auto t0 = std::chrono::steady_clock::now();
    std::set<MWord> s = restrict_to_pool(enumerate(e, Sort::kM, bound).words, pool);
    return std::make_pair(std::move(s), ms_since(t0));
  });
  auto t0 = std::chrono::steady_clock::now();
  std::set<MWord> hs;
  for (const MWord& w : language_slice(h, bound, pool)) hs.insert(alpha_canonical(w));
  r.automaton_ms = ms_since(t0);
  auto [rs, rms] = from_regex.get();
  r.regex_ms = rms;

  r.regex_count = rs.size();
  r.automaton_count = hs.size();
  std::set_difference(rs.begin(), rs.end(), hs.begin(), hs.end(),
                      std::inserter(r.only_regex, r.only_regex.end()));
  std::set_difference(hs.begin(), hs.end(), rs.begin(), rs.end(),
                      std::inserter(r.only_automaton, r.only_automaton.end()));
  return r;
}

// --- random words -----------------------------------------------------------

namespace {

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::size_t upto(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n)(rng);
}

// Builds a random term with the operations of W.
template <class W, class Ops>
W gen_term(Rng& rng, std::size_t atoms, std::size_t binders, const std::vector<Name>& names,
           const WordGenOptions& gen, const Ops& ops) {
  W w = ops.eps();
  while (atoms > 0 || binders > 0) {
    if (binders > 0 && (atoms == 0 || coin(rng, 0.4))) {
      std::size_t inner_atoms = upto(rng, atoms);
      std::size_t inner_binders = upto(rng, binders - 1);
      W body = gen_term<W>(rng, inner_atoms, inner_binders, names, gen, ops);
      w = ops.concat(w, ops.bind(pick(rng, names), body));
      atoms -= inner_atoms;
      binders -= 1 + inner_binders;
    } else {
      bool letter = !gen.letters.empty() && (names.empty() || coin(rng, 0.25));
      w = ops.concat(w, ops.atom(letter ? Tok::letter(pick(rng, gen.letters))
                                        : Tok::name(pick(rng, names))));
      --atoms;
    }
  }
  return w;
}

struct MOps {
  MWord eps() const { return MWord::epsilon(); }
  MWord atom(Tok t) const { return t.is_name() ? MWord::name(t.as_name()) : MWord::letter(t.as_letter()); }
  MWord concat(const MWord& a, const MWord& b) const { return MWord::concat(a, b); }
  MWord bind(Name n, const MWord& w) const { return MWord::bind(n, w); }
};

struct SortOps {
  Sort sort;
  Word eps() const { return word_epsilon(sort); }
  Word atom(Tok t) const { return word_atom(sort, t); }
  Word concat(const Word& a, const Word& b) const { return word_concat(a, b); }
  Word bind(Name n, const Word& w) const { return word_bind(n, w); }
};

}  // namespace

MWord random_mword(Rng& rng, const std::vector<Name>& names, const WordGenOptions& gen) {
  if (names.empty() && gen.letters.empty()) return MWord::epsilon();
  std::size_t binders = names.empty() ? 0 : upto(rng, gen.max_binders);
  return gen_term<MWord>(rng, upto(rng, gen.max_atoms), binders, names, gen, MOps{});
}

Word random_word(Rng& rng, Sort s, const std::vector<Name>& names, const WordGenOptions& gen) {
  if (s == Sort::kM) return random_mword(rng, names, gen);
  if (names.empty() && gen.letters.empty()) return word_epsilon(s);
  std::size_t binders = names.empty() ? 0 : upto(rng, gen.max_binders);
  return gen_term<Word>(rng, upto(rng, gen.max_atoms), binders, names, gen, SortOps{s});
}

// --- random regexes ---------------------------------------------------------

namespace {

Regex gen_regex(Rng& rng, std::size_t depth, const RegexGenOptions& gen) {
  if (depth == 0 || coin(rng, 0.25)) {
    std::size_t r = upto(rng, 9);
    if (r == 0) return Regex::zero();
    if (r == 1) return Regex::one();
    if (!gen.letters.empty() && (r <= 4 || gen.names.empty())) {
      return Regex::letter(pick(rng, gen.letters));
    }
    if (gen.names.empty()) return Regex::one();
    return Regex::name(pick(rng, gen.names));
  }
  switch (upto(rng, 5)) {
    case 0: return Regex::sum(gen_regex(rng, depth - 1, gen), gen_regex(rng, depth - 1, gen));
    case 1:
    case 2: return Regex::cat(gen_regex(rng, depth - 1, gen), gen_regex(rng, depth - 1, gen));
    case 3:
    case 4:
      if (!gen.names.empty()) return Regex::binder(pick(rng, gen.names), gen_regex(rng, depth - 1, gen));
      [[fallthrough]];
    default: return Regex::star(gen_regex(rng, depth - 1, gen));
  }
}

}  // namespace

Regex random_regex(Rng& rng, const RegexGenOptions& gen) { return gen_regex(rng, gen.max_depth, gen); }

// --- axioms -----------------------------------------------------------------

std::string axiom_name(Axiom a) { return "Ax" + std::to_string(static_cast<int>(a) + 1); }

bool axiom_in_class(Axiom a, Sort s) {
  switch (s) {
    case Sort::kM: return false;
    case Sort::kG: return a == Axiom::kAx1;
    case Sort::kL: return a <= Axiom::kAx3;
    case Sort::kS: return a <= Axiom::kAx5;
  }
  return false;
}

std::vector<AxiomInstance> gen_axiom_instances(Axiom a, Sort s, std::size_t count,
                                               const NameSet& pool, std::uint64_t seed,
                                               const WordGenOptions& gen, bool override_table) {
  if (!override_table && !axiom_in_class(a, s)) {
    throw std::invalid_argument(axiom_name(a) + " is not an axiom of sort " + sort_name(s));
  }
  if (a == Axiom::kAx2 && gen.letters.empty()) {
    throw std::invalid_argument("Ax2 needs at least one letter");
  }
  if (pool.size() < 2) throw std::invalid_argument("axiom instances need two pool names");
  std::vector<Name> names(pool.begin(), pool.end());
  Rng rng(seed);
  std::vector<AxiomInstance> out;
  auto fresh_for = [&](const NameSet& avoid) -> std::optional<Name> {
    std::vector<Name> ok;
    for (Name n : names) {
      if (!avoid.count(n)) ok.push_back(n);
    }
    if (ok.empty()) return std::nullopt;
    return pick(rng, ok);
  };
  auto cat = [](const Word& x, const Word& y) { return word_concat(x, y); };
  auto bind = [](Name n, const Word& x) { return word_bind(n, x); };

  while (out.size() < count) {
    Word x = random_word(rng, s, names, gen);
    Word y = random_word(rng, s, names, gen);
    Name n = pick(rng, names);
    Name m = pick(rng, names);
    std::string d = axiom_name(a) + " X=" + format(x) + " Y=" + format(y);
    AxiomInstance inst;
    switch (a) {
      case Axiom::kAx1: {
        auto f = fresh_for(support(y));
        if (!f) continue;
        n = *f;
        inst = {cat(bind(n, x), y), bind(n, cat(x, y)), d};
        break;
      }
      case Axiom::kAx2: {
        Word sl = word_atom(s, Tok::letter(pick(rng, gen.letters)));
        inst = {cat(sl, bind(m, y)), bind(m, cat(sl, y)), d};
        break;
      }
      case Axiom::kAx3: {
        if (n == m) continue;
        Word sn = word_atom(s, Tok::name(n));
        inst = {cat(sn, bind(m, y)), bind(m, cat(sn, y)), d};
        break;
      }
      case Axiom::kAx4:
        inst = {bind(n, bind(m, x)), bind(m, bind(n, x)), d};
        break;
      case Axiom::kAx5: {
        auto f = fresh_for(support(x));
        if (!f) continue;
        n = *f;
        inst = {bind(n, x), x, d};
        break;
      }
      case Axiom::kAx6: {
        auto f = fresh_for(support(x));
        if (!f) continue;
        n = *f;
        inst = {cat(x, bind(n, y)), bind(n, cat(x, y)), d};
        break;
      }
    }
    inst.description += " n=#" + n.label() + " m=#" + m.label();
    out.push_back(std::move(inst));
  }
  return out;
}

// --- alpha oracle -----------------------------------------------------------

std::size_t binder_count(const MWord& w) {
  return static_cast<std::size_t>(
      std::count_if(w.tokens().begin(), w.tokens().end(), [](const Tok& t) { return t.is_open(); }));
}

std::optional<MWord> rename_binder(const MWord& w, std::size_t b, Name m) {
  TokenStream t = w.tokens();
  std::size_t i = 0;
  for (std::size_t seen = 0; i < t.size(); ++i) {
    if (t[i].is_open() && seen++ == b) break;
  }
  if (i == t.size()) return std::nullopt;
  Name n = t[i].as_name();
  if (n == m) return w;
  t[i] = Tok::open(m);
  std::vector<Name> inner;
  for (std::size_t j = i + 1; j < t.size(); ++j) {
    const Tok& tok = t[j];
    if (tok.is_open()) {
      inner.push_back(tok.as_name());
    } else if (tok.is_close()) {
      if (inner.empty()) break;
      inner.pop_back();
    } else if (tok.is_name()) {
      bool n_shadowed = std::find(inner.begin(), inner.end(), n) != inner.end();
      bool m_shadowed = std::find(inner.begin(), inner.end(), m) != inner.end();
      if (tok.as_name() == n && !n_shadowed) {
        if (m_shadowed) return std::nullopt;  // would be captured by an inner m
        t[j] = Tok::name(m);
      } else if (tok.as_name() == m && !m_shadowed) {
        return std::nullopt;  // a free m would be captured
      }
    }
  }
  return MWord::from_tokens(std::move(t));
}

bool alpha_oracle(const MWord& w, const MWord& v, const NameSet& pool) {
  std::size_t bw = binder_count(w);
  if (bw > 3 || binder_count(v) > 3) throw std::invalid_argument("alpha_oracle: more than 3 binders");
  NameSet names = all_names(w.tokens());
  NameSet nv = all_names(v.tokens());
  names.insert(nv.begin(), nv.end());
  for (Name n : names) {
    if (!pool.count(n)) throw std::invalid_argument("alpha_oracle: pool misses #" + n.label());
  }
  if (pool.size() < names.size() + 2) throw std::invalid_argument("alpha_oracle: pool too small");

  std::set<MWord> seen{w};
  std::deque<MWord> queue{w};
  while (!queue.empty()) {
    MWord u = std::move(queue.front());
    queue.pop_front();
    if (u == v) return true;
    for (std::size_t b = 0; b < bw; ++b) {
      for (Name m : pool) {
        auto r = rename_binder(u, b, m);
        if (r && seen.insert(*r).second) queue.push_back(std::move(*r));
      }
    }
  }
  return false;
}

MWord random_alpha_variant(Rng& rng, const MWord& w, const std::vector<Name>& names) {
  MWord out = w;
  std::size_t bw = binder_count(w);
  if (names.empty()) return out;
  for (std::size_t round = 0; round < 2; ++round) {
    for (std::size_t b = 0; b < bw; ++b) {
      if (auto r = rename_binder(out, b, pick(rng, names))) out = std::move(*r);
    }
  }
  return out;
}

}  // namespace nomlang
