// Acceptance gate: one PASS or FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nomlang/compiler.hpp"
#include "nomlang/enumerate.hpp"
#include "nomlang/oracle.hpp"
#include "nomlang/word_syntax.hpp"

using namespace nomlang;

namespace {

using Clock = std::chrono::steady_clock;

Name nm(const char* s) { return Name::intern(s); }
Letter lt(const char* s) { return Letter::intern(s); }

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string witness;  // first failure, if any

  void fail(const std::string& w) {
    if (pass) witness = w;
    pass = false;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<MWord> regex_slice(const Regex& e, std::size_t bound, const NameSet& pool) {
  return restrict_to_pool(enumerate(e, Sort::kM, bound).words, pool);
}

RegexGenOptions three_names_two_letters(std::size_t depth) {
  RegexGenOptions g;
  g.max_depth = depth;
  g.names = {nm("n"), nm("m"), nm("l")};
  g.letters = {lt("a"), lt("b")};
  return g;
}

NameSet pool3() { return {nm("n"), nm("m"), nm("l")}; }

// 1. Corpus and random expressions: compiled slices equal regex slices.
Outcome corpus_and_random() {
  Outcome o;
  auto start = Clock::now();
  NameSet pool = pool3();
  std::size_t checked = 0;
  auto run = [&](const Regex& e, std::size_t bound, const NameSet& p) {
    EquivalenceReport r = check_equivalence(e, compile(e), bound, p, 1);
    ++checked;
    if (!r.pass()) o.fail(r.to_text());
  };
  struct Item {
    const char* file;
    std::size_t bound;
  };
  for (Item it : {Item{"fresh_names.nre", 8}, Item{"fresh_pairs.nre", 8}, Item{"worked.nre", 8},
                  Item{"nonces.nre", 8}, Item{"needham_schroeder.nre", 14}}) {
    run(parse_nre(read_file(std::string(NOMLANG_CORPUS_DIR) + "/" + it.file)).expr, it.bound, pool);
  }
  // One protocol run is 19 tokens long, so bound 14 sees only the empty word.
  run(parse_nre(read_file(std::string(NOMLANG_CORPUS_DIR) + "/needham_schroeder.nre")).expr, 19,
      pool);
  Rng rng(1);
  RegexGenOptions gen = three_names_two_letters(4);
  for (int i = 0; i < 300; ++i) run(random_regex(rng, gen), 8, pool);
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= 300) o.fail("runtime " + std::to_string(secs) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu expressions, %.1f s", checked, secs);
  o.detail = buf;
  return o;
}

// 2. The four constructions against the regex operations at bound 6.
Outcome constructions() {
  Outcome o;
  Rng rng(2);
  RegexGenOptions gen = three_names_two_letters(3);
  NameSet pool = pool3();
  const std::size_t k = 6;
  for (int i = 0; i < 100; ++i) {
    Regex a = random_regex(rng, gen);
    Regex b = random_regex(rng, gen);
    Name n = gen.names[static_cast<std::size_t>(i) % gen.names.size()];
    Hds ha = compile(a);
    Hds hb = compile(b);
    std::string ab = to_string(a) + " / " + to_string(b);
    if (language_slice(hds_sum(ha, hb), k, pool) != regex_slice(Regex::sum(a, b), k, pool)) o.fail("sum " + ab);
    if (language_slice(hds_concat(ha, hb), k, pool) != regex_slice(Regex::cat(a, b), k, pool)) {
      o.fail("concat " + ab);
    }
    if (language_slice(hds_star(ha), k, pool) != regex_slice(Regex::star(a), k, pool)) o.fail("star " + ab);
    if (language_slice(hds_bind(n, ha), k, pool) != regex_slice(Regex::binder(n, a), k, pool)) {
      o.fail("bind " + ab);
    }
  }
  o.detail = "100 operand pairs, bound 6";
  return o;
}

Hds n_plus() {
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

// 3. The n+ automaton over every token stream of length <= 6 on {n, m}.
Outcome short_streams() {
  Outcome o;
  Hds h = n_plus();
  Name n = nm("n");
  Name m = nm("m");
  std::vector<Tok> alphabet{Tok::name(n), Tok::name(m), Tok::open(n), Tok::open(m), Tok::close()};
  std::size_t streams = 0;
  std::size_t accepted = 0;
  std::vector<TokenStream> layer{{}};
  for (std::size_t len = 0; len <= 6; ++len) {
    std::vector<TokenStream> next;
    for (const TokenStream& t : layer) {
      ++streams;
      bool expect = !t.empty() && std::all_of(t.begin(), t.end(), [&](Tok k) { return k == Tok::name(n); });
      AcceptResult r = accepts(h, t);
      if (r.verdict == Verdict::kBudgetExhausted) o.fail("budget on " + format_tokens(t));
      bool got = r.verdict == Verdict::kAccept;
      accepted += got;
      if (got != expect) o.fail(format_tokens(t));
      if (len < 6) {
        for (Tok k : alphabet) {
          TokenStream u = t;
          u.push_back(k);
          next.push_back(std::move(u));
        }
      }
    }
    layer = std::move(next);
  }
  if (accepted != 6) o.fail("accepted " + std::to_string(accepted) + " streams");
  o.detail = std::to_string(streams) + " streams, " + std::to_string(accepted) + " accepted";
  return o;
}

// 4. Junk below the stack top does not lose runs; add_name keeps slices.
Outcome stack_junk_and_add_name() {
  Outcome o;
  Rng rng(4);
  RegexGenOptions gen = three_names_two_letters(3);
  WordGenOptions wg;
  wg.letters = gen.letters;
  NameSet pool = pool3();
  std::vector<Name> junk_names{nm("n"), nm("m"), nm("l"), nm("j")};
  std::size_t accepting = 0;
  for (int i = 0; i < 100; ++i) {
    Regex e = random_regex(rng, gen);
    Hds h = compile(e);
    std::set<MWord> lang = regex_slice(e, 6, pool);
    std::vector<MWord> candidates(lang.begin(), lang.end());
    MWord w = (!candidates.empty() && i % 4 != 0)
                  ? candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)]
                  : alpha_canonical(random_mword(rng, gen.names, wg));
    std::vector<NameMap> frames;
    std::size_t depth = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    NameSet locals = h.local_names();
    for (std::size_t d = 0; d < depth; ++d) {
      NameMap f;
      for (Name x : locals) {
        if (rng() % 2) f.set(x, Image::of(junk_names[rng() % junk_names.size()]));
      }
      frames.push_back(f);
    }
    Stack junk(frames);
    TokenStream t = w.tokens();
    std::set<StateId> clean = rec(h, t, Stack().push(h.eta));
    std::set<StateId> dirty = rec(h, t, junk.push(h.eta));
    bool acc = std::any_of(clean.begin(), clean.end(), [&](StateId q) { return h.finals.count(q) > 0; });
    accepting += acc;
    if (!std::includes(dirty.begin(), dirty.end(), clean.begin(), clean.end())) {
      o.fail("junk stack: " + to_string(e) + " on " + format(w) + " over " + format(junk));
    }
    Hds a = add_name(h, nm("fresh"));
    if (language_slice(a, 6, pool) != language_slice(h, 6, pool)) o.fail("add_name: " + to_string(e));
  }
  o.detail = "100 triples (" + std::to_string(accepting) + " accepting), 100 add_name checks";
  return o;
}

// 5. Axiom instances in the classes that include them.
Outcome axioms() {
  Outcome o;
  NameSet pool = {nm("n"), nm("m"), nm("l"), nm("k")};
  WordGenOptions gen;
  gen.letters = {lt("a"), lt("b")};
  std::size_t suites = 0;
  std::uint64_t seed = 50;
  for (Sort s : {Sort::kG, Sort::kL, Sort::kS}) {
    for (Axiom a : {Axiom::kAx1, Axiom::kAx2, Axiom::kAx3, Axiom::kAx4, Axiom::kAx5}) {
      if (!axiom_in_class(a, s)) continue;
      ++suites;
      for (const AxiomInstance& inst : gen_axiom_instances(a, s, 200, pool, seed++, gen)) {
        if (!(inst.lhs == inst.rhs)) {
          o.fail(sort_name(s) + " " + inst.description + ": " + format(inst.lhs) + " vs " + format(inst.rhs));
        }
      }
    }
  }
  o.detail = std::to_string(suites) + " suites x 200 instances";
  return o;
}

// 6. The s-word language of fresh names is idempotent under concatenation.
Outcome l2_identity() {
  Outcome o;
  std::vector<Name> pool{nm("n1"), nm("n2"), nm("n3"), nm("n4")};
  NameSet ps(pool.begin(), pool.end());
  std::set<Word> l2 = enumerate(parse_nre("<#n. #n >*").expr, Sort::kS, 4).words;
  std::set<Word> l22 = slice_concat(l2, l2, 4);
  auto plain = [&](const std::set<Word>& ws) {
    std::set<MWord> ms;
    for (const Word& w : ws) ms.insert(to_mword(w));
    return plain_words_bounded(ms, ps);
  };
  std::set<PlainWord> a = plain(l2);
  std::set<PlainWord> b = plain(l22);
  // Independent count: repetition-free words of length <= 4 over 4 names.
  std::size_t expect = 1 + 4 + 12 + 24 + 24;
  if (a != b) o.fail("L2 o L2 differs from L2");
  if (a.size() != expect) o.fail(std::to_string(a.size()) + " plain words, expected " + std::to_string(expect));
  o.detail = std::to_string(a.size()) + " plain words";
  return o;
}

// 7. Acceptance does not depend on the choice of bound names.
Outcome alpha_invariance() {
  Outcome o;
  Rng rng(7);
  RegexGenOptions gen = three_names_two_letters(3);
  WordGenOptions wg;
  wg.letters = gen.letters;
  NameSet pool = pool3();
  std::vector<Name> renames{nm("n"), nm("m"), nm("l"), nm("k"), nm("j")};
  std::size_t accepted = 0;
  for (int i = 0; i < 1000; ++i) {
    Regex e = random_regex(rng, gen);
    Hds h = compile(e);
    std::set<MWord> lang = regex_slice(e, 6, pool);
    MWord w;
    if (!lang.empty() && i % 2 == 0) {
      auto it = lang.begin();
      std::advance(it, std::uniform_int_distribution<std::size_t>(0, lang.size() - 1)(rng));
      w = *it;
    } else {
      w = random_mword(rng, gen.names, wg);
    }
    MWord v = random_alpha_variant(rng, w, renames);
    if (!alpha_equivalent(w, v)) {
      o.fail("not a variant: " + format(w) + " / " + format(v));
      continue;
    }
    AcceptResult a = accepts(h, w.tokens());
    AcceptResult b = accepts(h, v.tokens());
    if (a.verdict == Verdict::kBudgetExhausted || b.verdict == Verdict::kBudgetExhausted) {
      o.fail("budget: " + to_string(e) + " on " + format(w));
    }
    accepted += a.verdict == Verdict::kAccept;
    if (a.verdict != b.verdict) o.fail(to_string(e) + " on " + format(w) + " / " + format(v));
  }
  o.detail = "1000 triples, " + std::to_string(accepted) + " accepted";
  return o;
}

// 8. alpha_canonical against the renaming oracle; embeddings.
Outcome oracle_self_test() {
  Outcome o;
  Rng rng(8);
  std::vector<Name> names{nm("n"), nm("m"), nm("l")};
  NameSet pool{nm("n"), nm("m"), nm("l"), nm("k"), nm("j")};
  WordGenOptions wg;
  wg.letters = {lt("a")};
  wg.max_atoms = 3;
  std::size_t equal = 0;
  for (int i = 0; i < 2000; ++i) {
    MWord w = random_mword(rng, names, wg);
    MWord v = (i % 2) ? random_alpha_variant(rng, w, names) : random_mword(rng, names, wg);
    bool a = alpha_equivalent(w, v);
    equal += a;
    if (a != alpha_oracle(w, v, pool)) o.fail(format(w) + " / " + format(v));
  }

  // Each embedding is a section of its quotient and commutes with the
  // operations once both sides are taken back through the quotient.
  WordGenOptions eg;
  eg.letters = {lt("a")};
  for (int i = 0; i < 200; ++i) {
    Name n = names[static_cast<std::size_t>(i) % names.size()];
    GWord gx = std::get<GWord>(random_word(rng, Sort::kG, names, eg));
    GWord gy = std::get<GWord>(random_word(rng, Sort::kG, names, eg));
    if (quotient_mg(embed_gm(gx)) != gx) o.fail("gm section " + format(gx));
    if (quotient_mg(std::get<MWord>(word_concat(Word(embed_gm(gx)), Word(embed_gm(gy))))) != concat_g(gx, gy)) {
      o.fail("gm concat " + format(gx) + " " + format(gy));
    }
    if (quotient_mg(std::get<MWord>(word_bind(n, Word(embed_gm(gx))))) != bind_g(n, gx)) {
      o.fail("gm bind " + format(gx));
    }

    LWord lx = std::get<LWord>(random_word(rng, Sort::kL, names, eg));
    LWord ly = std::get<LWord>(random_word(rng, Sort::kL, names, eg));
    if (quotient_gl(embed_lg(lx)) != lx) o.fail("lg section " + format(lx));
    if (quotient_gl(concat_g(embed_lg(lx), embed_lg(ly))) != concat_l(lx, ly)) {
      o.fail("lg concat " + format(lx) + " " + format(ly));
    }
    if (quotient_gl(bind_g(n, embed_lg(lx))) != bind_l(n, lx)) o.fail("lg bind " + format(lx));

    SWord sx = std::get<SWord>(random_word(rng, Sort::kS, names, eg));
    SWord sy = std::get<SWord>(random_word(rng, Sort::kS, names, eg));
    if (quotient_ls(embed_sl(sx)) != sx) o.fail("sl section " + format(sx));
    if (quotient_ls(concat_l(embed_sl(sx), embed_sl(sy))) != concat_s(sx, sy)) {
      o.fail("sl concat " + format(sx) + " " + format(sy));
    }
    if (quotient_ls(bind_l(n, embed_sl(sx))) != bind_s(n, sx)) o.fail("sl bind " + format(sx));
  }
  o.detail = "2000 pairs (" + std::to_string(equal) + " equivalent), 200 instances per embedding";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {"compiled slices equal regex slices", corpus_and_random},
      {"constructions match regex operations", constructions},
      {"n+ automaton on all short token streams", short_streams},
      {"stack junk and add_name", stack_junk_and_add_name},
      {"axiom suites", axioms},
      {"L2 o L2 = L2", l2_identity},
      {"alpha-invariance of acceptance", alpha_invariance},
      {"oracle self-test and embeddings", oracle_self_test},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    if (!o.pass) {
      ++failed;
      std::printf("  first failure: %s\n", o.witness.c_str());
    }
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
