#include <doctest.h>

#include "nomlang/compiler.hpp"
#include "nomlang/enumerate.hpp"
#include "nomlang/oracle.hpp"
#include "support.hpp"

using namespace testing;

namespace {

Verdict run(const Hds& h, const char* w) { return accepts(h, word(w).tokens()).verdict; }

}  // namespace

TEST_CASE("compose applies sigma first") {
  Name x = nm("x");
  Name y = nm("y");
  Name z = nm("z");
  NameMap sigma{{z, Image::of(x)}, {y, Image::star()}};
  NameMap f{{x, Image::of(nm("n"))}};
  CHECK(compose(sigma, f) == NameMap{{z, Image::of(nm("n"))}});
  CHECK(compose(sigma, f, Image::star()) == NameMap{{z, Image::of(nm("n"))}, {y, Image::star()}});
  CHECK(compose(sigma, f, Image::of(nm("m"))) ==
        NameMap{{z, Image::of(nm("n"))}, {y, Image::of(nm("m"))}});
}

TEST_CASE("stack_update") {
  Name x = nm("x");
  Name z = nm("z");
  NameMap sigma{{z, Image::of(x)}};
  CHECK(stack_update(Stack(), sigma) == Stack({sigma}));
  NameMap top{{x, Image::of(nm("n"))}};
  CHECK(stack_update(Stack({top}), sigma) == Stack({NameMap{{z, Image::of(nm("n"))}}}));
  Stack two({NameMap{{x, Image::of(nm("m"))}}, top});
  Stack r = stack_update(two, NameMap());
  CHECK(r.depth() == 2);
  CHECK(r.top().empty());
  CHECK(r.pop() == two.pop());
  CHECK(Stack().pop().empty());
  CHECK(Stack().top().empty());
}

TEST_CASE("step: the seven move cases") {
  Hds h = n_plus();
  Config c = initial_config(h, word("#n").tokens());
  std::vector<Config> next = step(h, c);
  REQUIRE(next.size() == 1);
  CHECK(next[0].state == *h.find("q"));
  CHECK(next[0].rest.empty());
  CHECK(next[0].stack == Stack({NameMap{{nm("z"), Image::of(nm("n"))}}}));
  CHECK(step(h, initial_config(h, word("#m").tokens())).empty());

  // Allocation: sigma = id[x -> *] on an open token binds x to the new name.
  Hds g;
  Name x = nm("x");
  Name y = nm("y");
  StateId p = g.add_state("p", {y});
  StateId q = g.add_state("q", {x, y});
  StateId r = g.add_state("r", {y});
  StateId s = g.add_state("s");
  g.add_transition(p, Label::open(), q, {{x, Image::star()}, {y, Image::of(y)}});
  g.add_transition(q, Label::close(), r, {{y, Image::of(y)}});
  g.add_transition(r, Label::push(), s, {{x, Image::of(nm("k"))}});
  g.add_transition(s, Label::pop(), r, {});
  g.initial = p;
  g.eta.set(y, Image::of(nm("m")));
  Config c0 = initial_config(g, word("<#a. >").tokens());
  auto c1 = step(g, c0);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0].stack.depth() == 2);
  CHECK(c1[0].stack.top() == NameMap{{x, Image::of(nm("a"))}, {y, Image::of(nm("m"))}});
  auto c2 = step(g, c1[0]);
  REQUIRE(c2.size() == 1);
  CHECK(c2[0].stack == Stack({NameMap{{y, Image::of(nm("m"))}}}));
  auto c3 = step(g, c2[0]);
  REQUIRE(c3.size() == 1);
  CHECK(c3[0].stack.depth() == 2);
  CHECK(c3[0].stack.top() == NameMap{{x, Image::of(nm("k"))}});
  auto c4 = step(g, c3[0]);
  REQUIRE(c4.size() == 1);
  CHECK(c4[0].stack == Stack({NameMap()}));

  // An epsilon move with the empty map empties the top.
  Hds e;
  StateId a = e.add_state("a", {x});
  StateId b = e.add_state("b");
  e.add_transition(a, Label::eps(), b);
  e.initial = a;
  e.eta.set(x, Image::of(nm("n")));
  auto ce = step(e, initial_config(e, word("#n").tokens()));
  REQUIRE(ce.size() == 1);
  CHECK(ce[0].rest.size() == 1);
  CHECK(ce[0].stack == Stack({NameMap()}));
}

TEST_CASE("n+ automaton language") {
  Hds h = n_plus();
  CHECK(validate(h).empty());
  CHECK(run(h, "#n") == Verdict::kAccept);
  CHECK(run(h, "#n #n") == Verdict::kAccept);
  CHECK(run(h, "#n #n #n") == Verdict::kAccept);
  CHECK(run(h, "^") == Verdict::kReject);
  CHECK(run(h, "#m") == Verdict::kReject);
  CHECK(run(h, "#n #m") == Verdict::kReject);
  CHECK(language_slice(h, 3, names({"n", "m"})) == words({"#n", "#n #n", "#n #n #n"}));
}

TEST_CASE("accept trace and budget") {
  Hds h = n_plus();
  AcceptOptions o;
  o.trace = true;
  AcceptResult r = accepts(h, word("#n #n").tokens(), o);
  REQUIRE(r.verdict == Verdict::kAccept);
  REQUIRE(r.trace.size() == 4);
  CHECK_FALSE(r.trace[0].via.has_value());
  CHECK(r.trace.back().config.state == *h.find("q1"));
  CHECK(r.trace.back().config.rest.empty());

  // A push loop that never consumes runs into the depth cap.
  Hds loop;
  StateId a = loop.add_state("a");
  StateId b = loop.add_state("b");
  loop.add_transition(a, Label::push(), a);
  loop.add_transition(a, Label::letter(lt("s")), b);
  loop.initial = a;
  loop.finals = {b};
  CHECK(run(loop, "s") == Verdict::kAccept);
  CHECK(run(loop, "t") == Verdict::kBudgetExhausted);
  AcceptOptions tight;
  tight.max_configs = 1;
  CHECK(accepts(n_plus(), word("#n #n #n").tokens(), tight).verdict == Verdict::kBudgetExhausted);
}

TEST_CASE("slices of the empty automaton") {
  FreshSupply f;
  CHECK(language_slice(hds_zero(f), 5, names({"n"})).empty());
}

TEST_CASE("validate") {
  Hds h = n_plus();
  Hds bad = h;
  bad.add_transition(*bad.find("q1"), Label::name(nm("x")), *bad.find("q1"));
  CHECK(validate(bad).size() == 1);
  Hds push = h;
  push.add_transition(*push.find("q"), Label::push(), *push.find("q"), {{nm("z"), Image::star()}});
  CHECK(validate(push).size() == 1);
  Hds two = h;
  two.states[*two.find("q1")].locals = {nm("u"), nm("v")};
  two.add_transition(*two.find("q"), Label::open(), *two.find("q1"),
                     {{nm("u"), Image::star()}, {nm("v"), Image::star()}});
  CHECK(validate(two).size() == 1);
  two.policy = InjectivityPolicy::kRelaxed;
  CHECK(validate(two).empty());
}

TEST_CASE("rename_local") {
  Hds h = n_plus();
  StateId q0 = *h.find("q0");
  StateId q = *h.find("q");
  Hds r = rename_local(h, q0, {{nm("x"), nm("y")}});
  CHECK(r.states[q0].locals == names({"y"}));
  CHECK(r.eta == NameMap{{nm("y"), Image::of(nm("n"))}});
  CHECK(language_slice(r, 4, names({"n", "m"})) == language_slice(h, 4, names({"n", "m"})));
  CHECK(isomorphic(rename_local(h, q, {}), h));
  CHECK(rename_local(h, q, {}).states[q].out == h.states[q].out);

  Hds w = rename_local(h, q, {{nm("z"), nm("w")}});
  CHECK(w.states[q0].out[0].sigma == NameMap{{nm("w"), Image::of(nm("x"))}});
  CHECK(w.states[q].out[0].label == Label::name(nm("w")));
  CHECK(w.states[q].out[0].sigma == NameMap{{nm("w"), Image::of(nm("w"))}});
  CHECK(validate(w).empty());
  CHECK(language_slice(w, 4, names({"n", "m"})) == language_slice(h, 4, names({"n", "m"})));
  Hds two = h;
  two.states[*two.find("q1")].locals = {nm("u"), nm("v")};
  CHECK_THROWS_AS(rename_local(two, *two.find("q1"), {{nm("u"), nm("v")}}), std::invalid_argument);
}

TEST_CASE("property: renaming the locals of any state keeps the language") {
  Rng rng(31);
  RegexGenOptions gen;
  gen.max_depth = 3;
  gen.names = {nm("n"), nm("m")};
  gen.letters = {lt("a")};
  NameSet pool = names({"n", "m", "l"});
  for (int i = 0; i < 40; ++i) {
    Hds h = compile(random_regex(rng, gen));
    std::set<MWord> base = language_slice(h, 5, pool);
    for (StateId q = 0; q < h.states.size(); ++q) {
      std::map<Name, Name> fresh;
      std::size_t k = 0;
      for (Name x : h.states[q].locals) fresh[x] = nm(("r" + std::to_string(k++)).c_str());
      Hds r = rename_local(h, q, fresh);
      CHECK(validate(r).empty());
      CHECK(language_slice(r, 5, pool) == base);
    }
  }
}

TEST_CASE("property: stack discipline") {
  Rng rng(32);
  RegexGenOptions gen;
  gen.max_depth = 3;
  gen.names = {nm("n"), nm("m")};
  gen.letters = {lt("a")};
  for (int i = 0; i < 50; ++i) {
    Regex e = random_regex(rng, gen);
    Hds h = compile(e, {StarLoop::kPush});
    for (const Word& w : enumerate(e, Sort::kM, 6).words) {
      Config c = initial_config(h, std::get<MWord>(w).tokens());
      c.stack = c.stack.push(NameMap()).push(NameMap());
      for (int d = 0; d < 6; ++d) {
        std::vector<Config> next = step(h, c);
        for (const Config& n : next) {
          int delta = static_cast<int>(n.stack.depth()) - static_cast<int>(c.stack.depth());
          CHECK(delta >= -1);
          CHECK(delta <= 1);
          // Frames below the top two are never touched.
          std::size_t keep = c.stack.depth() - 2;
          for (std::size_t j = 0; j < keep; ++j) CHECK(n.stack.frames()[j] == c.stack.frames()[j]);
        }
        if (next.empty()) break;
        c = next[static_cast<std::size_t>(d) % next.size()];
        if (c.stack.depth() < 3) c.stack = c.stack.push(NameMap());
      }
    }
  }
}

TEST_CASE("isomorphic") {
  Hds h = n_plus();
  CHECK(isomorphic(h, h));
  CHECK(isomorphic(h, rename_local(h, 0, {{nm("x"), nm("y")}})));
  Hds g = h;
  g.finals = {0};
  CHECK_FALSE(isomorphic(h, g));
  Hds k = h;
  k.eta.set(nm("x"), Image::of(nm("m")));
  CHECK_FALSE(isomorphic(h, k));
}
