#include "nomlang/hds.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>
#include <tuple>

#include "nomlang/word_syntax.hpp"

namespace nomlang {

// --- NameMap ----------------------------------------------------------------

NameMap::NameMap(std::initializer_list<Entry> entries) {
  for (const auto& [x, v] : entries) set(x, v);
}

NameMap NameMap::identity(const NameSet& domain) {
  NameMap m;
  m.entries_.reserve(domain.size());
  for (Name x : domain) m.entries_.emplace_back(x, Image::of(x));
  return m;
}

std::optional<Image> NameMap::at(Name x) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                             [](const Entry& e, Name k) { return e.first < k; });
  if (it == entries_.end() || it->first != x) return std::nullopt;
  return it->second;
}

NameMap& NameMap::set(Name x, Image v) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                             [](const Entry& e, Name k) { return e.first < k; });
  if (it != entries_.end() && it->first == x) {
    it->second = v;
  } else {
    entries_.insert(it, Entry{x, v});
  }
  return *this;
}

NameMap& NameMap::erase(Name x) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                             [](const Entry& e, Name k) { return e.first < k; });
  if (it != entries_.end() && it->first == x) entries_.erase(it);
  return *this;
}

NameSet NameMap::domain() const {
  NameSet out;
  for (const auto& e : entries_) out.insert(e.first);
  return out;
}

NameMap compose(const NameMap& sigma, const NameMap& f, std::optional<Image> star_to) {
  NameMap out;
  for (const auto& [x, v] : sigma.entries()) {
    if (v.is_star()) {
      if (star_to) out.set(x, *star_to);
    } else if (auto w = f.at(v.name())) {
      out.set(x, *w);
    }
  }
  return out;
}

// --- Stack ------------------------------------------------------------------

Stack Stack::pop() const {
  if (frames_.empty()) return *this;
  return Stack(std::vector<NameMap>(frames_.begin(), frames_.end() - 1));
}

Stack Stack::push(NameMap m) const {
  Stack s = *this;
  s.frames_.push_back(std::move(m));
  return s;
}

Stack stack_update(const Stack& s, const NameMap& sigma) {
  if (s.empty()) return Stack({sigma});
  return s.pop().push(compose(sigma, s.top(), Image::star()));
}

// --- Hds --------------------------------------------------------------------

StateId Hds::add_state(std::string id, NameSet locals) {
  states.push_back(State{std::move(id), std::move(locals), {}});
  return static_cast<StateId>(states.size() - 1);
}

void Hds::add_transition(StateId from, Label label, StateId to, NameMap sigma) {
  states.at(from).out.push_back(Transition{label, to, std::move(sigma)});
}

std::optional<StateId> Hds::find(const std::string& id) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].id == id) return static_cast<StateId>(i);
  }
  return std::nullopt;
}

std::size_t Hds::transition_count() const {
  std::size_t n = 0;
  for (const auto& s : states) n += s.out.size();
  return n;
}

NameSet Hds::local_names() const {
  NameSet out;
  for (const auto& s : states) out.insert(s.locals.begin(), s.locals.end());
  return out;
}

std::set<Letter> Hds::letters() const {
  std::set<Letter> out;
  for (const auto& s : states) {
    for (const auto& t : s.out) {
      if (t.label.kind == LabelKind::kLetter) out.insert(t.label.as_letter());
    }
  }
  return out;
}

// --- moves ------------------------------------------------------------------

namespace {

// Calls emit(transition, consumed, new_stack) for every move out of q when
// the next input token is `next` (null at the end of the input).
template <class Emit>
void for_each_move(const Hds& h, StateId q, const Tok* next, const Stack& st, Emit&& emit) {
  for (const Transition& t : h.states[q].out) {
    switch (t.label.kind) {
      case LabelKind::kName: {
        if (!next || !next->is_name()) break;
        auto v = st.top().at(t.label.as_name());
        if (v && !v->is_star() && v->name() == next->as_name()) {
          emit(t, true, stack_update(st, t.sigma));
        }
        break;
      }
      case LabelKind::kLetter:
        if (next && next->is_letter() && next->as_letter() == t.label.as_letter()) {
          emit(t, true, stack_update(st, t.sigma));
        }
        break;
      case LabelKind::kEps:
        emit(t, false, stack_update(st, t.sigma));
        break;
      case LabelKind::kPush:
        emit(t, false, st.push(t.sigma));
        break;
      case LabelKind::kPop: {
        Stack below = st.pop();
        emit(t, false, below.pop().push(compose(t.sigma, below.top())));
        break;
      }
      case LabelKind::kOpen:
        if (next && next->is_open()) {
          emit(t, true, st.push(compose(t.sigma, st.top(), Image::of(next->as_name()))));
        }
        break;
      case LabelKind::kClose:
        if (next && next->is_close()) {
          Stack below = st.pop();
          emit(t, true, below.pop().push(compose(t.sigma, below.top())));
        }
        break;
    }
  }
}

// Renames binders that clash with a free name or with an earlier binder.
TokenStream distinct_binders(const TokenStream& w) {
  // Unbalanced input is no word; it runs as given.
  if (!is_balanced(w)) return w;
  NameSet free = support(MWord::from_tokens(w));
  NameSet used = all_names(w);
  NameSet seen;
  std::uint32_t k = 0;
  std::vector<std::pair<Name, Name>> scope;
  TokenStream out;
  out.reserve(w.size());
  for (const Tok& tok : w) {
    if (tok.is_open()) {
      Name n = tok.as_name();
      Name p = n;
      if (free.count(n) || seen.count(n)) {
        while (used.count(Name::placeholder(k))) ++k;
        p = Name::placeholder(k++);
        used.insert(p);
      }
      seen.insert(n);
      scope.emplace_back(n, p);
      out.push_back(Tok::open(p));
    } else if (tok.is_close()) {
      scope.pop_back();
      out.push_back(tok);
    } else if (tok.is_name()) {
      Name n = tok.as_name();
      auto it = std::find_if(scope.rbegin(), scope.rend(),
                             [n](const auto& e) { return e.first == n; });
      out.push_back(Tok::name(it == scope.rend() ? n : it->second));
    } else {
      out.push_back(tok);
    }
  }
  return out;
}

struct SearchNode {
  StateId state;
  std::size_t pos;
  Stack stack;
  std::size_t parent;
  std::optional<Label> via;
};

struct SearchOutcome {
  std::vector<SearchNode> nodes;
  std::vector<std::size_t> consumed;  // nodes with the whole input read
  std::optional<std::size_t> accepting;
  bool pruned = false;
  bool out_of_fuel = false;
};

SearchOutcome search(const Hds& h, const TokenStream& w, const Stack& start,
                     const AcceptOptions& opts, bool stop_at_accept) {
  SearchOutcome r;
  std::size_t cap = opts.depth_cap.value_or(start.depth() + w.size() + h.states.size());
  std::set<std::tuple<StateId, std::size_t, Stack>> visited;
  std::deque<std::size_t> queue;
  auto enqueue = [&](StateId q, std::size_t pos, Stack st, std::size_t parent,
                     std::optional<Label> via) {
    if (st.depth() > cap) {
      r.pruned = true;
      return;
    }
    if (!visited.emplace(q, pos, st).second) return;
    r.nodes.push_back(SearchNode{q, pos, std::move(st), parent, via});
    queue.push_back(r.nodes.size() - 1);
  };
  enqueue(h.initial, 0, start, 0, std::nullopt);
  while (!queue.empty()) {
    if (r.nodes.size() > opts.max_configs) {
      r.out_of_fuel = true;
      break;
    }
    std::size_t i = queue.front();
    queue.pop_front();
    StateId q = r.nodes[i].state;
    std::size_t pos = r.nodes[i].pos;
    if (pos == w.size()) {
      r.consumed.push_back(i);
      if (h.finals.count(q)) {
        if (!r.accepting) r.accepting = i;
        if (stop_at_accept) return r;
      }
    }
    const Tok* next = pos < w.size() ? &w[pos] : nullptr;
    Stack st = r.nodes[i].stack;
    for_each_move(h, q, next, st, [&](const Transition& t, bool consumed, Stack s2) {
      enqueue(t.target, pos + (consumed ? 1 : 0), std::move(s2), i, t.label);
    });
  }
  return r;
}

}  // namespace

Config initial_config(const Hds& h, TokenStream w) {
  return Config{h.initial, std::move(w), Stack({h.eta})};
}

std::vector<Config> step(const Hds& h, const Config& t) {
  std::vector<Config> out;
  const Tok* next = t.rest.empty() ? nullptr : &t.rest.front();
  for_each_move(h, t.state, next, t.stack, [&](const Transition& tr, bool consumed, Stack s2) {
    TokenStream rest(t.rest.begin() + (consumed ? 1 : 0), t.rest.end());
    out.push_back(Config{tr.target, std::move(rest), std::move(s2)});
  });
  return out;
}

AcceptResult accepts(const Hds& h, const TokenStream& w, const AcceptOptions& opts) {
  TokenStream input = distinct_binders(w);
  SearchOutcome r = search(h, input, Stack({h.eta}), opts, true);
  AcceptResult out;
  out.explored = r.nodes.size();
  if (r.accepting) {
    out.verdict = Verdict::kAccept;
    if (opts.trace) {
      std::vector<TraceStep> rev;
      for (std::size_t i = *r.accepting;; i = r.nodes[i].parent) {
        const SearchNode& n = r.nodes[i];
        TokenStream rest(input.begin() + static_cast<std::ptrdiff_t>(n.pos), input.end());
        rev.push_back(TraceStep{n.via, Config{n.state, std::move(rest), n.stack}});
        if (i == 0) break;
      }
      out.trace.assign(rev.rbegin(), rev.rend());
    }
  } else {
    out.verdict = (r.pruned || r.out_of_fuel) ? Verdict::kBudgetExhausted : Verdict::kReject;
  }
  return out;
}

bool accepts_word(const Hds& h, const MWord& w) {
  return accepts(h, w.tokens()).verdict == Verdict::kAccept;
}

std::set<StateId> rec(const Hds& h, const TokenStream& w, const Stack& start,
                      const AcceptOptions& opts) {
  SearchOutcome r = search(h, distinct_binders(w), start, opts, false);
  std::set<StateId> out;
  for (std::size_t i : r.consumed) out.insert(r.nodes[i].state);
  return out;
}

// --- bounded language -------------------------------------------------------

namespace {

using ConfigSet = std::set<std::pair<StateId, Stack>>;

class SliceSearch {
 public:
  SliceSearch(const Hds& h, std::size_t bound, const NameSet& pool, std::size_t cap)
      : h_(h), bound_(bound), cap_(cap) {
    for (Letter s : h.letters()) atoms_.push_back(Tok::letter(s));
    for (Name n : pool) atoms_.push_back(Tok::name(n));
  }

  std::set<MWord> run() {
    ConfigSet start = closure({{h_.initial, Stack({h_.eta})}});
    TokenStream prefix;
    std::vector<Name> scope;
    dfs(start, prefix, scope, 0);
    return std::move(found_);
  }

 private:
  ConfigSet closure(ConfigSet set) const {
    std::vector<std::pair<StateId, Stack>> work(set.begin(), set.end());
    while (!work.empty()) {
      auto [q, st] = std::move(work.back());
      work.pop_back();
      for_each_move(h_, q, nullptr, st, [&](const Transition& t, bool, Stack s2) {
        if (s2.depth() > cap_) return;
        auto [it, fresh] = set.emplace(t.target, std::move(s2));
        if (fresh) work.push_back(*it);
      });
    }
    return set;
  }

  void dfs(const ConfigSet& set, TokenStream& prefix, std::vector<Name>& scope,
           std::uint32_t opened) {
    std::size_t depth = scope.size();
    if (depth == 0) {
      bool accepting = std::any_of(set.begin(), set.end(),
                                   [&](const auto& c) { return h_.finals.count(c.first) != 0; });
      if (accepting) found_.insert(MWord::from_tokens(prefix));
    }
    std::size_t len = prefix.size();
    auto try_token = [&](const Tok& tok) {
      ConfigSet next = advance(set, tok);
      if (next.empty()) return;
      prefix.push_back(tok);
      if (tok.is_open()) {
        scope.push_back(tok.as_name());
        dfs(next, prefix, scope, opened + 1);
        scope.pop_back();
      } else if (tok.is_close()) {
        Name n = scope.back();
        scope.pop_back();
        dfs(next, prefix, scope, opened);
        scope.push_back(n);
      } else {
        dfs(next, prefix, scope, opened);
      }
      prefix.pop_back();
    };
    if (len + depth + 1 <= bound_) {
      for (const Tok& a : atoms_) try_token(a);
      for (Name n : scope) try_token(Tok::name(n));
    }
    if (len + depth + 2 <= bound_) try_token(Tok::open(Name::placeholder(opened)));
    if (depth > 0) try_token(Tok::close());
  }

  ConfigSet advance(const ConfigSet& set, const Tok& tok) const {
    ConfigSet next;
    for (const auto& [q, st] : set) {
      for_each_move(h_, q, &tok, st, [&](const Transition& t, bool consumed, Stack s2) {
        if (consumed && s2.depth() <= cap_) next.emplace(t.target, std::move(s2));
      });
    }
    if (next.empty()) return next;
    return closure(std::move(next));
  }

  const Hds& h_;
  std::size_t bound_;
  std::size_t cap_;
  std::vector<Tok> atoms_;
  std::set<MWord> found_;
};

}  // namespace

std::set<MWord> language_slice(const Hds& h, std::size_t bound, const NameSet& pool,
                               const SliceOptions& opts) {
  std::size_t cap = opts.depth_cap.value_or(bound + h.states.size() + 1);
  return SliceSearch(h, bound, pool, cap).run();
}

// --- balanced matching ------------------------------------------------------

namespace {

// reach[a][b]: b is reachable from a along a path whose openers and closers
// are balanced.
std::vector<std::vector<bool>> balanced_reach(const Hds& h) {
  std::size_t n = h.states.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) reach[a][a] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!reach[a][b]) continue;
        for (const Transition& t : h.states[b].out) {
          auto mark = [&](StateId e) {
            if (!reach[a][e]) {
              reach[a][e] = true;
              changed = true;
            }
          };
          if (t.label.is_opener()) {
            for (std::size_t d = 0; d < n; ++d) {
              if (!reach[t.target][d]) continue;
              for (const Transition& c : h.states[d].out) {
                if (c.label.is_closer()) mark(c.target);
              }
            }
          } else if (!t.label.is_closer()) {
            mark(t.target);
          }
        }
      }
    }
  }
  return reach;
}

}  // namespace

std::vector<std::set<StateId>> matching_openers(const Hds& h) {
  auto reach = balanced_reach(h);
  std::vector<std::set<StateId>> out(h.states.size());
  for (std::size_t p = 0; p < h.states.size(); ++p) {
    for (const Transition& t : h.states[p].out) {
      if (!t.label.is_opener()) continue;
      for (std::size_t q = 0; q < h.states.size(); ++q) {
        if (reach[t.target][q]) out[q].insert(static_cast<StateId>(p));
      }
    }
  }
  return out;
}

// --- isomorphism ------------------------------------------------------------

namespace {

class IsoSearch {
 public:
  IsoSearch(const Hds& a, const Hds& b) : a_(a), b_(b) {}

  bool run() {
    if (a_.states.size() != b_.states.size() || a_.finals.size() != b_.finals.size() ||
        a_.policy != b_.policy || a_.transition_count() != b_.transition_count()) {
      return false;
    }
    Ctx c;
    c.st.assign(a_.states.size(), -1);
    c.st_inv.assign(b_.states.size(), -1);
    if (!bind_state(c, a_.initial, b_.initial)) return false;
    return match_map(c, a_.eta, b_.eta, true, 0, [this](Ctx& d) { return solve(d); });
  }

 private:
  struct Ctx {
    std::vector<int> st, st_inv;
    std::map<Name, Name> nm, nm_inv;
    std::vector<std::pair<StateId, StateId>> todo;
  };
  using Cont = std::function<bool(Ctx&)>;

  static bool bind_name(Ctx& c, Name x, Name y) {
    auto it = c.nm.find(x);
    if (it != c.nm.end()) return it->second == y;
    if (c.nm_inv.count(y)) return false;
    c.nm[x] = y;
    c.nm_inv[y] = x;
    return true;
  }

  bool bind_state(Ctx& c, StateId p, StateId q) const {
    if (c.st[p] >= 0) return c.st[p] == static_cast<int>(q);
    if (c.st_inv[q] >= 0) return false;
    const State& sp = a_.states[p];
    const State& sq = b_.states[q];
    if (a_.finals.count(p) != b_.finals.count(q) || sp.locals.size() != sq.locals.size() ||
        sp.out.size() != sq.out.size()) {
      return false;
    }
    c.st[p] = static_cast<int>(q);
    c.st_inv[q] = static_cast<int>(p);
    c.todo.emplace_back(p, q);
    return true;
  }

  // `global`: values are input names and must agree literally.
  bool match_map(const Ctx& c, const NameMap& m1, const NameMap& m2, bool global, std::size_t k,
                 const Cont& cont) const {
    if (m1.size() != m2.size()) return false;
    if (k == m1.size()) {
      Ctx d = c;
      return cont(d);
    }
    const auto& [x, v] = m1.entries()[k];
    for (const auto& [y, w] : m2.entries()) {
      if (v.is_star() != w.is_star()) continue;
      Ctx d = c;
      if (!bind_name(d, x, y)) continue;
      if (!v.is_star()) {
        if (global ? v != w : !bind_name(d, v.name(), w.name())) continue;
      }
      if (match_map(d, m1, m2, global, k + 1, cont)) return true;
    }
    return false;
  }

  bool match_out(const Ctx& c, StateId p, StateId q, std::vector<bool> used, std::size_t i) const {
    const auto& out1 = a_.states[p].out;
    const auto& out2 = b_.states[q].out;
    if (i == out1.size()) {
      Ctx d = c;
      return solve(d);
    }
    const Transition& t = out1[i];
    for (std::size_t j = 0; j < out2.size(); ++j) {
      const Transition& u = out2[j];
      if (used[j] || t.label.kind != u.label.kind) continue;
      if (t.label.kind == LabelKind::kLetter && t.label.id != u.label.id) continue;
      Ctx d = c;
      if (t.label.kind == LabelKind::kName && !bind_name(d, t.label.as_name(), u.label.as_name())) {
        continue;
      }
      if (!bind_state(d, t.target, u.target)) continue;
      std::vector<bool> used2 = used;
      used2[j] = true;
      bool global = t.label.kind == LabelKind::kPush;
      if (match_map(d, t.sigma, u.sigma, global, 0, [&](Ctx& e) {
            return match_out(e, p, q, used2, i + 1);
          })) {
        return true;
      }
    }
    return false;
  }

  bool solve(Ctx& c) const {
    if (!c.todo.empty()) {
      auto [p, q] = c.todo.back();
      c.todo.pop_back();
      return match_out(c, p, q, std::vector<bool>(b_.states[q].out.size(), false), 0);
    }
    auto unmapped = std::find(c.st.begin(), c.st.end(), -1);
    if (unmapped == c.st.end()) return locals_agree(c);
    StateId p = static_cast<StateId>(unmapped - c.st.begin());
    for (std::size_t q = 0; q < b_.states.size(); ++q) {
      Ctx d = c;
      if (bind_state(d, p, static_cast<StateId>(q)) && solve(d)) return true;
    }
    return false;
  }

  // Locals that no label or map mentions are matched by count.
  bool locals_agree(const Ctx& c) const {
    for (std::size_t p = 0; p < a_.states.size(); ++p) {
      const NameSet& lq = b_.states[static_cast<std::size_t>(c.st[p])].locals;
      std::size_t free1 = 0;
      std::size_t free2 = 0;
      for (Name x : a_.states[p].locals) {
        auto it = c.nm.find(x);
        if (it == c.nm.end()) {
          ++free1;
        } else if (!lq.count(it->second)) {
          return false;
        }
      }
      for (Name y : lq) free2 += c.nm_inv.count(y) ? 0 : 1;
      if (free1 != free2) return false;
    }
    return true;
  }

  const Hds& a_;
  const Hds& b_;
};

}  // namespace

bool isomorphic(const Hds& a, const Hds& b) { return IsoSearch(a, b).run(); }

// --- validation -------------------------------------------------------------

std::vector<std::string> validate(const Hds& h) {
  std::vector<std::string> errs;
  std::size_t n = h.states.size();
  if (n == 0) {
    errs.push_back("automaton has no states");
    return errs;
  }
  if (h.initial >= n) errs.push_back("initial state out of range");
  for (StateId f : h.finals) {
    if (f >= n) errs.push_back("final state " + std::to_string(f) + " out of range");
  }
  if (h.initial < n) {
    const NameSet& init = h.states[h.initial].locals;
    for (const auto& [x, v] : h.eta.entries()) {
      if (!init.count(x)) errs.push_back("eta maps " + x.label() + ", not local to the initial state");
      if (v.is_star()) errs.push_back("eta maps " + x.label() + " to *");
    }
  }
  auto openers = matching_openers(h);
  for (std::size_t q = 0; q < n; ++q) {
    const State& s = h.states[q];
    for (std::size_t i = 0; i < s.out.size(); ++i) {
      const Transition& t = s.out[i];
      std::string where = "state " + s.id + " transition " + std::to_string(i) + " (" +
                          format(t.label) + "): ";
      if (t.target >= n) {
        errs.push_back(where + "target out of range");
        continue;
      }
      if (t.label.kind == LabelKind::kName && !s.locals.count(t.label.as_name())) {
        errs.push_back(where + "label " + t.label.as_name().label() + " is not local to the source");
      }
      const NameSet& tgt = h.states[t.target].locals;
      for (const auto& [x, v] : t.sigma.entries()) {
        if (!tgt.count(x)) errs.push_back(where + x.label() + " is not local to the target");
      }

      // Codomain discipline.  Closers read the frame below the top, which
      // belongs to the source state of the opener they match.
      std::vector<const NameSet*> codomains;
      bool star_ok = false;
      bool any_name = false;
      switch (t.label.kind) {
        case LabelKind::kPush: any_name = true; break;
        case LabelKind::kOpen: star_ok = true; codomains.push_back(&s.locals); break;
        case LabelKind::kPop:
        case LabelKind::kClose:
          if (openers[q].empty()) {
            codomains.push_back(&s.locals);
          } else {
            for (StateId p : openers[q]) codomains.push_back(&h.states[p].locals);
          }
          break;
        default: codomains.push_back(&s.locals); break;
      }
      std::size_t stars = 0;
      std::set<Name> images;
      for (const auto& [x, v] : t.sigma.entries()) {
        if (v.is_star()) {
          ++stars;
          if (!star_ok) errs.push_back(where + x.label() + " maps to *");
          continue;
        }
        bool shared_ok = any_name && h.policy == InjectivityPolicy::kRelaxed;
        if (!images.insert(v.name()).second && !shared_ok) {
          errs.push_back(where + "not injective on " + v.name().label());
        }
        if (any_name) continue;
        for (const NameSet* cod : codomains) {
          if (!cod->count(v.name())) {
            errs.push_back(where + x.label() + " maps to " + v.name().label() +
                           ", outside the codomain");
            break;
          }
        }
      }
      if (stars > 1 && h.policy == InjectivityPolicy::kStrict) {
        errs.push_back(where + "several names map to * under the strict policy");
      }
    }
  }
  return errs;
}

// --- local renaming ---------------------------------------------------------

Hds rename_local(const Hds& h, StateId q, const std::map<Name, Name>& fresh) {
  const NameSet& locals = h.states.at(q).locals;
  std::map<Name, Name> rho;
  NameSet image;
  for (Name x : locals) {
    auto it = fresh.find(x);
    Name y = it == fresh.end() ? x : it->second;
    rho[x] = y;
    if (!image.insert(y).second) {
      throw std::invalid_argument("renaming collides on " + y.label());
    }
  }
  auto r = [&](Name x) {
    auto it = rho.find(x);
    return it == rho.end() ? x : it->second;
  };
  auto rename_images = [&](NameMap& m) {
    NameMap out;
    for (const auto& [x, v] : m.entries()) out.set(x, v.is_star() ? v : Image::of(r(v.name())));
    m = out;
  };
  auto rename_domain = [&](NameMap& m) {
    NameMap out;
    for (const auto& [x, v] : m.entries()) out.set(r(x), v);
    m = out;
  };

  auto openers = matching_openers(h);
  Hds out = h;
  out.states[q].locals = image;
  if (q == h.initial) rename_domain(out.eta);
  for (std::size_t s = 0; s < out.states.size(); ++s) {
    for (Transition& t : out.states[s].out) {
      if (t.target == q) rename_domain(t.sigma);
      bool reads_q = false;
      if (t.label.is_closer()) {
        const auto& ops = openers[s];
        if (ops.count(q)) {
          if (ops.size() > 1) {
            throw std::invalid_argument("closer in state " + h.states[s].id +
                                        " matches openers of several states");
          }
          reads_q = true;
        } else if (ops.empty() && s == q) {
          reads_q = true;
        }
      } else if (s == q && t.label.kind != LabelKind::kPush) {
        reads_q = true;
      }
      if (s == q && t.label.kind == LabelKind::kName) t.label = Label::name(r(t.label.as_name()));
      if (reads_q) rename_images(t.sigma);
    }
  }
  return out;
}

// --- formatting -------------------------------------------------------------

std::string format(const Label& l) {
  switch (l.kind) {
    case LabelKind::kName: return "#" + l.as_name().label();
    case LabelKind::kLetter: return l.as_letter().label();
    case LabelKind::kEps: return "eps";
    case LabelKind::kPush: return "push";
    case LabelKind::kPop: return "pop";
    case LabelKind::kOpen: return "open";
    case LabelKind::kClose: return "close";
  }
  return "?";
}

std::string format(const NameMap& m) {
  std::string out = "{";
  for (std::size_t i = 0; i < m.entries().size(); ++i) {
    const auto& [x, v] = m.entries()[i];
    if (i) out += ", ";
    out += x.label() + ">" + (v.is_star() ? std::string("*") : "#" + v.name().label());
  }
  return out + "}";
}

std::string format(const Stack& s) {
  if (s.empty()) return "[]";
  std::string out;
  for (auto it = s.frames().rbegin(); it != s.frames().rend(); ++it) {
    out += format(*it) + "::";
  }
  return out + "[]";
}

}  // namespace nomlang
