#include "nomlang/compiler.hpp"

#include <map>
#include <stdexcept>

namespace nomlang {

// --- FreshSupply ------------------------------------------------------------

void FreshSupply::reserve(const Hds& h) {
  for (const State& s : h.states) {
    used_states_.insert(s.id);
    used_locals_.insert(s.locals.begin(), s.locals.end());
  }
  for (const auto& [x, v] : h.eta.entries()) used_locals_.insert(x);
}

std::string FreshSupply::state() {
  std::string id;
  do {
    id = "q" + std::to_string(next_state_++);
  } while (used_states_.count(id));
  used_states_.insert(id);
  return id;
}

Name FreshSupply::local() {
  Name x;
  do {
    x = Name::intern("x" + std::to_string(next_local_++));
  } while (used_locals_.count(x));
  used_locals_.insert(x);
  return x;
}

namespace {

// Renames local names everywhere.  Push maps hold input names as values and
// keep them.
Hds rename_locals(const Hds& h, const std::map<Name, Name>& rho) {
  if (rho.empty()) return h;
  auto r = [&](Name x) {
    auto it = rho.find(x);
    return it == rho.end() ? x : it->second;
  };
  Hds out = h;
  for (State& s : out.states) {
    NameSet locals;
    for (Name x : s.locals) locals.insert(r(x));
    s.locals = std::move(locals);
    for (Transition& t : s.out) {
      if (t.label.kind == LabelKind::kName) t.label = Label::name(r(t.label.as_name()));
      NameMap m;
      for (const auto& [x, v] : t.sigma.entries()) {
        bool local_value = !v.is_star() && t.label.kind != LabelKind::kPush;
        m.set(r(x), local_value ? Image::of(r(v.name())) : v);
      }
      t.sigma = std::move(m);
    }
  }
  NameMap eta;
  for (const auto& [x, v] : h.eta.entries()) eta.set(r(x), v);
  out.eta = std::move(eta);
  return out;
}

// Renames the state ids and local names of h that also occur in base.
Hds rename_apart(const Hds& base, const Hds& h, FreshSupply& fresh) {
  fresh.reserve(base);
  fresh.reserve(h);
  std::set<std::string> ids;
  for (const State& s : base.states) ids.insert(s.id);
  NameSet base_locals = base.local_names();
  std::map<Name, Name> rho;
  for (Name x : h.local_names()) {
    if (base_locals.count(x)) rho[x] = fresh.local();
  }
  Hds out = rename_locals(h, rho);
  for (State& s : out.states) {
    if (ids.count(s.id)) s.id = fresh.state();
  }
  return out;
}

// Copies the states of src into dst; returns the id offset.
StateId append(Hds& dst, const Hds& src) {
  StateId offset = static_cast<StateId>(dst.states.size());
  for (const State& s : src.states) {
    State c = s;
    for (Transition& t : c.out) t.target += offset;
    dst.states.push_back(std::move(c));
  }
  return offset;
}

InjectivityPolicy join(InjectivityPolicy a, InjectivityPolicy b) {
  return (a == InjectivityPolicy::kRelaxed || b == InjectivityPolicy::kRelaxed)
             ? InjectivityPolicy::kRelaxed
             : InjectivityPolicy::kStrict;
}

StateId single_final(const Hds& h) {
  if (h.finals.size() != 1) throw std::logic_error("expected a single final state");
  return *h.finals.begin();
}

Hds basic(FreshSupply& fresh, NameSet init_locals, std::optional<Label> label) {
  Hds h;
  h.initial = h.add_state(fresh.state(), std::move(init_locals));
  if (label) {
    StateId q = h.add_state(fresh.state());
    h.add_transition(h.initial, *label, q);
    h.finals.insert(q);
  }
  return h;
}

}  // namespace

// --- base cases -------------------------------------------------------------

Hds hds_zero(FreshSupply& fresh) { return basic(fresh, {}, std::nullopt); }

Hds hds_one(FreshSupply& fresh) { return basic(fresh, {}, Label::eps()); }

Hds hds_name(Name n, FreshSupply& fresh) {
  Name x = fresh.local();
  Hds h = basic(fresh, {x}, Label::name(x));
  h.eta.set(x, Image::of(n));
  return h;
}

Hds hds_letter(Letter s, FreshSupply& fresh) { return basic(fresh, {}, Label::letter(s)); }

// --- operations -------------------------------------------------------------

Hds hds_sum(const Hds& h1, const Hds& h2_in, FreshSupply& fresh) {
  Hds h2 = rename_apart(h1, h2_in, fresh);
  Hds out;
  const NameSet& l1 = h1.states[h1.initial].locals;
  const NameSet& l2 = h2.states[h2.initial].locals;
  NameSet init = l1;
  init.insert(l2.begin(), l2.end());
  out.initial = out.add_state(fresh.state(), init);
  StateId o1 = append(out, h1);
  StateId o2 = append(out, h2);
  out.add_transition(out.initial, Label::eps(), h1.initial + o1, NameMap::identity(l1));
  out.add_transition(out.initial, Label::eps(), h2.initial + o2, NameMap::identity(l2));
  out.eta = h1.eta;
  for (const auto& [x, v] : h2.eta.entries()) out.eta.set(x, v);
  for (StateId f : h1.finals) out.finals.insert(f + o1);
  for (StateId f : h2.finals) out.finals.insert(f + o2);
  out.policy = join(h1.policy, h2.policy);
  return out;
}

Hds unique_final(const Hds& h, FreshSupply& fresh) {
  fresh.reserve(h);
  Hds out = h;
  StateId f = out.add_state(fresh.state());
  for (StateId old : h.finals) out.add_transition(old, Label::eps(), f);
  out.finals = {f};
  return out;
}

Hds ensure_single_final(const Hds& h, FreshSupply& fresh) {
  return h.finals.size() == 1 ? h : unique_final(h, fresh);
}

Hds add_name(const Hds& h_in, Name x, FreshSupply& fresh) {
  fresh.reserve(h_in);
  Hds h = h_in;
  if (h.local_names().count(x)) h = rename_locals(h, {{x, fresh.local()}});
  for (State& s : h.states) {
    s.locals.insert(x);
    for (Transition& t : s.out) t.sigma.set(x, Image::of(x));
  }
  return h;
}

Hds hds_concat(const Hds& h1_in, const Hds& h2_in, FreshSupply& fresh) {
  Hds h2 = rename_apart(h1_in, h2_in, fresh);
  Hds h1 = ensure_single_final(h1_in, fresh);
  const NameSet& l2 = h2.states[h2.initial].locals;
  for (Name x : l2) h1 = add_name(h1, x, fresh);
  StateId f1 = single_final(h1);

  Hds out;
  append(out, h1);
  StateId o2 = append(out, h2);
  out.initial = h1.initial;
  out.add_transition(f1, Label::eps(), h2.initial + o2, NameMap::identity(l2));
  out.eta = h1.eta;
  for (const auto& [x, v] : h2.eta.entries()) out.eta.set(x, v);
  for (StateId f : h2.finals) out.finals.insert(f + o2);
  out.policy = join(h1.policy, h2.policy);
  return out;
}

Hds hds_star(const Hds& h_in, FreshSupply& fresh, StarLoop loop) {
  fresh.reserve(h_in);
  Hds h = ensure_single_final(h_in, fresh);
  StateId f = single_final(h);
  // The loop needs a final state without exits and an initial state without
  // entries; otherwise partial iterations leak into the language.
  if (!h.states[f].out.empty() || f == h.initial) {
    h = unique_final(h, fresh);
    f = single_final(h);
  }
  bool entered = false;
  for (const State& s : h.states) {
    for (const Transition& t : s.out) entered |= t.target == h.initial;
  }
  if (entered) {
    const NameSet& l0 = h.states[h.initial].locals;
    StateId q = h.add_state(fresh.state(), l0);
    h.add_transition(q, Label::eps(), h.initial, NameMap::identity(l0));
    h.initial = q;
  }
  StateId q0 = h.initial;

  if (loop == StarLoop::kPush) {
    h.add_transition(q0, Label::eps(), f);
    h.add_transition(f, Label::push(), q0, h.eta);
    // Two locals may share an initial name; the pushed map then repeats it.
    NameSet seen;
    for (const auto& [x, v] : h.eta.entries()) {
      if (!v.is_star() && !seen.insert(v.name()).second) h.policy = InjectivityPolicy::kRelaxed;
    }
    return h;
  }

  NameSet threaded = h.states[q0].locals;
  for (State& s : h.states) {
    for (Transition& t : s.out) {
      if (t.label.kind == LabelKind::kPush) continue;
      for (Name x : threaded) {
        auto v = t.sigma.at(x);
        if (v && (v->is_star() || v->name() != x)) {
          throw std::logic_error("star: map in state " + s.id + " moves " + x.label());
        }
        for (const auto& [y, w] : t.sigma.entries()) {
          if (y != x && !w.is_star() && w.name() == x) {
            throw std::logic_error("star: map in state " + s.id + " already targets " +
                                   x.label());
          }
        }
        t.sigma.set(x, Image::of(x));
      }
    }
  }
  for (State& s : h.states) s.locals.insert(threaded.begin(), threaded.end());
  h.add_transition(q0, Label::eps(), f, NameMap::identity(threaded));
  h.add_transition(f, Label::eps(), q0, NameMap::identity(threaded));
  return h;
}

Hds hds_bind(Name n, const Hds& h_in, FreshSupply& fresh) {
  fresh.reserve(h_in);
  Hds h = ensure_single_final(h_in, fresh);
  StateId f = single_final(h);
  const NameSet& l0 = h.states[h.initial].locals;
  NameMap sigma;
  NameSet outer;
  std::size_t bound = 0;
  for (Name x : l0) {
    auto v = h.eta.at(x);
    if (v && !v->is_star() && v->name() == n) {
      sigma.set(x, Image::star());
      ++bound;
    } else {
      sigma.set(x, Image::of(x));
      outer.insert(x);
    }
  }
  Hds out;
  out.initial = out.add_state(fresh.state(), outer);
  StateId o = append(out, h);
  StateId close = out.add_state(fresh.state());
  out.add_transition(out.initial, Label::open(), h.initial + o, std::move(sigma));
  out.add_transition(f + o, Label::close(), close);
  out.finals = {close};
  for (const auto& [x, v] : h.eta.entries()) {
    if (outer.count(x)) out.eta.set(x, v);
  }
  out.policy = bound > 1 ? InjectivityPolicy::kRelaxed : h.policy;
  return out;
}

// --- convenience ------------------------------------------------------------

namespace {

FreshSupply supply_for(const Hds& a, const Hds* b = nullptr) {
  FreshSupply f;
  f.reserve(a);
  if (b) f.reserve(*b);
  return f;
}

}  // namespace

Hds hds_sum(const Hds& h1, const Hds& h2) {
  FreshSupply f = supply_for(h1, &h2);
  return hds_sum(h1, h2, f);
}

Hds add_name(const Hds& h, Name x) {
  FreshSupply f = supply_for(h);
  return add_name(h, x, f);
}

Hds hds_concat(const Hds& h1, const Hds& h2) {
  FreshSupply f = supply_for(h1, &h2);
  return hds_concat(h1, h2, f);
}

Hds hds_star(const Hds& h, StarLoop loop) {
  FreshSupply f = supply_for(h);
  return hds_star(h, f, loop);
}

Hds hds_bind(Name n, const Hds& h) {
  FreshSupply f = supply_for(h);
  return hds_bind(n, h, f);
}

// --- compile ----------------------------------------------------------------

namespace {

Hds compile_rec(const Regex& e, FreshSupply& fresh, StarLoop loop) {
  switch (e.kind()) {
    case RegexKind::kZero: return hds_zero(fresh);
    case RegexKind::kOne: return hds_one(fresh);
    case RegexKind::kName: return hds_name(e.name(), fresh);
    case RegexKind::kLetter: return hds_letter(e.letter(), fresh);
    case RegexKind::kSum: {
      Hds a = compile_rec(e.left(), fresh, loop);
      return hds_sum(a, compile_rec(e.right(), fresh, loop), fresh);
    }
    case RegexKind::kCat: {
      Hds a = compile_rec(e.left(), fresh, loop);
      return hds_concat(a, compile_rec(e.right(), fresh, loop), fresh);
    }
    case RegexKind::kBinder: return hds_bind(e.name(), compile_rec(e.body(), fresh, loop), fresh);
    case RegexKind::kStar: return hds_star(compile_rec(e.body(), fresh, loop), fresh, loop);
  }
  throw std::logic_error("unknown regex node");
}

}  // namespace

Hds compile(const Regex& e, const CompileOptions& opts) {
  FreshSupply fresh(opts.fresh_seed);
  return compile_rec(e, fresh, opts.star);
}

}  // namespace nomlang
