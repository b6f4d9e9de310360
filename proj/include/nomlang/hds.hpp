#pragma once

// History-dependent automata with stack (HDS).
//
// A state carries a finite set of local names.  Each transition relabels the
// local names of its target into those of its source through a partial
// injective NameMap, and the run keeps a stack of maps from local names to
// the names of the input word.  Maps compose "apply sigma first": the
// composite x |-> f(sigma(x)) is written compose(sigma, f).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nomlang/names.hpp"
#include "nomlang/words.hpp"

namespace nomlang {

/// A NameMap value: a name, or the allocation placeholder star.
class Image {
 public:
  constexpr Image() = default;  // star
  static constexpr Image star() { return Image(); }
  static constexpr Image of(Name n) { return Image(n.id()); }

  constexpr bool is_star() const { return id_ == 0; }
  constexpr Name name() const { return Name::from_id(id_); }

  constexpr auto operator<=>(const Image&) const = default;

 private:
  explicit constexpr Image(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

/// Finite partial map Name -> Name or star, kept as a sorted entry vector.
class NameMap {
 public:
  using Entry = std::pair<Name, Image>;

  NameMap() = default;
  NameMap(std::initializer_list<Entry> entries);
  static NameMap identity(const NameSet& domain);

  std::optional<Image> at(Name x) const;
  bool contains(Name x) const { return at(x).has_value(); }
  NameMap& set(Name x, Image v);
  NameMap& erase(Name x);

  NameSet domain() const;
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  auto operator<=>(const NameMap&) const = default;

 private:
  std::vector<Entry> entries_;
};

/// x |-> f(sigma(x)).  A star value of sigma goes to `star_to` when given and
/// is dropped otherwise; names outside the domain of f are dropped.
NameMap compose(const NameMap& sigma, const NameMap& f,
                std::optional<Image> star_to = std::nullopt);

/// Stack of name maps.  Frames are stored bottom first; top() of the empty
/// stack is the empty map and pop() of the empty stack is empty.
class Stack {
 public:
  Stack() = default;
  explicit Stack(std::vector<NameMap> bottom_to_top) : frames_(std::move(bottom_to_top)) {}

  NameMap top() const { return frames_.empty() ? NameMap() : frames_.back(); }
  Stack pop() const;
  Stack push(NameMap m) const;
  std::size_t depth() const { return frames_.size(); }
  bool empty() const { return frames_.empty(); }
  const std::vector<NameMap>& frames() const { return frames_; }

  auto operator<=>(const Stack&) const = default;

 private:
  std::vector<NameMap> frames_;
};

/// Replaces the top frame by x |-> top[star->star](sigma(x)); on the empty
/// stack the result is sigma alone.
Stack stack_update(const Stack& s, const NameMap& sigma);

enum class LabelKind : std::uint8_t { kName, kLetter, kEps, kPush, kPop, kOpen, kClose };

struct Label {
  LabelKind kind = LabelKind::kEps;
  std::uint32_t id = 0;

  static Label name(Name x) { return {LabelKind::kName, x.id()}; }
  static Label letter(Letter s) { return {LabelKind::kLetter, s.id()}; }
  static Label eps() { return {LabelKind::kEps, 0}; }
  static Label push() { return {LabelKind::kPush, 0}; }
  static Label pop() { return {LabelKind::kPop, 0}; }
  static Label open() { return {LabelKind::kOpen, 0}; }
  static Label close() { return {LabelKind::kClose, 0}; }

  Name as_name() const { return Name::from_id(id); }
  Letter as_letter() const { return Letter::from_id(id); }
  bool is_opener() const { return kind == LabelKind::kOpen || kind == LabelKind::kPush; }
  bool is_closer() const { return kind == LabelKind::kClose || kind == LabelKind::kPop; }

  auto operator<=>(const Label&) const = default;
};

using StateId = std::uint32_t;

struct Transition {
  Label label;
  StateId target = 0;
  NameMap sigma;

  auto operator<=>(const Transition&) const = default;
};

struct State {
  std::string id;
  NameSet locals;
  std::vector<Transition> out;
};

/// Strict: non-star values are injective and at most one name maps to star.
/// Relaxed: any number of names may map to star, and a push may repeat a
/// global name.
enum class InjectivityPolicy { kStrict, kRelaxed };

struct Hds {
  std::vector<State> states;
  StateId initial = 0;
  NameMap eta;  // partial map from the initial locals to names
  std::set<StateId> finals;
  InjectivityPolicy policy = InjectivityPolicy::kStrict;

  StateId add_state(std::string id, NameSet locals = {});
  void add_transition(StateId from, Label label, StateId to, NameMap sigma = {});
  std::optional<StateId> find(const std::string& id) const;
  std::size_t transition_count() const;
  NameSet local_names() const;
  std::set<Letter> letters() const;
};

struct Config {
  StateId state = 0;
  TokenStream rest;
  Stack stack;

  auto operator<=>(const Config&) const = default;
};

Config initial_config(const Hds& h, TokenStream w);

/// One-step successors of a configuration; each applicable transition of
/// the current state contributes at most one successor.
std::vector<Config> step(const Hds& h, const Config& t);

enum class Verdict { kAccept, kReject, kBudgetExhausted };

struct AcceptOptions {
  std::size_t max_configs = 2'000'000;
  /// Maximum stack depth; defaults to the start depth + tokens + |Q|.
  std::optional<std::size_t> depth_cap;
  bool trace = false;
};

struct TraceStep {
  std::optional<Label> via;  // empty for the initial configuration
  Config config;
};

struct AcceptResult {
  Verdict verdict = Verdict::kReject;
  std::size_t explored = 0;
  std::vector<TraceStep> trace;  // an accepting run, when requested
};

/// Breadth-first search for an accepting run from <q0, w, eta::empty>.
/// Binders of w that clash with a free name or with another binder are first
/// renamed apart, so the verdict is the same for alpha-equivalent inputs;
/// unbalanced streams run as given.
AcceptResult accepts(const Hds& h, const TokenStream& w, const AcceptOptions& opts = {});
bool accepts_word(const Hds& h, const MWord& w);

/// States reached with the whole input consumed, starting from <q0, w, start>.
std::set<StateId> rec(const Hds& h, const TokenStream& w, const Stack& start,
                      const AcceptOptions& opts = {});

struct SliceOptions {
  /// Maximum stack depth during the search; defaults to bound + |Q| + 1.
  std::optional<std::size_t> depth_cap;
};

/// Canonical m-words of token length at most `bound` whose free names lie in
/// `pool` and that the automaton accepts.
std::set<MWord> language_slice(const Hds& h, std::size_t bound, const NameSet& pool,
                               const SliceOptions& opts = {});

/// For each state q, the source states of the openers (open or push) that a
/// closer leaving q can match along a balanced path.
std::vector<std::set<StateId>> matching_openers(const Hds& h);

/// Renames the local names of q by `fresh` (identity where unmapped) and
/// rewrites every map that reads or writes them.  Throws
/// std::invalid_argument if the renaming is not injective on the locals of q
/// or if a closer that reads q's locals can also match another opener.
Hds rename_local(const Hds& h, StateId q, const std::map<Name, Name>& fresh);

/// True iff a bijection between states and one between local names carry a
/// onto b, preserving the initial state, eta, finals, labels and maps.
bool isomorphic(const Hds& a, const Hds& b);

/// Well-formedness violations; empty when the automaton is well formed.
std::vector<std::string> validate(const Hds& h);

std::string format(const Label& l);
std::string format(const NameMap& m);
std::string format(const Stack& s);

}  // namespace nomlang
