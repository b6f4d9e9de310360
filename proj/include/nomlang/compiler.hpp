#pragma once

// Regular expressions to HDS, by structural recursion.
//
// Every operation returns a fresh automaton.  Operands whose state ids or
// local names clash are renamed apart first.

#include <cstdint>
#include <string>

#include "nomlang/hds.hpp"
#include "nomlang/regex.hpp"

namespace nomlang {

/// Source of unused state ids (`q<k>`) and local names (`x<k>`).
class FreshSupply {
 public:
  explicit FreshSupply(std::uint32_t first = 0) : next_state_(first), next_local_(first) {}

  /// Marks the state ids and local names of h as used.
  void reserve(const Hds& h);
  std::string state();
  Name local();

 private:
  std::set<std::string> used_states_;
  NameSet used_locals_;
  std::uint32_t next_state_;
  std::uint32_t next_local_;
};

/// How the star construction closes its loop.
///
/// kThreaded (default): the initial locals are threaded through the body and
/// the loop is a pair of identity epsilon moves, so the top frame survives
/// each iteration.  kPush: the loop pushes the initial assignment eta, as in
/// the textbook construction; that automaton loses the values of outer names
/// after the first iteration and is kept for comparison.
enum class StarLoop { kThreaded, kPush };

struct CompileOptions {
  StarLoop star = StarLoop::kThreaded;
  std::uint32_t fresh_seed = 0;  // first index handed out by the supply
};

Hds compile(const Regex& e, const CompileOptions& opts = {});

Hds hds_zero(FreshSupply& fresh);
Hds hds_one(FreshSupply& fresh);
Hds hds_name(Name n, FreshSupply& fresh);
Hds hds_letter(Letter s, FreshSupply& fresh);

Hds hds_sum(const Hds& h1, const Hds& h2, FreshSupply& fresh);
/// Adds a fresh final state reached by an epsilon move from each old final.
Hds unique_final(const Hds& h, FreshSupply& fresh);
/// unique_final unless h already has exactly one final state.
Hds ensure_single_final(const Hds& h, FreshSupply& fresh);
/// Adds x to every state, x>x to every map and leaves eta undefined on x.
/// An existing local x is renamed away first.
Hds add_name(const Hds& h, Name x, FreshSupply& fresh);
Hds hds_concat(const Hds& h1, const Hds& h2, FreshSupply& fresh);
/// Throws std::logic_error if threading meets a map that already moves an
/// initial local.
Hds hds_star(const Hds& h, FreshSupply& fresh, StarLoop loop = StarLoop::kThreaded);
/// Several initial locals assigned to n all map to star on the opening move;
/// the result then uses the relaxed injectivity policy.
Hds hds_bind(Name n, const Hds& h, FreshSupply& fresh);

/// Convenience forms with a supply reserved against the operands.
Hds hds_sum(const Hds& h1, const Hds& h2);
Hds add_name(const Hds& h, Name x);
Hds hds_concat(const Hds& h1, const Hds& h2);
Hds hds_star(const Hds& h, StarLoop loop = StarLoop::kThreaded);
Hds hds_bind(Name n, const Hds& h);

}  // namespace nomlang
