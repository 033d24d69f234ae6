#pragma once

#include <set>
#include <vector>

#include "fea/core/automaton.hpp"

namespace fea {

namespace detail {

inline std::vector<bool> reach(const std::vector<std::vector<std::size_t>>& succ,
                               const std::vector<std::size_t>& seeds) {
  std::vector<bool> seen(succ.size(), false);
  std::vector<std::size_t> stack;
  for (auto s : seeds)
    if (!seen[s]) seen[s] = true, stack.push_back(s);
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    for (auto r : succ[q])
      if (!seen[r]) seen[r] = true, stack.push_back(r);
  }
  return seen;
}

}  // namespace detail

/// Keeps exactly the states that are reachable from the initial state and can
/// reach an accepting state. If nothing is accepted the result is the empty
/// automaton (same alphabet, zero states).
inline CostAutomaton trim(const CostAutomaton& a) {
  if (a.empty()) return empty_automaton(a.alphabet);
  IndexedAutomaton ix(a);
  auto succ = ix.successors();
  std::vector<std::vector<std::size_t>> pred(succ.size());
  for (std::size_t q = 0; q < succ.size(); ++q)
    for (auto r : succ[q]) pred[r].push_back(q);

  std::vector<std::size_t> finals;
  for (std::size_t q = 0; q < ix.state_count(); ++q)
    if (ix.accepting(q)) finals.push_back(q);

  auto forward = detail::reach(succ, {ix.initial()});
  auto backward = detail::reach(pred, finals);
  if (!(forward[ix.initial()] && backward[ix.initial()])) return empty_automaton(a.alphabet);

  std::set<StateId> keep;
  for (std::size_t q = 0; q < ix.state_count(); ++q)
    if (forward[q] && backward[q]) keep.insert(a.states[q]);
  return induced(a, keep);
}

}  // namespace fea
