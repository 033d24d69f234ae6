#pragma once

#include <cstddef>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "fea/core/automaton.hpp"
#include "fea/core/trim.hpp"

namespace fea {

inline constexpr std::size_t default_state_cap = std::size_t{1} << 20;

/// Subset construction from the initial state. The result is trimmed, its
/// states are named "{p,q,...}" after the subsets they stand for, and every
/// cost is 0. Throws StateCapExceeded when more than `state_cap` subsets are
/// discovered.
inline CostAutomaton determinize(const CostAutomaton& a, std::size_t state_cap = default_state_cap) {
  if (a.empty()) return empty_automaton(a.alphabet);
  IndexedAutomaton ix(a);

  using Subset = std::vector<std::size_t>;
  std::map<Subset, std::size_t> ids;
  std::vector<Subset> subsets;
  auto intern = [&](Subset s) {
    auto [it, fresh] = ids.emplace(s, subsets.size());
    if (fresh) {
      if (subsets.size() >= state_cap) throw StateCapExceeded(state_cap);
      subsets.push_back(std::move(s));
    }
    return it->second;
  };

  CostAutomaton d;
  d.alphabet = a.alphabet;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> edges;
  intern({ix.initial()});

  std::vector<bool> mark(ix.state_count(), false);
  for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
    for (std::size_t sym = 0; sym < a.alphabet.size(); ++sym) {
      Subset next;
      for (auto q : subsets[cur])
        for (const auto& e : ix.out(q))
          if (e.symbol == sym && !mark[e.to]) mark[e.to] = true, next.push_back(e.to);
      if (next.empty()) continue;
      for (auto q : next) mark[q] = false;
      std::sort(next.begin(), next.end());
      const auto target = intern(std::move(next));
      edges.emplace_back(cur, sym, target);
    }
  }

  auto name = [&](const Subset& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ",";
      out += a.states[s[i]];
    }
    return out + "}";
  };
  for (const auto& s : subsets) {
    d.states.push_back(name(s));
    for (auto q : s)
      if (ix.accepting(q)) {
        d.accepting.push_back(d.states.back());
        break;
      }
  }
  d.initial = d.states.front();
  for (const auto& [from, sym, to] : edges)
    d.transitions.push_back({d.states[from], a.alphabet[sym], d.states[to], 0.0});
  return trim(d);
}

}  // namespace fea
