#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fea/core/automaton.hpp"
#include "fea/core/trim.hpp"

namespace fea {

/// Synchronous (Cartesian) product over the shared symbols. A pair transition
/// exists iff both components have one on that symbol; its cost is the sum of
/// the two. Pair states are named "left<sep>right". The result is trimmed, so
/// an empty intersection gives the empty automaton.
inline CostAutomaton product(const CostAutomaton& a1, const CostAutomaton& a2,
                             std::string_view separator = "|") {
  std::vector<Symbol> shared;
  for (const auto& s : a1.alphabet)
    if (std::find(a2.alphabet.begin(), a2.alphabet.end(), s) != a2.alphabet.end()) shared.push_back(s);
  if (a1.empty() || a2.empty()) return empty_automaton(shared);

  IndexedAutomaton x1(a1), x2(a2);
  // a2's edges bucketed by symbol name, so symbol indices need not agree.
  std::vector<std::map<Symbol, std::vector<const IndexedAutomaton::Edge*>>> by_symbol(x2.state_count());
  for (std::size_t p = 0; p < x2.state_count(); ++p)
    for (const auto& e : x2.out(p)) by_symbol[p][a2.alphabet[e.symbol]].push_back(&e);

  using Pair = std::pair<std::size_t, std::size_t>;
  std::map<Pair, std::size_t> ids;
  std::vector<Pair> pairs;
  auto intern = [&](Pair p) {
    auto [it, fresh] = ids.emplace(p, pairs.size());
    if (fresh) pairs.push_back(p);
    return it->second;
  };
  auto name = [&](const Pair& p) {
    return a1.states[p.first] + std::string(separator) + a2.states[p.second];
  };

  CostAutomaton r;
  r.alphabet = shared;
  intern({x1.initial(), x2.initial()});
  for (std::size_t cur = 0; cur < pairs.size(); ++cur) {
    const auto [q, p] = pairs[cur];
    for (const auto& e1 : x1.out(q)) {
      const auto& sym = a1.alphabet[e1.symbol];
      auto bucket = by_symbol[p].find(sym);
      if (bucket == by_symbol[p].end()) continue;
      for (const auto* e2 : bucket->second) {
        const auto target = intern({e1.to, e2->to});
        r.transitions.push_back({name(pairs[cur]), sym, name(pairs[target]), e1.cost + e2->cost});
      }
    }
  }
  for (const auto& pr : pairs) {
    r.states.push_back(name(pr));
    if (x1.accepting(pr.first) && x2.accepting(pr.second)) r.accepting.push_back(r.states.back());
  }
  r.initial = r.states.front();
  return trim(r);
}

}  // namespace fea
