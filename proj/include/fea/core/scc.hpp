#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "fea/core/automaton.hpp"

namespace fea {

struct SccPartition {
  /// Components in Tarjan completion order (sinks of the condensation first).
  std::vector<std::vector<StateId>> components;
  std::map<StateId, std::size_t> component_of;
  /// One state and no self-transition; such a component carries energy 0.
  std::vector<bool> singleton_without_loop;
};

namespace detail {

// Iterative Tarjan; returns components in completion order.
inline std::vector<std::vector<std::size_t>> tarjan(const std::vector<std::vector<std::size_t>>& succ) {
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  const std::size_t n = succ.size();
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> frames;  // (vertex, next successor slot)
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    frames.emplace_back(root, 0);

    while (!frames.empty()) {
      auto& [v, slot] = frames.back();
      if (slot < succ[v].size()) {
        const auto w = succ[v][slot++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const auto done = v;
      frames.pop_back();
      if (low[done] == index[done]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        std::reverse(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
      if (!frames.empty()) {
        auto parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return out;
}

}  // namespace detail

inline SccPartition scc(const CostAutomaton& a) {
  SccPartition p;
  if (a.empty()) return p;
  IndexedAutomaton ix(a);
  auto succ = ix.successors();
  for (auto& comp : detail::tarjan(succ)) {
    const std::size_t id = p.components.size();
    std::vector<StateId> names;
    for (auto q : comp) {
      names.push_back(a.states[q]);
      p.component_of.emplace(a.states[q], id);
    }
    bool loop_free = false;
    if (comp.size() == 1) {
      const auto q = comp.front();
      loop_free = std::find(succ[q].begin(), succ[q].end(), q) == succ[q].end();
    }
    p.components.push_back(std::move(names));
    p.singleton_without_loop.push_back(loop_free);
  }
  return p;
}

}  // namespace fea
