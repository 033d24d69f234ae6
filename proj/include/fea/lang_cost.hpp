#pragma once

// Languages with pair costs: the implements relation and the DFA over
// transitions whose costs realize a pair cost exactly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fea/core/automaton.hpp"
#include "fea/core/trim.hpp"
#include "fea/energy.hpp"
#include "fea/pair_cost.hpp"

namespace fea {

/// DFA over transition-states: entering (q,a,s) after (p,b,q) costs U(b,a),
/// entering from the fresh start node costs 0. Every word has at most one run
/// and that run costs (U)(w). The start node keeps the input's initial name.
inline CostAutomaton implement_construction(const CostAutomaton& dfa, const PairCostFunction& u) {
  require_valid(dfa);
  if (!is_deterministic(dfa)) throw NotDeterministic();
  if (dfa.empty()) return empty_automaton(dfa.alphabet);
  for (const auto& s : dfa.alphabet)
    if (!u.contains(s)) throw UnknownSymbol(s);

  IndexedAutomaton ix(dfa);
  CostAutomaton r;
  r.alphabet = dfa.alphabet;
  r.initial = dfa.initial;
  r.states.push_back(dfa.initial);
  if (ix.accepting(ix.initial())) r.accepting.push_back(dfa.initial);
  for (const auto& t : dfa.transitions) {
    r.states.push_back(detail::triple_name(t));
    if (ix.accepting(ix.state(t.to))) r.accepting.push_back(r.states.back());
  }
  for (const auto& e : ix.out(ix.initial())) {
    const auto& t = dfa.transitions[e.transition];
    r.transitions.push_back({dfa.initial, t.symbol, detail::triple_name(t), 0.0});
  }
  for (const auto& t : dfa.transitions)
    for (const auto& e : ix.out(ix.state(t.to))) {
      const auto& next = dfa.transitions[e.transition];
      r.transitions.push_back(
          {detail::triple_name(t), next.symbol, detail::triple_name(next), u(t.symbol, next.symbol)});
    }
  return trim(r);
}

struct ImplementsCounterexample {
  Word word;
  std::vector<StateId> run;  // empty for language mismatches
  double word_cost = 0.0;
  double run_cost = 0.0;
  std::string reason;
};

struct ImplementsReport {
  bool holds = true;
  std::size_t checked_up_to = 0;
  std::optional<ImplementsCounterexample> counterexample;
};

inline constexpr double implements_tolerance = 1e-9;

/// Checks, for every word of length <= max_len over the union alphabet, that
/// m and dfa_for_L agree on membership and that every accepting run of m on an
/// accepted word of length >= 2 costs exactly (U)(w). Words are visited by
/// length, so the counterexample is a shortest one.
inline ImplementsReport verify_implements(const CostAutomaton& m, const CostAutomaton& dfa_for_L,
                                          const PairCostFunction& u, std::size_t max_len) {
  if (max_len == 0) throw InvalidInput("max_len must be positive");
  std::set<Symbol> symbols(m.alphabet.begin(), m.alphabet.end());
  symbols.insert(dfa_for_L.alphabet.begin(), dfa_for_L.alphabet.end());
  const std::vector<Symbol> sigma(symbols.begin(), symbols.end());

  struct Run {
    std::vector<std::size_t> states;
    double cost;
  };
  struct Node {
    Word word;
    std::vector<Run> runs;
    std::vector<bool> reference;  // subset of dfa_for_L states
  };

  std::optional<IndexedAutomaton> mx, lx;
  if (!m.empty()) mx.emplace(m);
  if (!dfa_for_L.empty()) lx.emplace(dfa_for_L);

  ImplementsReport report;
  auto fail = [&](ImplementsCounterexample c) {
    report.holds = false;
    report.checked_up_to = c.word.size();
    report.counterexample = std::move(c);
    return report;
  };

  auto check = [&](const Node& node) -> std::optional<ImplementsCounterexample> {
    bool in_m = false;
    for (const auto& r : node.runs) in_m = in_m || mx->accepting(r.states.back());
    bool in_l = false;
    for (std::size_t q = 0; q < node.reference.size(); ++q) in_l = in_l || (node.reference[q] && lx->accepting(q));
    if (in_m != in_l)
      return ImplementsCounterexample{node.word, {}, 0.0, 0.0,
                                      in_m ? "accepted by the machine but not in the language"
                                           : "in the language but not accepted by the machine"};
    if (!in_m || node.word.size() < 2) return std::nullopt;
    double target;
    try {
      target = word_cost(u, node.word);
    } catch (const UnknownSymbol& e) {
      return ImplementsCounterexample{node.word, {}, std::numeric_limits<double>::quiet_NaN(), 0.0, e.what()};
    }
    for (const auto& r : node.runs) {
      if (!mx->accepting(r.states.back())) continue;
      if (std::abs(r.cost - target) <= implements_tolerance) continue;
      std::vector<StateId> names;
      for (auto q : r.states) names.push_back(m.states[q]);
      return ImplementsCounterexample{node.word, names, target, r.cost, "run cost differs from word cost"};
    }
    return std::nullopt;
  };

  Node root;
  if (mx) root.runs.push_back({{mx->initial()}, 0.0});
  if (lx) {
    root.reference.assign(lx->state_count(), false);
    root.reference[lx->initial()] = true;
  }
  if (auto c = check(root)) return fail(std::move(*c));

  std::vector<Node> level{root};
  for (std::size_t len = 1; len <= max_len && !level.empty(); ++len) {
    std::vector<Node> next_level;
    for (const auto& node : level) {
      for (const auto& s : sigma) {
        Node child;
        child.word = node.word;
        child.word.push_back(s);
        if (mx && mx->has_symbol(s)) {
          const auto sym = mx->symbol(s);
          for (const auto& r : node.runs)
            for (const auto& e : mx->out(r.states.back())) {
              if (e.symbol != sym) continue;
              Run extended = r;
              extended.states.push_back(e.to);
              extended.cost += e.cost;
              child.runs.push_back(std::move(extended));
            }
        }
        bool any_reference = false;
        if (lx) {
          child.reference.assign(lx->state_count(), false);
          if (lx->has_symbol(s)) {
            const auto sym = lx->symbol(s);
            for (std::size_t q = 0; q < node.reference.size(); ++q) {
              if (!node.reference[q]) continue;
              for (const auto& e : lx->out(q))
                if (e.symbol == sym) child.reference[e.to] = any_reference = true;
            }
          }
        }
        if (child.runs.empty() && !any_reference) continue;
        if (auto c = check(child)) return fail(std::move(*c));
        next_level.push_back(std::move(child));
      }
    }
    level = std::move(next_level);
  }
  report.checked_up_to = max_len;
  return report;
}

/// Free energy of (L, U) for L given by a DFA, through the implementing DFA.
inline EnergyReport language_energy(const CostAutomaton& dfa, const PairCostFunction& u,
                                    const EnergyOptions& opts = {}) {
  return free_energy(implement_construction(dfa, u), opts);
}

}  // namespace fea
