#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fea/fea.hpp"

namespace fixtures {

using fea::CostAutomaton;
using fea::Transition;
using fea::Word;

inline CostAutomaton make(std::vector<std::string> alphabet, std::vector<std::string> states, std::string initial,
                          std::vector<std::string> accepting, std::vector<Transition> ts) {
  CostAutomaton a;
  a.alphabet = std::move(alphabet);
  a.states = std::move(states);
  a.initial = std::move(initial);
  a.accepting = std::move(accepting);
  a.transitions = std::move(ts);
  return a;
}

inline CostAutomaton fig1() {
  return make({"a", "b"}, {"A", "B"}, "A", {"A"}, {{"A", "a", "B", 0}, {"B", "b", "A", 0}});
}

inline CostAutomaton fig2() {
  return make({"a", "b"}, {"A", "B", "C"}, "A", {"A", "C"},
              {{"A", "a", "B", 0}, {"B", "b", "C", 2}, {"C", "a", "B", 5}});
}

// Labels on the B, C, D -> F edges are b; see README.
inline CostAutomaton fig3() {
  return make({"a", "b"}, {"A", "B", "C", "D", "E", "F"}, "A", {"A"},
              {{"A", "a", "B", 0}, {"A", "a", "C", 0}, {"A", "a", "D", 0}, {"A", "b", "E", 0},
               {"B", "b", "F", 0}, {"C", "b", "F", 0}, {"D", "b", "F", 0}, {"E", "a", "F", 0},
               {"F", "b", "E", 0}, {"F", "b", "A", 0}});
}

// The same machine with a-labels on B, C, D -> F.
inline CostAutomaton fig3_a_variant() {
  auto m = fig3();
  for (auto& t : m.transitions)
    if (t.to == "F" && t.from != "E") t.symbol = "a";
  return m;
}

inline CostAutomaton fig4_m1() {
  return make({"A", "C", "G", "T"}, {"1", "2", "3", "4"}, "1", {"2", "3"},
              {{"1", "A", "2", .14}, {"1", "G", "2", .1}, {"1", "A", "3", .76}, {"2", "G", "1", .2},
               {"2", "T", "4", .8}, {"4", "C", "2", .35}, {"4", "C", "3", .65}, {"3", "G", "1", .7}});
}

inline CostAutomaton fig4_m2() {
  return make({"A", "C", "G", "T"}, {"5", "6"}, "5", {"5", "6"},
              {{"5", "C", "6", .2}, {"5", "G", "6", .4}, {"5", "A", "6", .9}, {"6", "T", "5", .7},
               {"6", "C", "5", .2}});
}

inline CostAutomaton ab_star() {
  return make({"a", "b"}, {"p", "q"}, "p", {"p"}, {{"p", "a", "q", 0}, {"q", "b", "p", 0}});
}

inline CostAutomaton sigma_star(std::vector<std::string> alphabet) {
  std::vector<Transition> ts;
  for (const auto& s : alphabet) ts.push_back({"s", s, "s", 0});
  return make(alphabet, {"s"}, "s", {"s"}, ts);
}

inline fea::PairCostFunction example6_costs() {
  fea::PairCostFunction u({"a", "b"});
  u.set("a", "b", 2);
  u.set("b", "a", 5);
  return u;
}

inline CostAutomaton renamed(const CostAutomaton& a, const std::string& prefix) {
  auto r = a;
  for (auto& q : r.states) q = prefix + q;
  r.initial = prefix + r.initial;
  for (auto& q : r.accepting) q = prefix + q;
  for (auto& t : r.transitions) t.from = prefix + t.from, t.to = prefix + t.to;
  return r;
}

inline CostAutomaton relabeled(const CostAutomaton& a, const std::string& suffix) {
  auto r = a;
  for (auto& s : r.alphabet) s += suffix;
  for (auto& t : r.transitions) t.symbol += suffix;
  return r;
}

struct RandomSpec {
  int min_states = 1;
  int max_states = 6;
  std::vector<std::string> alphabet{"a", "b"};
  double density = 0.3;  // chance of each (p, a, q)
  double cost_lo = 0.0;
  double cost_hi = 2.0;
  bool deterministic = false;
  int max_out = 99;  // cap on transitions leaving a state
};

/// Random automaton, trimmed; retried until the language is nonempty.
inline CostAutomaton random_automaton(std::mt19937& rng, const RandomSpec& spec) {
  std::uniform_int_distribution<int> n_dist(spec.min_states, spec.max_states);
  std::uniform_real_distribution<double> coin(0.0, 1.0), cost(spec.cost_lo, spec.cost_hi);
  for (;;) {
    const int n = n_dist(rng);
    CostAutomaton a;
    a.alphabet = spec.alphabet;
    for (int i = 0; i < n; ++i) a.states.push_back("s" + std::to_string(i));
    a.initial = a.states[0];
    for (const auto& q : a.states)
      if (coin(rng) < 0.4) a.accepting.push_back(q);
    if (a.accepting.empty()) a.accepting.push_back(a.states[std::uniform_int_distribution<int>(0, n - 1)(rng)]);
    for (const auto& p : a.states) {
      int out = 0;
      for (const auto& s : a.alphabet) {
        if (spec.deterministic) {
          if (coin(rng) < 0.75 && out < spec.max_out) {
            a.transitions.push_back({p, s, a.states[std::uniform_int_distribution<int>(0, n - 1)(rng)], cost(rng)});
            ++out;
          }
          continue;
        }
        for (const auto& q : a.states)
          if (coin(rng) < spec.density && out < spec.max_out) {
            a.transitions.push_back({p, s, q, cost(rng)});
            ++out;
          }
      }
    }
    auto t = fea::trim(a);
    if (!t.empty()) return t;
  }
}

/// Random strongly connected automaton: a Hamiltonian cycle plus random extra
/// edges and one self-loop (so the period is 1).
inline CostAutomaton random_strongly_connected(std::mt19937& rng, int n, bool all_accepting, double cost_lo = -1.0,
                                               double cost_hi = 2.0) {
  std::uniform_real_distribution<double> coin(0.0, 1.0), cost(cost_lo, cost_hi);
  std::uniform_int_distribution<int> pick(0, n - 1);
  const std::vector<std::string> sigma{"a", "b"};
  CostAutomaton a;
  a.alphabet = sigma;
  for (int i = 0; i < n; ++i) a.states.push_back("s" + std::to_string(i));
  a.initial = a.states[0];
  std::set<std::tuple<int, int, int>> used;
  auto add = [&](int p, int s, int q) {
    if (used.emplace(p, s, q).second) a.transitions.push_back({a.states[p], sigma[s], a.states[q], cost(rng)});
  };
  for (int i = 0; i < n; ++i) add(i, pick(rng) % 2, (i + 1) % n);
  const int looped = pick(rng);
  add(looped, 1, looped);
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < 2; ++s)
      for (int q = 0; q < n; ++q)
        if (coin(rng) < 0.15) add(p, s, q);
  if (all_accepting)
    a.accepting = a.states;
  else
    a.accepting = {a.states[pick(rng)]};
  return a;
}

/// Every word of length exactly n over the alphabet.
inline std::vector<Word> words_of_length(const std::vector<std::string>& sigma, std::size_t n) {
  std::vector<Word> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (const auto& s : sigma) {
        next.push_back(w);
        next.back().push_back(s);
      }
    out = std::move(next);
  }
  return out;
}

/// Every word of length <= n.
inline std::vector<Word> words_up_to(const std::vector<std::string>& sigma, std::size_t n) {
  std::vector<Word> out;
  for (std::size_t len = 0; len <= n; ++len)
    for (auto& w : words_of_length(sigma, len)) out.push_back(std::move(w));
  return out;
}

/// Sum of e^{cost} over explicitly enumerated runs of length n.
inline double enumerate_runs(const CostAutomaton& a, std::size_t n, bool from_initial_to_accepting) {
  fea::IndexedAutomaton ix(a);
  double total = 0.0;
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t q, std::size_t left, double cost) {
    if (left == 0) {
      if (!from_initial_to_accepting || ix.accepting(q)) total += std::exp(cost);
      return;
    }
    for (const auto& e : ix.out(q)) walk(e.to, left - 1, cost + e.cost);
  };
  if (from_initial_to_accepting)
    walk(ix.initial(), n, 0.0);
  else
    for (std::size_t q = 0; q < ix.state_count(); ++q) walk(q, n, 0.0);
  return total;
}

/// All accepting runs of `a` on `w`, as (state names, cost).
inline std::vector<std::pair<std::vector<std::string>, double>> accepting_runs(const CostAutomaton& a, const Word& w) {
  std::vector<std::pair<std::vector<std::string>, double>> out;
  if (a.empty()) return out;
  fea::IndexedAutomaton ix(a);
  std::function<void(std::size_t, std::size_t, std::vector<std::string>&, double)> walk =
      [&](std::size_t q, std::size_t i, std::vector<std::string>& path, double cost) {
        if (i == w.size()) {
          if (ix.accepting(q)) out.emplace_back(path, cost);
          return;
        }
        if (!ix.has_symbol(w[i])) return;
        const auto s = ix.symbol(w[i]);
        for (const auto& e : ix.out(q)) {
          if (e.symbol != s) continue;
          path.push_back(a.states[e.to]);
          walk(e.to, i + 1, path, cost + e.cost);
          path.pop_back();
        }
      };
  std::vector<std::string> path{a.initial};
  walk(ix.initial(), 0, path, 0.0);
  return out;
}

/// Pairwise reachability by repeated relaxation.
inline std::vector<std::vector<bool>> reachability(const CostAutomaton& a) {
  fea::IndexedAutomaton ix(a);
  const auto n = ix.state_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t q = 0; q < n; ++q) r[q][q] = true;
  for (std::size_t q = 0; q < n; ++q)
    for (const auto& e : ix.out(q)) r[q][e.to] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

/// Largest energy over components that carry a cycle; empty when none does.
/// This is the growth rate of the partition sums, which the reported energy
/// only exceeds when a loop-free singleton lifts the maximum to 0.
inline std::optional<double> cyclic_energy(const fea::EnergyReport& r) {
  std::optional<double> best;
  for (const auto& c : r.per_component)
    if (!c.singleton_without_loop) best = best ? std::max(*best, c.energy) : c.energy;
  return best;
}

/// The energy a cost shift by c must produce: cyclic components move by c,
/// loop-free singletons stay at 0.
inline double shifted_energy(const fea::EnergyReport& r, double c) {
  double best = r.per_component.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
  for (const auto& comp : r.per_component) best = std::max(best, comp.singleton_without_loop ? 0.0 : comp.energy + c);
  return best;
}

inline std::string data_path(const std::string& name) { return std::string(FEA_DATA_DIR) + "/" + name; }

}  // namespace fixtures
