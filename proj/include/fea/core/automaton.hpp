#pragma once

// Cost-weighted finite automata: the value type, its validation, and an
// index-based view the algorithms work on.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "fea/error.hpp"

namespace fea {

using Symbol = std::string;
using StateId = std::string;
using Word = std::vector<Symbol>;

struct Transition {
  StateId from;
  Symbol symbol;
  StateId to;
  double cost = 0.0;

  bool operator==(const Transition&) const = default;
};

/// An NFA over a finite alphabet with a real cost on every transition.
///
/// Plain aggregate: any combination of fields can be expressed, and
/// `validate` reports what is wrong with it. The zero-state value is the
/// distinguished empty automaton (accepts nothing, energy 0).
struct CostAutomaton {
  std::vector<Symbol> alphabet;
  std::vector<StateId> states;
  StateId initial;
  std::vector<StateId> accepting;
  std::vector<Transition> transitions;

  bool empty() const noexcept { return states.empty(); }
  bool operator==(const CostAutomaton&) const = default;
};

inline CostAutomaton empty_automaton(std::vector<Symbol> alphabet = {}) {
  CostAutomaton a;
  a.alphabet = std::move(alphabet);
  return a;
}

enum class ViolationKind {
  empty_name,
  duplicate_symbol,
  duplicate_state,
  unknown_initial,
  unknown_accepting,
  unknown_state,
  unknown_symbol,
  duplicate_transition,
  non_finite_cost,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

namespace detail {

inline bool bad_token(const std::string& s) {
  return s.empty() || std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

inline std::string triple_name(const Transition& t) {
  return "(" + t.from + "," + t.symbol + "," + t.to + ")";
}

}  // namespace detail

inline std::vector<Violation> validate(const CostAutomaton& a) {
  std::vector<Violation> out;
  if (a.empty()) {
    if (!a.initial.empty())
      out.push_back({ViolationKind::unknown_initial, "unknown initial state '" + a.initial + "'"});
    if (!a.accepting.empty() || !a.transitions.empty())
      out.push_back({ViolationKind::unknown_state, "automaton without states has accepting states or transitions"});
    return out;
  }

  std::set<Symbol> symbols;
  for (const auto& s : a.alphabet) {
    if (detail::bad_token(s))
      out.push_back({ViolationKind::empty_name, "symbol name '" + s + "' is empty or contains whitespace"});
    if (!symbols.insert(s).second)
      out.push_back({ViolationKind::duplicate_symbol, "duplicate symbol '" + s + "'"});
  }
  std::set<StateId> states;
  for (const auto& q : a.states) {
    if (detail::bad_token(q))
      out.push_back({ViolationKind::empty_name, "state name '" + q + "' is empty or contains whitespace"});
    if (!states.insert(q).second)
      out.push_back({ViolationKind::duplicate_state, "duplicate state '" + q + "'"});
  }
  if (!states.contains(a.initial))
    out.push_back({ViolationKind::unknown_initial, "unknown initial state '" + a.initial + "'"});
  for (const auto& q : a.accepting)
    if (!states.contains(q))
      out.push_back({ViolationKind::unknown_accepting, "unknown accepting state '" + q + "'"});

  std::set<std::tuple<StateId, Symbol, StateId>> seen;
  for (const auto& t : a.transitions) {
    if (!states.contains(t.from))
      out.push_back({ViolationKind::unknown_state, "transition " + detail::triple_name(t) + " has unknown source '" + t.from + "'"});
    if (!states.contains(t.to))
      out.push_back({ViolationKind::unknown_state, "transition " + detail::triple_name(t) + " has unknown target '" + t.to + "'"});
    if (!symbols.contains(t.symbol))
      out.push_back({ViolationKind::unknown_symbol, "transition " + detail::triple_name(t) + " has unknown symbol '" + t.symbol + "'"});
    if (!std::isfinite(t.cost))
      out.push_back({ViolationKind::non_finite_cost, "transition " + detail::triple_name(t) + " has a non-finite cost"});
    if (!seen.emplace(t.from, t.symbol, t.to).second)
      out.push_back({ViolationKind::duplicate_transition, "duplicate transition " + detail::triple_name(t)});
  }
  return out;
}

inline void require_valid(const CostAutomaton& a) {
  auto violations = validate(a);
  if (violations.empty()) return;
  std::string msg = violations.front().message;
  for (std::size_t i = 1; i < violations.size(); ++i) msg += "; " + violations[i].message;
  throw InvalidAutomaton(msg);
}

/// Index-based view of a valid automaton. States, symbols and transitions keep
/// the order of the source value.
class IndexedAutomaton {
public:
  struct Edge {
    std::size_t symbol;
    std::size_t to;
    double cost;
    std::size_t transition;  // index into the source transition list
  };

  explicit IndexedAutomaton(const CostAutomaton& a) {
    require_valid(a);
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) symbol_index_.emplace(a.alphabet[i], i);
    for (std::size_t i = 0; i < a.states.size(); ++i) state_index_.emplace(a.states[i], i);
    out_.resize(a.states.size());
    accepting_.assign(a.states.size(), false);
    for (const auto& q : a.accepting) accepting_[state_index_.at(q)] = true;
    if (!a.empty()) initial_ = state_index_.at(a.initial);
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
      const auto& t = a.transitions[i];
      out_[state_index_.at(t.from)].push_back(
          {symbol_index_.at(t.symbol), state_index_.at(t.to), t.cost, i});
    }
  }

  std::size_t state_count() const noexcept { return out_.size(); }
  std::size_t symbol_count() const noexcept { return symbol_index_.size(); }
  std::size_t initial() const noexcept { return initial_; }
  bool accepting(std::size_t q) const { return accepting_[q]; }
  const std::vector<bool>& accepting_mask() const noexcept { return accepting_; }
  std::span<const Edge> out(std::size_t q) const { return out_[q]; }

  std::size_t state(const StateId& name) const { return state_index_.at(name); }
  bool has_symbol(const Symbol& s) const { return symbol_index_.contains(s); }
  std::size_t symbol(const Symbol& s) const {
    auto it = symbol_index_.find(s);
    if (it == symbol_index_.end()) throw UnknownSymbol(s);
    return it->second;
  }

  std::vector<std::vector<std::size_t>> successors() const {
    std::vector<std::vector<std::size_t>> succ(out_.size());
    for (std::size_t q = 0; q < out_.size(); ++q)
      for (const auto& e : out_[q]) succ[q].push_back(e.to);
    return succ;
  }

private:
  std::unordered_map<Symbol, std::size_t> symbol_index_;
  std::unordered_map<StateId, std::size_t> state_index_;
  std::vector<std::vector<Edge>> out_;
  std::vector<bool> accepting_;
  std::size_t initial_ = 0;
};

inline bool is_deterministic(const CostAutomaton& a) {
  std::set<std::pair<StateId, Symbol>> seen;
  for (const auto& t : a.transitions)
    if (!seen.emplace(t.from, t.symbol).second) return false;
  return true;
}

/// Sub-automaton induced by `keep` (transitions with both ends kept). The
/// initial state is kept if it survives, otherwise the first kept state
/// stands in so the result stays valid.
inline CostAutomaton induced(const CostAutomaton& a, const std::set<StateId>& keep) {
  CostAutomaton r;
  r.alphabet = a.alphabet;
  for (const auto& q : a.states)
    if (keep.contains(q)) r.states.push_back(q);
  if (r.states.empty()) return empty_automaton(a.alphabet);
  r.initial = keep.contains(a.initial) ? a.initial : r.states.front();
  for (const auto& q : a.accepting)
    if (keep.contains(q)) r.accepting.push_back(q);
  for (const auto& t : a.transitions)
    if (keep.contains(t.from) && keep.contains(t.to)) r.transitions.push_back(t);
  return r;
}

inline CostAutomaton with_zero_costs(CostAutomaton a) {
  for (auto& t : a.transitions) t.cost = 0.0;
  return a;
}

inline CostAutomaton with_cost_shift(CostAutomaton a, double c) {
  for (auto& t : a.transitions) t.cost += c;
  return a;
}

/// Membership by subset simulation.
inline bool accepts(const CostAutomaton& a, std::span<const Symbol> word) {
  if (a.empty()) return false;
  IndexedAutomaton ix(a);
  std::vector<bool> current(ix.state_count(), false);
  current[ix.initial()] = true;
  for (const auto& s : word) {
    if (!ix.has_symbol(s)) return false;
    const std::size_t sym = ix.symbol(s);
    std::vector<bool> next(ix.state_count(), false);
    bool any = false;
    for (std::size_t q = 0; q < current.size(); ++q) {
      if (!current[q]) continue;
      for (const auto& e : ix.out(q))
        if (e.symbol == sym) next[e.to] = any = true;
    }
    if (!any) return false;
    current = std::move(next);
  }
  for (std::size_t q = 0; q < current.size(); ++q)
    if (current[q] && ix.accepting(q)) return true;
  return false;
}

}  // namespace fea
