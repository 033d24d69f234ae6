#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>

#include "fea/core/automaton.hpp"
#include "fea/core/determinize.hpp"
#include "fea/core/trim.hpp"
#include "fea/energy.hpp"

namespace fea {

/// Same automaton with V(p,a,p') = ln k(p,a), k(p,a) the number of
/// a-successors of p.
inline CostAutomaton branching_costs(CostAutomaton a) {
  std::map<std::pair<StateId, Symbol>, std::size_t> k;
  for (const auto& t : a.transitions) ++k[{t.from, t.symbol}];
  for (auto& t : a.transitions) t.cost = std::log(static_cast<double>(k[{t.from, t.symbol}]));
  return a;
}

struct NondetReport {
  double lambda_plus = 0.0;      // clamped at 0
  double lambda_plus_raw = 0.0;
  double energy_v = 0.0;
  double energy_zero = 0.0;
  std::optional<double> lambda_exact;  // clamped at 0
  std::optional<double> lambda_exact_raw;
  std::optional<double> energy_dfa;
  std::optional<std::size_t> dfa_states;
};

/// E(M_V) - E(M_0) on the trimmed automaton with branching costs.
inline NondetReport lambda_plus(const CostAutomaton& a, const EnergyOptions& opts = {}) {
  const auto t = trim(a);
  NondetReport r;
  r.energy_v = free_energy(branching_costs(t), opts).energy;
  r.energy_zero = free_energy(with_zero_costs(t), opts).energy;
  r.lambda_plus_raw = r.energy_v - r.energy_zero;
  r.lambda_plus = std::max(0.0, r.lambda_plus_raw);
  return r;
}

/// Adds the determinization-based rate E(M_0) - E(det(M)_0) to `report`.
/// Throws StateCapExceeded; `report` is left untouched in that case.
inline void add_lambda_exact(NondetReport& report, const CostAutomaton& a, std::size_t state_cap = default_state_cap,
                             const EnergyOptions& opts = {}) {
  const auto t = trim(a);
  const auto d = determinize(t, state_cap);
  const double e_dfa = free_energy(d, opts).energy;
  const double e_zero = free_energy(with_zero_costs(t), opts).energy;
  report.energy_dfa = e_dfa;
  report.dfa_states = d.states.size();
  report.lambda_exact_raw = e_zero - e_dfa;
  report.lambda_exact = std::max(0.0, *report.lambda_exact_raw);
}

/// Both estimates in one report.
inline NondetReport lambda_exact(const CostAutomaton& a, std::size_t state_cap = default_state_cap,
                                 const EnergyOptions& opts = {}) {
  auto r = lambda_plus(a, opts);
  add_lambda_exact(r, a, state_cap, opts);
  return r;
}

}  // namespace fea
