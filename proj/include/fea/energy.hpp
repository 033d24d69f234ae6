#pragma once

// Free energy of cost automata from the Perron-Frobenius eigenvalue of their
// Gurevich matrices, component by component.

#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fea/core/automaton.hpp"
#include "fea/core/scc.hpp"
#include "fea/core/trim.hpp"
#include "fea/spectral.hpp"

namespace fea {

enum class MatrixForm { bipartite, compact };

inline const char* to_string(MatrixForm f) { return f == MatrixForm::bipartite ? "bipartite" : "compact"; }

namespace detail {

inline void require_strongly_connected(const CostAutomaton& component) {
  if (component.empty() || component.transitions.empty())
    throw NotStronglyConnected("component has no transitions");
  auto p = scc(component);
  if (p.components.size() != 1) throw NotStronglyConnected("component is not strongly connected");
}

}  // namespace detail

/// Matrix of the node/transition graph: every state and every transition
/// (p,a,q) is a node, with p -> (p,a,q) weighted e^V(p,a,q) and
/// (p,a,q) -> q weighted 1. Rows are the states first, then the transitions in
/// source order.
inline NonnegativeMatrix gurevich_matrix_bipartite(const CostAutomaton& component) {
  detail::require_strongly_connected(component);
  IndexedAutomaton ix(component);
  const std::size_t states = component.states.size();
  std::vector<std::string> labels = component.states;
  for (const auto& t : component.transitions) labels.push_back(detail::triple_name(t));

  NonnegativeMatrix m(states + component.transitions.size(), std::move(labels));
  for (std::size_t i = 0; i < component.transitions.size(); ++i) {
    const auto& t = component.transitions[i];
    m.set(ix.state(t.from), states + i, std::exp(t.cost));
    m.set(states + i, ix.state(t.to), 1.0);
  }
  return m;
}

/// State-by-state matrix: entry (p,q) sums e^V over every symbol leading from
/// p to q.
inline NonnegativeMatrix gurevich_matrix_compact(const CostAutomaton& component) {
  detail::require_strongly_connected(component);
  IndexedAutomaton ix(component);
  NonnegativeMatrix m(component.states.size(), component.states);
  for (const auto& t : component.transitions) m.add(ix.state(t.from), ix.state(t.to), std::exp(t.cost));
  return m;
}

struct ComponentEnergy {
  double energy = 0.0;
  std::optional<SpectralResult> solver;  // absent for loop-free singletons
};

/// Energy of one strongly connected component: ln of the compact radius, or
/// twice ln of the bipartite radius (a run of length n is a walk of length 2n
/// in the node/transition graph). A single state without transitions has
/// energy 0. Throws NotConverged carrying the solver diagnostics.
inline ComponentEnergy component_energy(const CostAutomaton& component, MatrixForm form = MatrixForm::compact,
                                        const SpectralOptions& opts = {}) {
  if (component.states.size() == 1 && component.transitions.empty()) return {};
  const auto m = form == MatrixForm::compact ? gurevich_matrix_compact(component)
                                             : gurevich_matrix_bipartite(component);
  const auto r = spectral_radius(m, opts);
  if (!r.converged) throw NotConverged(r.iterations, r.residual);
  const double lr = std::log(r.radius);
  return {form == MatrixForm::compact ? lr : 2.0 * lr, r};
}

struct ComponentReport {
  std::vector<StateId> states;
  double energy = 0.0;
  bool singleton_without_loop = false;
  std::optional<SpectralResult> solver;
};

struct EnergyReport {
  double energy = 0.0;
  std::vector<ComponentReport> per_component;
  MatrixForm form_used = MatrixForm::compact;
  /// Component attaining the maximum (first in Tarjan order on ties).
  std::optional<std::size_t> maximizing_component;
  /// Whether trimming removed anything from the input.
  bool trimmed = false;
};

struct EnergyOptions {
  MatrixForm form = MatrixForm::compact;
  SpectralOptions spectral;
};

/// Free energy of a cost automaton: the maximum component energy of its
/// trimmed version; 0 for the empty automaton.
inline EnergyReport free_energy(const CostAutomaton& a, const EnergyOptions& opts = {}) {
  EnergyReport report;
  report.form_used = opts.form;
  const auto t = trim(a);
  report.trimmed = t.states.size() != a.states.size() || t.transitions.size() != a.transitions.size();
  if (t.empty()) return report;

  const auto partition = scc(t);
  std::vector<CostAutomaton> pieces(partition.components.size());
  for (std::size_t c = 0; c < pieces.size(); ++c) {
    pieces[c].alphabet = t.alphabet;
    pieces[c].states = partition.components[c];
    pieces[c].initial = pieces[c].states.front();
  }
  for (const auto& tr : t.transitions) {
    const auto c = partition.component_of.at(tr.from);
    if (partition.component_of.at(tr.to) == c) pieces[c].transitions.push_back(tr);
  }

  for (std::size_t c = 0; c < pieces.size(); ++c) {
    ComponentReport cr;
    cr.states = partition.components[c];
    cr.singleton_without_loop = partition.singleton_without_loop[c];
    if (!cr.singleton_without_loop) {
      const auto ce = component_energy(pieces[c], opts.form, opts.spectral);
      cr.energy = ce.energy;
      cr.solver = ce.solver;
    }
    if (!report.maximizing_component || cr.energy > report.per_component[*report.maximizing_component].energy)
      report.maximizing_component = c;
    report.per_component.push_back(std::move(cr));
  }
  report.energy = report.per_component[*report.maximizing_component].energy;
  return report;
}

}  // namespace fea
