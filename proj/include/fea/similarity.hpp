#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "fea/core/product.hpp"
#include "fea/energy.hpp"

namespace fea {

struct SimilarityReport {
  double delta = 0.0;
  double energy_1 = 0.0;
  double energy_2 = 0.0;
  std::size_t product_states = 0;
  std::optional<double> normalized;  // delta / (energy_1 + energy_2), when that is positive
};

/// Free energy of the cost-summed product, next to the two individual
/// energies. No clamping: with negative costs delta can drop below 0.
inline SimilarityReport similarity(const CostAutomaton& a1, const CostAutomaton& a2,
                                   const EnergyOptions& opts = {}, std::string_view separator = "|") {
  SimilarityReport r;
  const auto p = product(a1, a2, separator);
  r.delta = free_energy(p, opts).energy;
  r.energy_1 = free_energy(a1, opts).energy;
  r.energy_2 = free_energy(a2, opts).energy;
  r.product_states = p.states.size();
  const double denom = r.energy_1 + r.energy_2;
  if (denom > 0.0) r.normalized = r.delta / denom;
  return r;
}

}  // namespace fea
