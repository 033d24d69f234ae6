#pragma once

// Linear-length languages: words w_1 ... w_k of a base language L' with each
// w_i in r_i and the length vector (|w_1|, ..., |w_k|) in a linear set D.
//
// The energy comes from a regular translation. A word is read as a sequence
// of blocks [d_0][d_1]*...[d_m]*, one tuple symbol per block that carries a
// piece for every row, followed by |d_j| - 1 stutter symbols so lengths are
// preserved. The automaton tracks each row's r_i state and L' state (row
// boundaries of L' are guessed at the start) plus the last symbol of every
// row, which is what prices the next piece.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fea/core/automaton.hpp"
#include "fea/core/determinize.hpp"
#include "fea/core/trim.hpp"
#include "fea/energy.hpp"
#include "fea/error.hpp"
#include "fea/oracle.hpp"
#include "fea/pair_cost.hpp"

namespace fea {

/// { d_0 + s_1 d_1 + ... + s_m d_m : s_j >= 0 } over N^k.
struct LinearSet {
  std::vector<std::size_t> offset;
  std::vector<std::vector<std::size_t>> periods;

  std::size_t arity() const noexcept { return offset.size(); }
};

inline void require_valid(const LinearSet& d) {
  if (d.offset.empty()) throw InvalidInput("linear set needs at least one coordinate");
  for (auto x : d.offset)
    if (x == 0) throw InvalidInput("offset must be positive");
  std::set<std::vector<std::size_t>> seen;
  for (const auto& p : d.periods) {
    if (p.size() != d.arity()) throw InvalidInput("period arity must match the offset");
    if (std::all_of(p.begin(), p.end(), [](auto x) { return x == 0; }))
      throw InvalidInput("periods must be nonzero");
    if (!seen.insert(p).second) throw InvalidInput("periods must be distinct");
  }
}

namespace detail {

inline bool member_from(const LinearSet& d, std::size_t j, std::vector<std::size_t>& rest) {
  if (std::all_of(rest.begin(), rest.end(), [](auto x) { return x == 0; })) return true;
  if (j == d.periods.size()) return false;
  const auto& p = d.periods[j];
  std::size_t used = 0;
  while (true) {
    if (member_from(d, j + 1, rest)) {
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] += used * p[i];
      return true;
    }
    bool fits = true;
    for (std::size_t i = 0; i < rest.size(); ++i) fits = fits && rest[i] >= p[i];
    if (!fits) break;
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= p[i];
    ++used;
  }
  for (std::size_t i = 0; i < rest.size(); ++i) rest[i] += used * p[i];
  return false;
}

inline void collect_vectors(const LinearSet& d, std::size_t j, std::vector<std::size_t>& v, std::size_t total,
                            std::size_t max_total, std::set<std::vector<std::size_t>>& out) {
  if (j == d.periods.size()) {
    out.insert(v);
    return;
  }
  const auto& p = d.periods[j];
  std::size_t step = 0;
  for (auto x : p) step += x;
  std::size_t used = 0;
  while (true) {
    collect_vectors(d, j + 1, v, total, max_total, out);
    if (total + step > max_total) break;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += p[i];
    total += step;
    ++used;
  }
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= used * p[i];
}

}  // namespace detail

/// Exact membership by bounded search over the period multipliers.
inline bool linear_set_member(const LinearSet& d, const std::vector<std::size_t>& v) {
  require_valid(d);
  if (v.size() != d.arity()) throw InvalidInput("vector arity must match the linear set");
  std::vector<std::size_t> rest(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < d.offset[i]) return false;
    rest[i] = v[i] - d.offset[i];
  }
  return detail::member_from(d, 0, rest);
}

/// Members of D whose coordinates sum to at most max_total.
inline std::set<std::vector<std::size_t>> linear_set_members_up_to(const LinearSet& d, std::size_t max_total) {
  require_valid(d);
  std::set<std::vector<std::size_t>> out;
  std::size_t total = 0;
  for (auto x : d.offset) total += x;
  if (total > max_total) return out;
  auto v = d.offset;
  detail::collect_vectors(d, 0, v, total, max_total, out);
  return out;
}

struct LinearLengthSpec {
  CostAutomaton base;
  std::vector<CostAutomaton> parts;
  LinearSet lengths;
  PairCostFunction pair_cost;
};

inline void require_valid(const LinearLengthSpec& spec) {
  require_valid(spec.base);
  for (const auto& p : spec.parts) require_valid(p);
  require_valid(spec.lengths);
  if (spec.parts.empty()) throw InvalidInput("a linear-length language needs at least one part");
  if (spec.lengths.arity() != spec.parts.size())
    throw InvalidInput("linear set arity must equal the number of parts");
  const std::set<Symbol> sigma(spec.base.alphabet.begin(), spec.base.alphabet.end());
  for (const auto& p : spec.parts)
    if (std::set<Symbol>(p.alphabet.begin(), p.alphabet.end()) != sigma)
      throw InvalidInput("all automata must share one alphabet");
  for (const auto& s : sigma)
    if (!spec.pair_cost.contains(s)) throw UnknownSymbol(s);
}

inline constexpr std::size_t default_block_cap = 20'000;
inline constexpr std::size_t default_enumeration_budget = 2'000'000;

struct LinlenOptions {
  std::size_t block_cap = default_block_cap;
  std::size_t state_cap = default_state_cap;
  EnergyOptions energy;
};

namespace detail {

// Transition table of a trimmed DFA over a fixed symbol order; -1 is "no move".
struct DfaTable {
  std::vector<std::vector<int>> next;
  std::vector<bool> accepting;
  int initial = -1;

  bool empty() const { return initial < 0; }
  int run(int q, const std::vector<int>& word) const {
    for (int s : word) {
      if (q < 0) return -1;
      q = next[q][s];
    }
    return q;
  }
};

inline DfaTable dfa_table(const CostAutomaton& a, const std::vector<Symbol>& sigma, std::size_t state_cap) {
  const auto d = is_deterministic(a) ? trim(a) : determinize(a, state_cap);
  DfaTable t;
  if (d.empty()) return t;
  IndexedAutomaton ix(d);
  t.next.assign(ix.state_count(), std::vector<int>(sigma.size(), -1));
  for (std::size_t q = 0; q < ix.state_count(); ++q)
    for (const auto& e : ix.out(q)) {
      const auto& name = d.alphabet[e.symbol];
      const auto pos = std::find(sigma.begin(), sigma.end(), name) - sigma.begin();
      t.next[q][pos] = static_cast<int>(e.to);
    }
  t.accepting = ix.accepting_mask();
  t.initial = static_cast<int>(ix.initial());
  return t;
}

inline std::size_t saturating_power(std::size_t base, std::size_t exp, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) return limit + 1;
    r *= base;
  }
  return r;
}

// All words of length n over sigma_size symbols, as index vectors.
inline std::vector<std::vector<int>> all_words(std::size_t sigma_size, std::size_t n) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<int>> grown;
    for (const auto& w : out)
      for (std::size_t s = 0; s < sigma_size; ++s) {
        grown.push_back(w);
        grown.back().push_back(static_cast<int>(s));
      }
    out = std::move(grown);
  }
  return out;
}

using Tuple = std::vector<std::vector<int>>;  // one piece per row

inline std::vector<Tuple> block_tuples(const std::vector<std::size_t>& widths, std::size_t sigma_size) {
  std::vector<Tuple> out{{}};
  for (auto w : widths) {
    const auto pieces = all_words(sigma_size, w);
    std::vector<Tuple> grown;
    for (const auto& t : out)
      for (const auto& p : pieces) {
        grown.push_back(t);
        grown.back().push_back(p);
      }
    out = std::move(grown);
  }
  return out;
}

inline std::string tuple_name(std::size_t block, const Tuple& t, const std::vector<Symbol>& sigma) {
  const bool short_names = std::all_of(sigma.begin(), sigma.end(), [](const Symbol& s) { return s.size() == 1; });
  std::string out = std::to_string(block) + "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += "|";
    for (std::size_t j = 0; j < t[i].size(); ++j) {
      if (j && !short_names) out += ".";
      out += sigma[t[i][j]];
    }
  }
  return out + "]";
}

inline double piece_cost(const PairCostFunction& u, const std::vector<Symbol>& sigma, const std::vector<int>& piece) {
  double c = 0.0;
  for (std::size_t i = 0; i + 1 < piece.size(); ++i) c += u(sigma[piece[i]], sigma[piece[i + 1]]);
  return c;
}

}  // namespace detail

inline constexpr const char* stutter_symbol = "#";

/// The translated regular language with cost. Its runs price each row as
/// (U)(w_i); pair costs across row junctions are not charged, which changes
/// word costs by a bounded amount only.
inline CostAutomaton linlen_automaton(const LinearLengthSpec& spec, const LinlenOptions& opts = {}) {
  require_valid(spec);
  const auto& sigma = spec.base.alphabet;
  const std::size_t k = spec.parts.size();

  std::vector<std::vector<std::size_t>> blocks{spec.lengths.offset};
  for (const auto& p : spec.lengths.periods) blocks.push_back(p);
  std::vector<std::size_t> widths;
  std::size_t tuple_count = 0;
  for (const auto& b : blocks) {
    std::size_t w = 0;
    for (auto x : b) w += x;
    widths.push_back(w);
    tuple_count += detail::saturating_power(sigma.size(), w, opts.block_cap);
    if (tuple_count > opts.block_cap) throw BlockAlphabetTooLarge(tuple_count, opts.block_cap);
  }

  std::vector<Symbol> alphabet;
  std::vector<std::vector<detail::Tuple>> tuples;
  std::vector<std::vector<std::string>> tuple_names;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    tuples.push_back(detail::block_tuples(blocks[j], sigma.size()));
    tuple_names.emplace_back();
    for (const auto& t : tuples.back()) {
      tuple_names.back().push_back(detail::tuple_name(j, t, sigma));
      alphabet.push_back(tuple_names.back().back());
    }
  }
  alphabet.push_back(stutter_symbol);

  const auto base = detail::dfa_table(spec.base, sigma, opts.state_cap);
  std::vector<detail::DfaTable> parts;
  for (const auto& p : spec.parts) parts.push_back(detail::dfa_table(p, sigma, opts.state_cap));
  if (base.empty() || std::any_of(parts.begin(), parts.end(), [](const auto& t) { return t.empty(); }))
    return empty_automaton(alphabet);

  // Config layout: phase, then per row its r state, L' state, last symbol,
  // then the k - 1 guessed L' states at the row boundaries.
  using Config = std::vector<int>;
  auto r_at = [](std::size_t i) { return 1 + 3 * i; };
  auto lp_at = [](std::size_t i) { return 2 + 3 * i; };
  auto mem_at = [](std::size_t i) { return 3 + 3 * i; };
  auto guess_at = [k](std::size_t i) { return 1 + 3 * k + i; };

  CostAutomaton out;
  out.alphabet = alphabet;
  out.states.push_back("start");
  out.initial = "start";

  std::map<Config, std::size_t> ids;
  std::vector<Config> configs;
  auto name_of = [](std::size_t id) { return "q" + std::to_string(id); };
  auto intern = [&](const Config& c) {
    auto [it, fresh] = ids.emplace(c, configs.size());
    if (fresh) {
      configs.push_back(c);
      out.states.push_back(name_of(it->second));
    }
    return it->second;
  };
  std::set<std::size_t> chained;  // targets whose stutter chain exists
  auto chain_name = [&](std::size_t target, std::size_t remaining) {
    return name_of(target) + "~" + std::to_string(remaining);
  };
  auto emit = [&](const StateId& from, std::size_t block, std::size_t tuple, std::size_t target, double cost) {
    const std::size_t width = widths[block];
    const auto entry = width > 1 ? chain_name(target, width - 1) : name_of(target);
    out.transitions.push_back({from, tuple_names[block][tuple], entry, cost});
    if (width > 1 && chained.insert(target).second) {
      for (std::size_t r = width - 1; r >= 1; --r) {
        out.states.push_back(chain_name(target, r));
        out.transitions.push_back(
            {chain_name(target, r), stutter_symbol, r > 1 ? chain_name(target, r - 1) : name_of(target), 0.0});
      }
    }
  };

  // Reads block `j` tuple `t` from `c`; nullopt when some row dies.
  auto advance = [&](const Config& c, bool from_start, std::size_t j,
                     const detail::Tuple& t) -> std::optional<std::pair<Config, double>> {
    Config n = c;
    n[0] = static_cast<int>(j);
    double cost = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& piece = t[i];
      n[r_at(i)] = parts[i].run(c[r_at(i)], piece);
      n[lp_at(i)] = base.run(c[lp_at(i)], piece);
      if (n[r_at(i)] < 0 || n[lp_at(i)] < 0) return std::nullopt;
      if (piece.empty()) continue;
      cost += detail::piece_cost(spec.pair_cost, sigma, piece);
      if (!from_start) cost += spec.pair_cost(sigma[c[mem_at(i)]], sigma[piece.front()]);
      n[mem_at(i)] = piece.back();
    }
    return std::make_pair(n, cost);
  };

  // Start: guess the L' state at every row boundary, then read block 0.
  const std::size_t base_states = base.next.size();
  std::vector<int> guess(k > 0 ? k - 1 : 0, 0);
  while (true) {
    Config c(1 + 3 * k + guess.size(), -1);
    for (std::size_t i = 0; i < k; ++i) {
      c[r_at(i)] = parts[i].initial;
      c[lp_at(i)] = i == 0 ? base.initial : guess[i - 1];
    }
    for (std::size_t i = 0; i < guess.size(); ++i) c[guess_at(i)] = guess[i];
    for (std::size_t t = 0; t < tuples[0].size(); ++t)
      if (auto next = advance(c, true, 0, tuples[0][t])) emit("start", 0, t, intern(next->first), next->second);

    std::size_t pos = 0;
    while (pos < guess.size() && ++guess[pos] == static_cast<int>(base_states)) guess[pos++] = 0;
    if (pos == guess.size()) break;
  }

  for (std::size_t cur = 0; cur < configs.size(); ++cur) {
    const auto c = configs[cur];
    for (std::size_t j = std::max<std::size_t>(1, c[0]); j < blocks.size(); ++j)
      for (std::size_t t = 0; t < tuples[j].size(); ++t)
        if (auto next = advance(c, false, j, tuples[j][t])) emit(name_of(cur), j, t, intern(next->first), next->second);

    bool accept = true;
    for (std::size_t i = 0; i < k && accept; ++i) {
      accept = parts[i].accepting[c[r_at(i)]];
      if (i + 1 < k)
        accept = accept && c[lp_at(i)] == c[guess_at(i)];
      else
        accept = accept && base.accepting[c[lp_at(i)]];
    }
    if (accept) out.accepting.push_back(name_of(cur));
  }
  return trim(out);
}

inline EnergyReport linlen_energy(const LinearLengthSpec& spec, const LinlenOptions& opts = {}) {
  return free_energy(linlen_automaton(spec, opts), opts.energy);
}

/// Energy of a finite union: the largest member energy.
inline double linlen_union_energy(const std::vector<LinearLengthSpec>& specs, const LinlenOptions& opts = {}) {
  if (specs.empty()) throw InvalidInput("union needs at least one member");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : specs) best = std::max(best, linlen_energy(s, opts).energy);
  return best;
}

/// Ground truth by enumeration: every length vector of D with total <= max_n,
/// every combination of row words, kept when the concatenation is in L'.
/// Words reachable through several splits count once. Costs are the full
/// (U)(w), junctions included.
inline PartitionSeries linlen_word_oracle(const LinearLengthSpec& spec, std::size_t max_n,
                                          std::size_t budget = default_enumeration_budget,
                                          std::size_t state_cap = default_state_cap) {
  require_valid(spec);
  if (max_n == 0) throw InvalidInput("max_n must be positive");
  const auto& sigma = spec.base.alphabet;
  const std::size_t k = spec.parts.size();
  const auto base = detail::dfa_table(spec.base, sigma, state_cap);
  std::vector<detail::DfaTable> parts;
  for (const auto& p : spec.parts) parts.push_back(detail::dfa_table(p, sigma, state_cap));

  std::size_t produced = 0;
  auto charge = [&](std::size_t n) {
    produced += n;
    if (produced > budget) throw EnumerationBudgetExceeded(budget);
  };

  // Accepted words of part i with exact length len.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<int>>> memo;
  auto row_words = [&](std::size_t i, std::size_t len) -> const std::vector<std::vector<int>>& {
    auto [it, fresh] = memo.try_emplace({i, len});
    if (!fresh || parts[i].empty()) return it->second;
    std::vector<std::pair<std::vector<int>, int>> frontier{{{}, parts[i].initial}};
    for (std::size_t step = 0; step < len; ++step) {
      std::vector<std::pair<std::vector<int>, int>> grown;
      for (const auto& [w, q] : frontier)
        for (std::size_t s = 0; s < sigma.size(); ++s) {
          const int nq = parts[i].next[q][s];
          if (nq < 0) continue;
          grown.emplace_back(w, nq);
          grown.back().first.push_back(static_cast<int>(s));
        }
      charge(grown.size());
      frontier = std::move(grown);
    }
    for (auto& [w, q] : frontier)
      if (parts[i].accepting[q]) it->second.push_back(std::move(w));
    return it->second;
  };

  std::set<std::vector<int>> words;
  if (!base.empty()) {
    for (const auto& v : linear_set_members_up_to(spec.lengths, max_n)) {
      std::vector<const std::vector<std::vector<int>>*> rows;
      bool possible = true;
      for (std::size_t i = 0; i < k && possible; ++i) {
        rows.push_back(&row_words(i, v[i]));
        possible = !rows.back()->empty();
      }
      if (!possible) continue;
      std::vector<std::size_t> pick(k, 0);
      while (true) {
        std::vector<int> w;
        for (std::size_t i = 0; i < k; ++i) w.insert(w.end(), (*rows[i])[pick[i]].begin(), (*rows[i])[pick[i]].end());
        const int q = base.run(base.initial, w);
        if (q >= 0 && base.accepting[q]) words.insert(std::move(w));
        charge(1);
        std::size_t pos = 0;
        while (pos < k && ++pick[pos] == rows[pos]->size()) pick[pos++] = 0;
        if (pos == k) break;
      }
    }
  }

  std::vector<std::vector<double>> costs(max_n + 1);
  for (const auto& w : words) costs[w.size()].push_back(detail::piece_cost(spec.pair_cost, sigma, w));
  PartitionSeries series;
  series.kind = SeriesKind::words;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::optional<double> log_value;
    if (!costs[n].empty()) {
      const double top = *std::max_element(costs[n].begin(), costs[n].end());
      double s = 0.0;
      for (double c : costs[n]) s += std::exp(c - top);
      log_value = top + std::log(s);
    }
    series.entries.push_back(detail::make_entry(n, log_value));
  }
  return series;
}

}  // namespace fea
