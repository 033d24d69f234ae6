#pragma once

// Exact finite-n partition sums by dynamic programming over transfer
// matrices. These are the ground truth the spectral energies are checked
// against; nothing here enumerates runs or words.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fea/core/automaton.hpp"
#include "fea/core/determinize.hpp"
#include "fea/error.hpp"
#include "fea/pair_cost.hpp"

namespace fea {

enum class SeriesKind { runs_all, runs_accepting, words };

inline const char* to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::runs_all: return "runs_all";
    case SeriesKind::runs_accepting: return "runs_accepting";
    case SeriesKind::words: return "words";
  }
  return "?";
}

/// S_n for one n, kept as a logarithm so long series never overflow.
struct SeriesEntry {
  std::size_t n = 0;
  bool nonzero = false;
  double log_value = 0.0;  // ln S_n, meaningful only when nonzero
  double rate = 0.0;       // (1/n) ln S_n, with ln 0 = 0
};

struct PartitionSeries {
  SeriesKind kind = SeriesKind::runs_all;
  std::vector<SeriesEntry> entries;  // n = 1, 2, ..., max_n

  std::size_t max_n() const noexcept { return entries.size(); }
  const SeriesEntry& at(std::size_t n) const { return entries.at(n - 1); }

  /// S_n as a plain double; throws Overflow when it is not representable.
  double value(std::size_t n) const {
    const auto& e = at(n);
    if (!e.nonzero) return 0.0;
    const double v = std::exp(e.log_value);
    if (!std::isfinite(v)) throw Overflow(n);
    return v;
  }
};

inline constexpr std::size_t default_series_cap = 10'000;

namespace detail {

inline void check_max_n(std::size_t max_n, std::size_t cap) {
  if (max_n == 0) throw InvalidInput("max_n must be positive");
  if (max_n > cap) throw InvalidInput("max_n exceeds the configured cap of " + std::to_string(cap));
}

/// Nonnegative vector times a sparse weighted transfer relation, kept as
/// (values normalized to max 1, log scale).
class LogDomainSweep {
public:
  struct Arc {
    std::size_t from, to;
    double log_weight;
  };

  LogDomainSweep(std::size_t dim, std::vector<Arc> arcs) : arcs_(std::move(arcs)), v_(dim, 0.0) {
    for (const auto& a : arcs_) shift_ = std::max(shift_, a.log_weight);
    weights_.reserve(arcs_.size());
    for (const auto& a : arcs_) weights_.push_back(std::exp(a.log_weight - shift_));
  }

  void set(std::size_t i, double value) { v_[i] = value; }
  void add(std::size_t i, double value) { v_[i] += value; }

  void step() {
    std::vector<double> next(v_.size(), 0.0);
    for (std::size_t k = 0; k < arcs_.size(); ++k) next[arcs_[k].to] += v_[arcs_[k].from] * weights_[k];
    v_ = std::move(next);
    log_scale_ += shift_;
    normalize();
  }

  void normalize() {
    const double top = *std::max_element(v_.begin(), v_.end());
    if (top <= 0.0) return;
    for (auto& x : v_) x /= top;
    log_scale_ += std::log(top);
  }

  /// ln of the sum over `mask` (all entries when empty); nullopt when zero.
  std::optional<double> log_sum(const std::vector<bool>& mask = {}) const {
    double s = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (mask.empty() || mask[i]) s += v_[i];
    if (s <= 0.0) return std::nullopt;
    return log_scale_ + std::log(s);
  }

private:
  std::vector<Arc> arcs_;
  std::vector<double> weights_;
  std::vector<double> v_;
  double shift_ = -HUGE_VAL;
  double log_scale_ = 0.0;
};

inline SeriesEntry make_entry(std::size_t n, std::optional<double> log_value) {
  SeriesEntry e;
  e.n = n;
  if (log_value) {
    e.nonzero = true;
    e.log_value = *log_value;
    e.rate = *log_value / static_cast<double>(n);
  }
  return e;
}

}  // namespace detail

/// Sum of e^{run cost} over runs of length n = 1..max_n.
///
/// runs_all counts every run (any start, any end); runs_accepting counts runs
/// from the initial state ending in an accepting state.
inline PartitionSeries run_partition_series(const CostAutomaton& a, SeriesKind kind, std::size_t max_n,
                                            std::size_t cap = default_series_cap) {
  if (kind == SeriesKind::words) throw InvalidInput("use word_partition_series for word sums");
  detail::check_max_n(max_n, cap);
  PartitionSeries series;
  series.kind = kind;
  if (a.empty()) {
    for (std::size_t n = 1; n <= max_n; ++n) series.entries.push_back(detail::make_entry(n, std::nullopt));
    return series;
  }
  IndexedAutomaton ix(a);
  std::vector<detail::LogDomainSweep::Arc> arcs;
  for (std::size_t q = 0; q < ix.state_count(); ++q)
    for (const auto& e : ix.out(q)) arcs.push_back({q, e.to, e.cost});
  detail::LogDomainSweep dp(ix.state_count(), std::move(arcs));
  if (kind == SeriesKind::runs_all)
    for (std::size_t q = 0; q < ix.state_count(); ++q) dp.set(q, 1.0);
  else
    dp.set(ix.initial(), 1.0);

  const std::vector<bool> mask = kind == SeriesKind::runs_all ? std::vector<bool>{} : ix.accepting_mask();
  for (std::size_t n = 1; n <= max_n; ++n) {
    dp.step();
    series.entries.push_back(detail::make_entry(n, dp.log_sum(mask)));
  }
  return series;
}

/// Sum of e^{(U)(w)} over accepted words of length n = 1..max_n, by dynamic
/// programming over (state, last symbol). A DFA has one run per word, so run
/// sums are word sums.
inline PartitionSeries word_partition_series(const CostAutomaton& dfa, const PairCostFunction& u,
                                             std::size_t max_n, std::size_t cap = default_series_cap) {
  detail::check_max_n(max_n, cap);
  if (!is_deterministic(dfa)) throw NotDeterministic();
  PartitionSeries series;
  series.kind = SeriesKind::words;
  if (dfa.empty()) {
    for (std::size_t n = 1; n <= max_n; ++n) series.entries.push_back(detail::make_entry(n, std::nullopt));
    return series;
  }
  IndexedAutomaton ix(dfa);
  const std::size_t sigma = dfa.alphabet.size();
  auto node = [sigma](std::size_t q, std::size_t last) { return q * sigma + last; };

  std::vector<detail::LogDomainSweep::Arc> arcs;
  for (std::size_t q = 0; q < ix.state_count(); ++q)
    for (std::size_t last = 0; last < sigma; ++last)
      for (const auto& e : ix.out(q))
        arcs.push_back({node(q, last), node(e.to, e.symbol), u(dfa.alphabet[last], dfa.alphabet[e.symbol])});
  detail::LogDomainSweep dp(ix.state_count() * sigma, std::move(arcs));
  for (const auto& e : ix.out(ix.initial())) dp.add(node(e.to, e.symbol), 1.0);
  dp.normalize();

  std::vector<bool> mask(ix.state_count() * sigma, false);
  for (std::size_t q = 0; q < ix.state_count(); ++q)
    for (std::size_t last = 0; last < sigma; ++last) mask[node(q, last)] = ix.accepting(q);

  for (std::size_t n = 1; n <= max_n; ++n) {
    if (n > 1) dp.step();
    series.entries.push_back(detail::make_entry(n, dp.log_sum(mask)));
  }
  return series;
}

using BigCount = boost::multiprecision::cpp_int;

/// Cumulative counts indexed by n = 0..max_n: f[n] accepting runs and g[n]
/// distinct accepted words, both over lengths <= n.
struct CountSeries {
  std::vector<BigCount> f;
  std::vector<BigCount> g;
};

namespace detail {

inline std::vector<BigCount> cumulative_accepting_paths(const CostAutomaton& a, std::size_t max_n) {
  std::vector<BigCount> out(max_n + 1, 0);
  if (a.empty()) return out;
  IndexedAutomaton ix(a);
  std::vector<BigCount> v(ix.state_count(), 0);
  v[ix.initial()] = 1;
  BigCount total = ix.accepting(ix.initial()) ? 1 : 0;
  out[0] = total;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<BigCount> next(ix.state_count(), 0);
    for (std::size_t q = 0; q < ix.state_count(); ++q) {
      if (v[q] == 0) continue;
      for (const auto& e : ix.out(q)) next[e.to] += v[q];
    }
    v = std::move(next);
    for (std::size_t q = 0; q < ix.state_count(); ++q)
      if (ix.accepting(q)) total += v[q];
    out[n] = total;
  }
  return out;
}

}  // namespace detail

/// Exact run and word counts for the nondeterminism rate. g is computed on
/// the determinized automaton.
inline CountSeries count_series(const CostAutomaton& a, std::size_t max_n,
                                std::size_t state_cap = default_state_cap) {
  if (max_n == 0) throw InvalidInput("max_n must be positive");
  return {detail::cumulative_accepting_paths(a, max_n),
          detail::cumulative_accepting_paths(determinize(a, state_cap), max_n)};
}

/// Natural log of an arbitrary-precision count, with ln 0 = 0.
inline double log_count(const BigCount& x) {
  if (x <= 0) return 0.0;
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 1000) return std::log(x.convert_to<double>());
  const auto drop = bits - 60;
  const BigCount top = x >> drop;
  return std::log(top.convert_to<double>()) + static_cast<double>(drop) * std::log(2.0);
}

/// (ln f(n) - ln g(n)) / n.
inline double count_slope(const CountSeries& c, std::size_t n) {
  return (log_count(c.f.at(n)) - log_count(c.g.at(n))) / static_cast<double>(n);
}

struct LimitEstimate {
  double estimate = 0.0;
  double spread = 0.0;
};

/// limsup proxy: the maximum over the last `window` rates, with the window's
/// max - min as a convergence diagnostic. With `nonzero_only`, lengths with
/// S_n = 0 inside the window are ignored.
inline LimitEstimate estimate_limit(const PartitionSeries& s, std::size_t window, bool nonzero_only = false) {
  if (window == 0 || window > s.entries.size())
    throw InvalidInput("estimate window must be between 1 and the series length");
  LimitEstimate out;
  bool first = true;
  double lo = 0.0;
  for (std::size_t i = s.entries.size() - window; i < s.entries.size(); ++i) {
    const auto& e = s.entries[i];
    if (nonzero_only && !e.nonzero) continue;
    if (first) out.estimate = lo = e.rate, first = false;
    out.estimate = std::max(out.estimate, e.rate);
    lo = std::min(lo, e.rate);
  }
  out.spread = out.estimate - lo;
  return out;
}

/// Growth-rate estimate (ln S_last - ln S_first) / (last - first) between the
/// first and last nonzero entries of the final `window` lengths. The constant
/// prefactor of S_n cancels, so this has no 1/n bias. nullopt when the window
/// holds fewer than two nonzero entries.
inline std::optional<double> estimate_growth(const PartitionSeries& s, std::size_t window) {
  if (window == 0 || window > s.entries.size())
    throw InvalidInput("estimate window must be between 1 and the series length");
  const SeriesEntry* first = nullptr;
  const SeriesEntry* last = nullptr;
  for (std::size_t i = s.entries.size() - window; i < s.entries.size(); ++i) {
    if (!s.entries[i].nonzero) continue;
    if (!first) first = &s.entries[i];
    last = &s.entries[i];
  }
  if (!first || first == last) return std::nullopt;
  return (last->log_value - first->log_value) / static_cast<double>(last->n - first->n);
}

}  // namespace fea
