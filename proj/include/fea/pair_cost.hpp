#pragma once

#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "fea/core/automaton.hpp"
#include "fea/error.hpp"

namespace fea {

/// Real cost U(a, b) on ordered symbol pairs over a declared alphabet.
/// Pairs without an entry cost `fallback`.
class PairCostFunction {
public:
  PairCostFunction() = default;
  explicit PairCostFunction(std::vector<Symbol> alphabet, double fallback = 0.0)
      : alphabet_(alphabet.begin(), alphabet.end()), fallback_(fallback) {}

  void set(const Symbol& first, const Symbol& second, double cost) {
    require(first);
    require(second);
    entries_[{first, second}] = cost;
  }

  double operator()(const Symbol& first, const Symbol& second) const {
    require(first);
    require(second);
    auto it = entries_.find({first, second});
    return it == entries_.end() ? fallback_ : it->second;
  }

  const std::set<Symbol>& alphabet() const noexcept { return alphabet_; }
  const std::map<std::pair<Symbol, Symbol>, double>& entries() const noexcept { return entries_; }
  double fallback() const noexcept { return fallback_; }
  bool contains(const Symbol& s) const { return alphabet_.contains(s); }

  /// U + c on every pair, listed or not.
  PairCostFunction shifted(double c) const {
    PairCostFunction r = *this;
    r.fallback_ += c;
    for (auto& [k, v] : r.entries_) v += c;
    return r;
  }

  /// Largest value U takes on the alphabet.
  double max_value() const {
    double m = fallback_;
    bool listed_everything = entries_.size() == alphabet_.size() * alphabet_.size();
    if (listed_everything && !entries_.empty()) m = entries_.begin()->second;
    for (const auto& [k, v] : entries_) m = std::max(m, v);
    return m;
  }

private:
  void require(const Symbol& s) const {
    if (!alphabet_.contains(s)) throw UnknownSymbol(s);
  }

  std::set<Symbol> alphabet_;
  std::map<std::pair<Symbol, Symbol>, double> entries_;
  double fallback_ = 0.0;
};

/// Total pair cost of a word: sum of U over adjacent symbol pairs; 0 when the
/// word has fewer than two symbols.
inline double word_cost(const PairCostFunction& u, std::span<const Symbol> w) {
  for (const auto& s : w)
    if (!u.contains(s)) throw UnknownSymbol(s);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) total += u(w[i], w[i + 1]);
  return total;
}

}  // namespace fea
