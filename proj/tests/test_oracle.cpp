#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"

using namespace fixtures;

namespace {

double enumerate_words(const CostAutomaton& dfa, const fea::PairCostFunction& u, std::size_t n) {
  double total = 0.0;
  for (const auto& w : words_of_length(dfa.alphabet, n))
    if (fea::accepts(dfa, w)) total += std::exp(fea::word_cost(u, w));
  return total;
}

fea::PartitionSeries series_from_rates(const std::vector<double>& rates) {
  fea::PartitionSeries s;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    fea::SeriesEntry e;
    e.n = i + 1;
    e.nonzero = rates[i] != 0.0;
    e.log_value = rates[i] * static_cast<double>(e.n);
    e.rate = rates[i];
    s.entries.push_back(e);
  }
  return s;
}

}  // namespace

TEST(RunSeries, Fig2AcceptingRuns) {
  const auto s = fea::run_partition_series(fig2(), fea::SeriesKind::runs_accepting, 40);
  for (std::size_t n = 1; n <= 40; ++n) {
    if (n % 2 == 1) {
      EXPECT_FALSE(s.at(n).nonzero);
      EXPECT_EQ(s.at(n).rate, 0.0);
    } else {
      const double k = static_cast<double>(n / 2);
      EXPECT_NEAR(s.at(n).log_value, 7 * k - 5, 1e-9);
    }
  }
}

TEST(RunSeries, ZeroCostDfaCountsWords) {
  std::mt19937 rng(8);
  RandomSpec spec;
  spec.deterministic = true;
  spec.cost_hi = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto d = random_automaton(rng, spec);
    const auto s = fea::run_partition_series(d, fea::SeriesKind::runs_accepting, 9);
    for (std::size_t n = 1; n <= 9; ++n) {
      double count = 0;
      for (const auto& w : words_of_length(d.alphabet, n)) count += fea::accepts(d, w);
      EXPECT_NEAR(s.value(n), count, 1e-9 * std::max(1.0, count));
    }
  }
}

TEST(RunSeries, EmptyLengthHasZeroRate) {
  const auto a = make({"a"}, {"0", "1", "2"}, "0", {"2"}, {{"0", "a", "1", 0}, {"1", "a", "2", 0}, {"2", "a", "0", 0}});
  const auto s = fea::run_partition_series(a, fea::SeriesKind::runs_accepting, 6);
  EXPECT_FALSE(s.at(3).nonzero);
  EXPECT_EQ(s.at(3).rate, 0.0);
  EXPECT_EQ(s.value(3), 0.0);
  EXPECT_TRUE(s.at(2).nonzero);
}

TEST(RunSeries, Contiguous) {
  const auto s = fea::run_partition_series(fig3(), fea::SeriesKind::runs_all, 25);
  ASSERT_EQ(s.max_n(), 25u);
  for (std::size_t i = 0; i < 25; ++i) EXPECT_EQ(s.entries[i].n, i + 1);
}

TEST(RunSeries, Errors) {
  EXPECT_THROW(fea::run_partition_series(fig3(), fea::SeriesKind::runs_all, 0), fea::InvalidInput);
  EXPECT_THROW(fea::run_partition_series(fig3(), fea::SeriesKind::runs_all, 10'001), fea::InvalidInput);
  EXPECT_NO_THROW(fea::run_partition_series(fig3(), fea::SeriesKind::runs_all, 20'000, 20'000));
  EXPECT_THROW(fea::run_partition_series(fig3(), fea::SeriesKind::words, 5), fea::InvalidInput);
}

TEST(RunSeries, OverflowNamesLength) {
  const auto a = make({"a"}, {"S"}, "S", {"S"}, {{"S", "a", "S", 300.0}});
  const auto s = fea::run_partition_series(a, fea::SeriesKind::runs_all, 5);
  EXPECT_NEAR(s.at(5).log_value, 1500.0, 1e-9);
  EXPECT_NO_THROW(s.value(2));
  try {
    s.value(3);
    FAIL();
  } catch (const fea::Overflow& e) {
    EXPECT_EQ(e.n, 3u);
  }
}

TEST(RunSeries, LongSeriesStaysFinite) {
  const auto s = fea::run_partition_series(fea::branching_costs(fig3()), fea::SeriesKind::runs_all, 10'000);
  EXPECT_TRUE(std::isfinite(s.at(10'000).log_value));
  EXPECT_NEAR(s.at(10'000).rate, 1.0849898, 1e-3);
}

TEST(WordSeries, AbStarExample6) {
  const auto s = fea::word_partition_series(ab_star(), example6_costs(), 60);
  for (std::size_t n = 1; n <= 60; ++n) {
    if (n % 2) {
      EXPECT_FALSE(s.at(n).nonzero);
    } else {
      const double k = static_cast<double>(n / 2);
      EXPECT_NEAR(s.at(n).log_value, 7 * k - 5, 1e-9);
      EXPECT_NEAR(s.at(n).rate, (7 * k - 5) / (2 * k), 1e-12);
    }
  }
}

TEST(WordSeries, ZeroCostCountsWords) {
  const auto s = fea::word_partition_series(sigma_star({"a", "b"}), fea::PairCostFunction({"a", "b"}), 30);
  for (std::size_t n = 1; n <= 30; ++n) EXPECT_NEAR(s.at(n).rate, std::log(2.0), 1e-12);
}

TEST(WordSeries, SingleSymbolWordsCostNothing) {
  fea::PairCostFunction u({"a", "b"}, 7.0);
  const auto s = fea::word_partition_series(sigma_star({"a", "b"}), u, 2);
  EXPECT_NEAR(s.value(1), 2.0, 1e-12);
  EXPECT_NEAR(s.value(2), 4.0 * std::exp(7.0), 1e-9);
}

TEST(WordSeries, RejectsNfa) {
  EXPECT_THROW(fea::word_partition_series(fig3(), fea::PairCostFunction({"a", "b"}), 5), fea::NotDeterministic);
}

TEST(CountSeries, DeterministicEqual) {
  const auto c = fea::count_series(ab_star(), 30);
  for (std::size_t n = 0; n <= 30; ++n) EXPECT_EQ(c.f[n], c.g[n]);
  EXPECT_EQ(c.f[0], 1);
  EXPECT_EQ(c.f[4], 3);
}

TEST(CountSeries, ParallelPaths) {
  const auto a = make({"a"}, {"s", "u", "v"}, "s", {"u", "v"}, {{"s", "a", "u", 0}, {"s", "a", "v", 0}});
  const auto c = fea::count_series(a, 3);
  EXPECT_EQ(c.f[1], 2);
  EXPECT_EQ(c.g[1], 1);
}

TEST(CountSeries, Fig3Slope) {
  const auto c = fea::count_series(fig3(), 200);
  EXPECT_NEAR(fea::count_slope(c, 200), 0.2255, 0.05);
  EXPECT_NEAR(fea::count_slope(c, 200), 0.22258, 1e-4);
}

TEST(CountSeries, Fig3AsDrawnSlope) {
  const auto c = fea::count_series(fig3_a_variant(), 200);
  EXPECT_NEAR(fea::count_slope(c, 200), 0.16558, 1e-4);
}

TEST(CountSeries, LogCountOfHugeNumbers) {
  fea::BigCount x = 1;
  x <<= 5000;
  EXPECT_NEAR(fea::log_count(x), 5000 * std::log(2.0), 1e-9);
  EXPECT_EQ(fea::log_count(0), 0.0);
  EXPECT_NEAR(fea::log_count(12345), std::log(12345.0), 1e-12);
}

TEST(EstimateLimit, Constant) {
  const auto s = series_from_rates(std::vector<double>(20, 0.7));
  const auto e = fea::estimate_limit(s, 5);
  EXPECT_DOUBLE_EQ(e.estimate, 0.7);
  EXPECT_DOUBLE_EQ(e.spread, 0.0);
}

TEST(EstimateLimit, AbStarWindow) {
  const auto s = fea::word_partition_series(ab_star(), example6_costs(), 400);
  EXPECT_NEAR(fea::estimate_limit(s, 50).estimate, 3.5, 0.02);
  EXPECT_NEAR(*fea::estimate_growth(s, 50), 3.5, 1e-9);
}

TEST(EstimateLimit, AlternatingZeros) {
  std::vector<double> r;
  for (int i = 1; i <= 20; ++i) r.push_back(i % 2 ? 0.0 : std::log(2.0));
  const auto s = series_from_rates(r);
  const auto e = fea::estimate_limit(s, 10);
  EXPECT_DOUBLE_EQ(e.estimate, std::log(2.0));
  EXPECT_DOUBLE_EQ(e.spread, std::log(2.0));
  const auto nz = fea::estimate_limit(s, 10, true);
  EXPECT_DOUBLE_EQ(nz.spread, 0.0);
}

TEST(EstimateLimit, BadWindow) {
  const auto s = series_from_rates({1, 2, 3});
  EXPECT_THROW(fea::estimate_limit(s, 0), fea::InvalidInput);
  EXPECT_THROW(fea::estimate_limit(s, 4), fea::InvalidInput);
  EXPECT_FALSE(fea::estimate_growth(series_from_rates({0, 0, 1}), 3).has_value());
}

TEST(OracleEquivalence, RunsMatchEnumeration) {
  std::mt19937 rng(99);
  RandomSpec spec;
  spec.max_states = 4;
  spec.cost_lo = -1.0;
  spec.max_out = 3;
  std::vector<CostAutomaton> all{fig1(), fig2(), fea::trim(ab_star())};
  for (int i = 0; i < 20; ++i) all.push_back(random_automaton(rng, spec));
  for (const auto& a : all) {
    for (auto kind : {fea::SeriesKind::runs_all, fea::SeriesKind::runs_accepting}) {
      const auto s = fea::run_partition_series(a, kind, 10);
      for (std::size_t n = 1; n <= 10; ++n) {
        const double brute = enumerate_runs(a, n, kind == fea::SeriesKind::runs_accepting);
        if (brute == 0.0)
          EXPECT_FALSE(s.at(n).nonzero);
        else
          EXPECT_NEAR(s.value(n) / brute, 1.0, 1e-12);
      }
    }
  }
}

TEST(OracleEquivalence, WordsMatchEnumeration) {
  std::mt19937 rng(98);
  RandomSpec spec;
  spec.max_states = 4;
  spec.deterministic = true;
  std::uniform_real_distribution<double> cost(-1.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const auto d = random_automaton(rng, spec);
    fea::PairCostFunction u(d.alphabet);
    for (const auto& x : d.alphabet)
      for (const auto& y : d.alphabet) u.set(x, y, cost(rng));
    const auto s = fea::word_partition_series(d, u, 10);
    for (std::size_t n = 1; n <= 10; ++n) {
      const double brute = enumerate_words(d, u, n);
      if (brute == 0.0)
        EXPECT_FALSE(s.at(n).nonzero);
      else
        EXPECT_NEAR(s.value(n) / brute, 1.0, 1e-12);
    }
  }
}

TEST(OracleEquivalence, UnionTakesTheMax) {
  // L1 = a a*, L2 = b {a,b}*, disjoint by their first symbol.
  const auto l1 = make({"a", "b"}, {"0", "1"}, "0", {"1"}, {{"0", "a", "1", 0}, {"1", "a", "1", 0}});
  const auto l2 = make({"a", "b"}, {"0", "1"}, "0", {"1"}, {{"0", "b", "1", 0}, {"1", "a", "1", 0}, {"1", "b", "1", 0}});
  auto both = make({"a", "b"}, {"0", "1", "2"}, "0", {"1", "2"},
                   {{"0", "a", "1", 0}, {"1", "a", "1", 0}, {"0", "b", "2", 0}, {"2", "a", "2", 0}, {"2", "b", "2", 0}});
  for (double aa : {0.0, 1.0, 3.0}) {
    fea::PairCostFunction u({"a", "b"});
    u.set("a", "a", aa);
    u.set("b", "b", -0.5);
    auto est = [&](const CostAutomaton& d) {
      return fea::estimate_limit(fea::word_partition_series(d, u, 400), 50).estimate;
    };
    EXPECT_NEAR(est(both), std::max(est(l1), est(l2)), 0.02) << aa;
  }
}

TEST(OracleEquivalence, AmbiguousImplementationBoundsTheLanguage) {
  // fig2 with the accepting state duplicated: two runs per word.
  auto m = fig2();
  m.states.push_back("C2");
  m.accepting.push_back("C2");
  m.transitions.push_back({"B", "b", "C2", 2});
  m.transitions.push_back({"C2", "a", "B", 5});
  const double language = fea::estimate_limit(fea::word_partition_series(ab_star(), example6_costs(), 400), 50).estimate;
  EXPECT_LE(language, fea::free_energy(m).energy + 0.02);
  EXPECT_NEAR(fea::free_energy(m).energy, 3.5 + std::log(2.0) / 2, 1e-9);
}
