// Nondeterminism of a small NFA built in code: the upper estimate from
// branching costs next to the exact rate from the subset construction.

#include <cstdio>

#include "fea/fea.hpp"

int main() {
  fea::CostAutomaton a;
  a.alphabet = {"a", "b"};
  a.states = {"s", "u", "v", "t"};
  a.initial = "s";
  a.accepting = {"t"};
  a.transitions = {{"s", "a", "u"}, {"s", "a", "v"}, {"u", "b", "t"}, {"v", "b", "t"}, {"t", "a", "s"}};

  const auto r = fea::lambda_exact(a);
  std::printf("lambda_plus  %.6f\n", r.lambda_plus);
  std::printf("lambda_exact %.6f (%zu subset states)\n", *r.lambda_exact, *r.dfa_states);
}
