// Prices the words of a regular language by adjacent symbol pairs and
// reports the free energy, then checks the implementing DFA on short words.
//
//   language_cost <dfa.json> <pair-costs.json>

#include <cstdio>
#include <exception>

#include "fea/fea.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <dfa.json> <pair-costs.json>\n", argv[0]);
    return 2;
  }
  try {
    const auto dfa = fea::io::load_automaton(argv[1]);
    const auto u = fea::io::load_pair_costs(argv[2], dfa.alphabet);
    const auto m = fea::implement_construction(dfa, u);
    std::printf("energy %.6f\n", fea::language_energy(dfa, u).energy);
    const auto check = fea::verify_implements(m, dfa, u, 12);
    std::printf("implements up to length %zu: %s\n", check.checked_up_to, check.holds ? "yes" : "no");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
