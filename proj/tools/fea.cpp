// fea: free energy of cost automata from the command line.
//
// Exit codes: 0 ok, 2 input or usage error, 3 numerical failure, 4 resource
// cap. TOLERANCE and MAX_ITERS in the environment override the solver
// defaults; --tolerance / --max-iters override both.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fea/fea.hpp"

namespace {

using fea::io::json;

int exit_code(const fea::Error& e) {
  switch (e.category()) {
    case fea::ErrorCategory::input: return 2;
    case fea::ErrorCategory::numerical: return 3;
    case fea::ErrorCategory::resource: return 4;
  }
  return 2;
}

fea::SpectralOptions solver_defaults() {
  fea::SpectralOptions o;
  if (const char* t = std::getenv("TOLERANCE")) {
    try {
      std::size_t used = 0;
      o.tolerance = std::stod(t, &used);
      if (used != std::string(t).size() || !(o.tolerance > 0.0)) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw fea::InvalidInput("TOLERANCE must be a positive number");
    }
  }
  if (const char* m = std::getenv("MAX_ITERS")) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(m, &used);
      if (used != std::string(m).size() || v <= 0) throw std::invalid_argument(m);
      o.max_iterations = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw fea::InvalidInput("MAX_ITERS must be a positive integer");
    }
  }
  return o;
}

void print(const char* key, double v) { std::printf("%s %.6f\n", key, v); }

struct SolverFlags {
  std::optional<double> tolerance;
  std::optional<std::size_t> max_iters;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tolerance", tolerance, "relative convergence tolerance of the eigenvalue solver");
    cmd->add_option("--max-iters", max_iters, "iteration limit of the eigenvalue solver");
  }

  fea::EnergyOptions resolve(const fea::SpectralOptions& base) const {
    fea::EnergyOptions o;
    o.spectral = base;
    if (tolerance) {
      if (!(*tolerance > 0.0)) throw fea::InvalidInput("--tolerance must be positive");
      o.spectral.tolerance = *tolerance;
    }
    if (max_iters) {
      if (*max_iters == 0) throw fea::InvalidInput("--max-iters must be positive");
      o.spectral.max_iterations = *max_iters;
    }
    return o;
  }
};

double oracle_estimate(const fea::PartitionSeries& s, std::size_t window) {
  if (auto g = fea::estimate_growth(s, window)) return *g;
  return fea::estimate_limit(s, window, true).estimate;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free energy of cost automata and regular languages"};
  app.require_subcommand(1);

  // energy
  std::string energy_path, form = "compact";
  bool energy_json = false, energy_branching = false;
  SolverFlags energy_solver;
  auto* energy = app.add_subcommand("energy", "free energy of an automaton");
  energy->add_option("automaton", energy_path)->required();
  energy->add_option("--form", form, "matrix form")->check(CLI::IsMember({"compact", "bipartite"}));
  energy->add_flag("--json", energy_json);
  energy->add_flag("--branching-costs", energy_branching, "replace costs by ln k(p,a)");
  energy_solver.attach(energy);

  // nondet
  std::string nondet_path;
  bool nondet_exact = false, nondet_json = false;
  std::size_t state_cap = fea::default_state_cap;
  SolverFlags nondet_solver;
  auto* nondet = app.add_subcommand("nondet", "nondeterminism estimates of an NFA");
  nondet->add_option("automaton", nondet_path)->required();
  nondet->add_flag("--exact", nondet_exact, "also determinize and report the exact rate");
  nondet->add_flag("--json", nondet_json);
  nondet->add_option("--state-cap", state_cap, "subset construction limit");
  nondet_solver.attach(nondet);

  // similarity
  std::string sim_a, sim_b;
  bool sim_json = false, sim_normalized = false;
  SolverFlags sim_solver;
  auto* sim = app.add_subcommand("similarity", "shared free energy of two automata");
  sim->add_option("first", sim_a)->required();
  sim->add_option("second", sim_b)->required();
  sim->add_flag("--json", sim_json);
  sim->add_flag("--normalized", sim_normalized, "also print delta / (energy_1 + energy_2)");
  sim_solver.attach(sim);

  // implement
  std::string impl_dfa, impl_costs, impl_out;
  auto* impl = app.add_subcommand("implement", "write a DFA whose transition costs realize pair costs");
  impl->add_option("dfa", impl_dfa)->required();
  impl->add_option("pair_costs", impl_costs)->required();
  impl->add_option("out", impl_out)->required();

  // oracle
  std::string oracle_path, kind = "runs", oracle_costs;
  long long max_n = 200, window = 0;
  bool oracle_json = false, oracle_branching = false, oracle_nonzero = false;
  auto* oracle = app.add_subcommand("oracle", "exact finite-n partition sums and a limit estimate");
  oracle->add_option("automaton", oracle_path)->required();
  oracle->add_option("--kind", kind)->check(CLI::IsMember({"runs", "accepting-runs", "words"}));
  oracle->add_option("--pair-costs", oracle_costs, "pair cost document (words only; default U = 0)");
  oracle->add_option("--max-n", max_n);
  oracle->add_option("--window", window, "default min(50, max-n)");
  oracle->add_flag("--json", oracle_json);
  oracle->add_flag("--branching-costs", oracle_branching, "replace costs by ln k(p,a)");
  oracle->add_flag("--nonzero", oracle_nonzero, "ignore empty lengths inside the window");

  // linlen
  std::string linlen_path;
  bool linlen_json = false;
  long long oracle_check = 0;
  SolverFlags linlen_solver;
  auto* linlen = app.add_subcommand("linlen", "free energy of a linear-length language");
  linlen->add_option("spec", linlen_path)->required();
  linlen->add_flag("--json", linlen_json);
  linlen->add_option("--oracle-check", oracle_check, "compare against enumeration up to this length");
  linlen_solver.attach(linlen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto defaults = solver_defaults();

    if (*energy) {
      auto a = fea::io::load_automaton(energy_path);
      if (energy_branching) a = fea::branching_costs(a);
      auto opts = energy_solver.resolve(defaults);
      opts.form = form == "bipartite" ? fea::MatrixForm::bipartite : fea::MatrixForm::compact;
      const auto r = fea::free_energy(a, opts);
      if (energy_json)
        std::cout << fea::io::dump(fea::io::to_json(r));
      else
        print("energy", r.energy);
      return 0;
    }

    if (*nondet) {
      const auto a = fea::io::load_automaton(nondet_path);
      const auto opts = nondet_solver.resolve(defaults);
      auto r = fea::lambda_plus(a, opts);
      std::optional<fea::StateCapExceeded> cap_error;
      if (nondet_exact) {
        try {
          fea::add_lambda_exact(r, a, state_cap, opts);
        } catch (const fea::StateCapExceeded& e) {
          cap_error = e;
        }
      }
      if (nondet_json) {
        std::cout << fea::io::dump(fea::io::to_json(r));
      } else {
        print("lambda_plus", r.lambda_plus);
        print("energy_v", r.energy_v);
        print("energy_zero", r.energy_zero);
        if (r.lambda_exact) {
          print("lambda_exact", *r.lambda_exact);
          print("energy_dfa", *r.energy_dfa);
          std::printf("dfa_states %zu\n", *r.dfa_states);
        }
      }
      if (cap_error) {
        std::cerr << "error: " << cap_error->what() << "\n";
        return 4;
      }
      return 0;
    }

    if (*sim) {
      const auto a = fea::io::load_automaton(sim_a);
      const auto b = fea::io::load_automaton(sim_b);
      const auto r = fea::similarity(a, b, sim_solver.resolve(defaults));
      if (sim_json) {
        std::cout << fea::io::dump(fea::io::to_json(r));
      } else {
        print("delta", r.delta);
        print("energy_1", r.energy_1);
        print("energy_2", r.energy_2);
        std::printf("product_states %zu\n", r.product_states);
        if (sim_normalized) {
          if (r.normalized)
            print("normalized", *r.normalized);
          else
            std::printf("normalized undefined\n");
        }
      }
      return 0;
    }

    if (*impl) {
      const auto dfa = fea::io::load_automaton(impl_dfa);
      const auto u = fea::io::load_pair_costs(impl_costs, dfa.alphabet);
      const auto m = fea::implement_construction(dfa, u);
      fea::io::write_file(impl_out, fea::io::dump(fea::io::to_json(m)));
      std::printf("wrote %s (%zu states, %zu transitions)\n", impl_out.c_str(), m.states.size(),
                  m.transitions.size());
      return 0;
    }

    if (*oracle) {
      if (max_n <= 0) throw fea::InvalidInput("--max-n must be positive");
      if (window < 0) throw fea::InvalidInput("--window must be positive");
      const auto n = static_cast<std::size_t>(max_n);
      const std::size_t w = window == 0 ? std::min<std::size_t>(50, n) : static_cast<std::size_t>(window);
      auto a = fea::io::load_automaton(oracle_path);
      if (oracle_branching) a = fea::branching_costs(a);
      fea::PartitionSeries s;
      if (kind == "words") {
        const auto u = oracle_costs.empty() ? fea::PairCostFunction(a.alphabet)
                                            : fea::io::load_pair_costs(oracle_costs, a.alphabet);
        s = fea::word_partition_series(a, u, n);
      } else {
        if (!oracle_costs.empty()) throw fea::InvalidInput("--pair-costs applies to --kind words only");
        s = fea::run_partition_series(a, kind == "runs" ? fea::SeriesKind::runs_all : fea::SeriesKind::runs_accepting,
                                      n);
      }
      const auto est = fea::estimate_limit(s, w, oracle_nonzero);
      const auto growth = fea::estimate_growth(s, w);
      if (oracle_json) {
        json doc = fea::io::to_json(s);
        doc["window"] = w;
        doc["estimate"] = est.estimate;
        doc["spread"] = est.spread;
        doc["growth"] = growth ? json(*growth) : json(nullptr);
        std::cout << fea::io::dump(doc);
      } else {
        print("estimate", est.estimate);
        print("spread", est.spread);
        if (growth) print("growth", *growth);
      }
      return 0;
    }

    if (*linlen) {
      if (oracle_check < 0) throw fea::InvalidInput("--oracle-check must be positive");
      const auto specs = fea::io::linlen_specs_from_json(fea::io::read_file(linlen_path), linlen_path);
      fea::LinlenOptions opts;
      opts.energy = linlen_solver.resolve(defaults);
      json members = json::array();
      double union_energy = 0.0;
      for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto r = fea::linlen_energy(specs[i], opts);
        union_energy = i == 0 ? r.energy : std::max(union_energy, r.energy);
        members.push_back(fea::io::to_json(r));
      }

      constexpr double agreement = 0.05;
      std::optional<double> estimate;
      if (oracle_check > 0) {
        const auto n = static_cast<std::size_t>(oracle_check);
        for (const auto& spec : specs) {
          const double e = oracle_estimate(fea::linlen_word_oracle(spec, n), std::min<std::size_t>(12, n));
          estimate = estimate ? std::max(*estimate, e) : e;
        }
      }
      const bool agrees = !estimate || std::abs(*estimate - union_energy) <= agreement;

      if (linlen_json) {
        json doc = {{"energy", union_energy}, {"members", members}};
        doc["oracle"] = estimate ? json{{"max_n", oracle_check}, {"estimate", *estimate}, {"agrees", agrees}}
                                 : json(nullptr);
        std::cout << fea::io::dump(doc);
      } else {
        print("energy", union_energy);
        if (estimate) {
          print("oracle_estimate", *estimate);
          std::printf("oracle_agrees %s\n", agrees ? "yes" : "no");
        }
      }
      return agrees ? 0 : 3;
    }
  } catch (const fea::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
