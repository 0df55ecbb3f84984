// Runs the two-probe environment under each policy at a few budgets and
// prints efficiency against its cap, then the federated/generalist boundary
// of the asymmetric toy regime.

#include <cstdio>

#include "thermosci/thermosci.hpp"

using namespace thermosci;

int main() {
  const EnvironmentModel env(DiscreteDistribution({0.4, 0.3, 0.2, 0.1}),
                             LikelihoodModel({{{0.9, 0.1}, {0.9, 0.1}, {0.1, 0.9}, {0.1, 0.9}},
                                              {{0.8, 0.2}, {0.2, 0.8}, {0.8, 0.2}, {0.2, 0.8}}}));
  const double h0 = entropy(env.prior()).value;
  std::printf("H(Theta0) = %.6f nats\n\n", h0);
  std::printf("%-10s %7s %6s %9s %9s %9s  %s\n", "policy", "budget", "rounds", "I", "eta", "eta cap", "regime");

  const std::pair<const char*, Policy> policies[] = {
      {"greedy", policy::GreedyInfoMax{}}, {"roundrobin", policy::RoundRobin{}}, {"random", policy::Random{1}}};
  for (const auto& [name, pol] : policies) {
    for (double budget : {0.5, 2.0, 8.0}) {
      const auto r = run_episode(env, pol, CostModel{}, budget, ExpectedMode{});
      const auto& L = r.ledger;
      if (L.budget_spent <= 0.0) {
        std::printf("%-10s %7.2f %6zu %9s\n", name, budget, L.rounds_completed, "-");
        continue;
      }
      const auto s = scenario_from_ledger(L, h0);
      std::printf("%-10s %7.2f %6zu %9.5f %9.5f %9.5f  %s\n", name, budget, L.rounds_completed,
                  cumulative_information(L).value, efficiency(L), unpartitioned_eta_cap(s).value,
                  to_string(regime_classify(budget, h0).regime).c_str());
    }
  }

  std::printf("\nasymmetric fed-gen boundary omega*(N):\n");
  const auto p = toy::ToyParams::asymmetric();
  for (double n : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    std::printf("  N = %4.1f  omega* = %.4f\n", n, toy::crossover_omega(toy::c_fed(n, p.c_min, p.gamma), p.alpha_gen));
  }
  return 0;
}
