#pragma once

// Seeded randomized property suites and independent oracles. The oracles here
// never call into the code path they check: outcome-tree expectations are
// recomputed from the raw joint p(theta, y_1..y_t) rather than by chaining
// posterior updates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "thermosci/bounds.hpp"
#include "thermosci/cycle_sim.hpp"
#include "thermosci/info_core.hpp"
#include "thermosci/strategies.hpp"
#include "thermosci/toy_model.hpp"

namespace thermosci::verify {

struct CheckResult {
  std::string scope;
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  double max_error = 0.0;
  std::string detail;
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
  const CheckResult* first_failure() const {
    for (const auto& c : checks) {
      if (!c.passed) return &c;
    }
    return nullptr;
  }
};

// Accumulates the worst observed error for one property.
class Tally {
 public:
  Tally(std::string scope, std::string name) {
    result_.scope = std::move(scope);
    result_.name = std::move(name);
  }

  /// Records |error| against `tol`; the first violation is kept as detail.
  void observe(double error, double tol, const std::string& context = {}) {
    ++result_.cases;
    const double e = std::isnan(error) ? std::numeric_limits<double>::infinity() : error;
    result_.max_error = std::max(result_.max_error, e);
    if (!(e <= tol) && result_.passed) {
      result_.passed = false;
      result_.detail = context + " error " + std::to_string(e) + " > tol " + std::to_string(tol);
    }
  }

  void require(bool ok, const std::string& context) {
    ++result_.cases;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.detail = context;
    }
  }

  CheckResult done() && { return std::move(result_); }

 private:
  CheckResult result_;
};

// ------------------------------------------------------------------ generators

inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n,
                                          double zero_prob = 0.0) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = unit(rng) < zero_prob ? 0.0 : expo(rng);
    total += x;
  }
  if (total == 0.0) {
    w[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = 1.0;
    total = 1.0;
  }
  for (auto& x : w) x /= total;
  return w;
}

struct EnvShape {
  std::size_t max_states = 5;
  std::size_t max_outcomes = 4;
  std::size_t max_interventions = 3;
};

inline EnvironmentModel random_environment(std::mt19937_64& rng, EnvShape shape = {}) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t states = pick(2, shape.max_states);
  const std::size_t outcomes = pick(2, shape.max_outcomes);
  const std::size_t interventions = pick(1, shape.max_interventions);
  std::vector<std::vector<std::vector<double>>> table(interventions);
  for (auto& per_u : table) {
    for (std::size_t th = 0; th < states; ++th) per_u.push_back(random_simplex(rng, outcomes, 0.2));
  }
  return EnvironmentModel(DiscreteDistribution(random_simplex(rng, states, 0.1)),
                          LikelihoodModel(table), interventions);
}

inline std::vector<std::size_t> random_sequence(std::mt19937_64& rng, std::size_t length,
                                                std::size_t interventions) {
  std::uniform_int_distribution<std::size_t> pick(0, interventions - 1);
  std::vector<std::size_t> seq(length);
  for (auto& u : seq) u = pick(rng);
  return seq;
}

inline std::vector<std::vector<double>> random_joint(std::mt19937_64& rng, std::size_t rows,
                                                     std::size_t cols, double zero_prob = 0.2) {
  const auto flat = random_simplex(rng, rows * cols, zero_prob);
  std::vector<std::vector<double>> j(rows, std::vector<double>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) j[r][c] = flat[r * cols + c];
  return j;
}

// --------------------------------------------------------------------- oracles

namespace oracle {

inline double plain_entropy(const std::vector<double>& w) {
  double total = 0.0;
  for (double x : w) total += x;
  double h = 0.0;
  for (double x : w) {
    if (x > 0.0) {
      const double p = x / total;
      if (p >= kProbabilityFloor) h -= p * std::log(p);
    }
  }
  return h;
}

/// <H(Theta_t)> after the open-loop intervention sequence `us`, computed by
/// enumerating every outcome history and its unnormalized joint weight.
inline double expected_posterior_entropy(const EnvironmentModel& env,
                                         const std::vector<std::size_t>& us) {
  const auto& lik = env.likelihood();
  const std::size_t states = env.state_count();
  const std::size_t outcomes = env.outcome_count();
  std::vector<std::size_t> history(us.size(), 0);
  double total = 0.0;
  while (true) {
    std::vector<double> joint(states);
    double mass = 0.0;
    for (std::size_t th = 0; th < states; ++th) {
      double w = env.prior()[th];
      for (std::size_t t = 0; t < us.size(); ++t) w *= lik(us[t], th, history[t]);
      joint[th] = w;
      mass += w;
    }
    if (mass > 0.0) total += mass * plain_entropy(joint);
    std::size_t t = 0;
    while (t < history.size() && ++history[t] == outcomes) history[t++] = 0;
    if (t == history.size()) break;
  }
  return total;
}

/// Mutual information of a joint table from its definition via entropies:
/// H(X) + H(K) - H(X, K).
inline double mutual_information_by_entropies(const std::vector<std::vector<double>>& joint) {
  std::vector<double> px(joint.size(), 0.0), pk(joint.front().size(), 0.0), flat;
  for (std::size_t r = 0; r < joint.size(); ++r) {
    for (std::size_t c = 0; c < joint[r].size(); ++c) {
      px[r] += joint[r][c];
      pk[c] += joint[r][c];
      flat.push_back(joint[r][c]);
    }
  }
  return plain_entropy(px) + plain_entropy(pk) - plain_entropy(flat);
}

/// H(X | K) = sum_k p(k) H(X | K = k), straight from the joint columns.
inline double conditional_entropy_by_columns(const std::vector<std::vector<double>>& joint) {
  double h = 0.0;
  for (std::size_t c = 0; c < joint.front().size(); ++c) {
    std::vector<double> col;
    double mass = 0.0;
    for (const auto& row : joint) {
      col.push_back(row[c]);
      mass += row[c];
    }
    if (mass > 0.0) h += mass * plain_entropy(col);
  }
  return h;
}

}  // namespace oracle

// ---------------------------------------------------------------------- suites

inline std::vector<CheckResult> info_suite(std::uint64_t seed, std::size_t cases = 300) {
  std::mt19937_64 rng(seed ^ 0x1f0c0de);
  Tally uniform_max("info", "entropy_maximized_by_uniform");
  Tally eig_cap("info", "information_gain_le_belief_entropy");
  Tally two_routes("info", "information_gain_two_formulas_agree");
  Tally martingale("info", "posterior_martingale");
  Tally mi_sym("info", "joint_mi_symmetric");
  Tally mi_oracle("info", "joint_mi_matches_entropy_identity");

  for (std::size_t c = 0; c < cases; ++c) {
    const auto env = random_environment(rng, {6, 5, 3});
    const auto& belief = env.prior();
    uniform_max.observe(std::max(0.0, entropy(belief).value - std::log(double(belief.size()))), 1e-12);
    for (std::size_t u = 0; u < env.intervention_count(); ++u) {
      const double g = expected_information_gain(belief, env.likelihood(), u).value;
      eig_cap.observe(std::max(0.0, g - entropy(belief).value), 1e-12);
      const double g2 = expected_information_gain_posterior_side(belief, env.likelihood(), u).value;
      two_routes.observe(std::abs(g - g2), 1e-10);

      const auto py = predictive_outcome_dist(belief, env.likelihood(), u);
      std::vector<double> mix(belief.size(), 0.0);
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] == 0.0) continue;
        const auto post = posterior_update(belief, env.likelihood(), u, y);
        for (std::size_t th = 0; th < mix.size(); ++th) mix[th] += py[y] * post[th];
      }
      double worst = 0.0;
      for (std::size_t th = 0; th < mix.size(); ++th) worst = std::max(worst, std::abs(mix[th] - belief[th]));
      martingale.observe(worst, 1e-12);
    }
    const std::size_t rows = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const std::size_t cols = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    const auto raw = random_joint(rng, rows, cols);
    const JointTable joint(raw);
    const double mi = mutual_information_of_joint(joint).value;
    mi_sym.observe(std::abs(mi - mutual_information_of_joint(joint.transposed()).value), 1e-12);
    mi_oracle.observe(std::abs(mi - oracle::mutual_information_by_entropies(raw)), 1e-10);
  }
  std::vector<CheckResult> out;
  for (auto* t : {&uniform_max, &eig_cap, &two_routes, &martingale, &mi_sym, &mi_oracle}) {
    out.push_back(std::move(*t).done());
  }
  return out;
}

struct SampledAgreement {
  double expected = 0.0;
  double sampled = 0.0;
  double std_error = 0.0;
  bool within(double sigmas) const {
    return std::abs(expected - sampled) <= sigmas * std_error + 1e-12;
  }
};

/// Fixed three-environment suite used to compare Sampled and Expected runs.
inline std::vector<EnvironmentModel> sampled_reference_suite() {
  std::vector<EnvironmentModel> envs;
  // Binary symmetric channel with flip probability 0.25, uniform prior.
  envs.emplace_back(DiscreteDistribution({0.5, 0.5}),
                    LikelihoodModel({{{0.75, 0.25}, {0.25, 0.75}}}), 1);
  // Three states, two noisy interventions, skewed prior.
  envs.emplace_back(DiscreteDistribution({0.5, 0.3, 0.2}),
                    LikelihoodModel({{{0.9, 0.1}, {0.5, 0.5}, {0.2, 0.8}},
                                     {{0.3, 0.7}, {0.8, 0.2}, {0.6, 0.4}}}),
                    2);
  // Four states, three outcomes, one partially informative channel.
  envs.emplace_back(DiscreteDistribution({0.25, 0.25, 0.25, 0.25}),
                    LikelihoodModel({{{0.7, 0.2, 0.1},
                                      {0.1, 0.7, 0.2},
                                      {0.2, 0.1, 0.7},
                                      {0.4, 0.3, 0.3}}}),
                    1);
  return envs;
}

inline std::vector<SampledAgreement> sampled_vs_expected(std::uint64_t seed, std::size_t trials,
                                                         unsigned threads = 1) {
  std::vector<SampledAgreement> out;
  const Policy policy = policy::GreedyInfoMax{};
  const CostModel cost{};
  EpisodeLimits limits;
  limits.max_rounds = 3;
  limits.threads = threads;
  const double budget = 1e6;
  std::size_t k = 0;
  for (const auto& env : sampled_reference_suite()) {
    const auto exp = run_episode(env, policy, cost, budget, ExpectedMode{}, std::nullopt, limits);
    const auto smp = run_episode(env, policy, cost, budget, SampledMode{seed + k++, trials},
                                 std::nullopt, limits);
    out.push_back({cumulative_information(exp.ledger).value,
                   cumulative_information(smp.ledger).value,
                   smp.summary.cumulative_info_std_error});
  }
  return out;
}

inline std::vector<CheckResult> cycle_suite(std::uint64_t seed, std::size_t envs = 60,
                                            std::size_t trials = 10000) {
  std::mt19937_64 rng(seed ^ 0xc7c1e);
  std::uniform_real_distribution<double> kappa(1.0, 3.0), dfree(0.0, 0.5), unit(0.0, 1.0);
  Tally telescoping("cycle", "telescoping_identity_vs_enumeration");
  Tally round_bound("cycle", "round_work_bound");
  Tally sum_bound("cycle", "cumulative_work_bound");
  Tally eta_cap("cycle", "efficiency_cap");
  Tally info_cap("cycle", "unpartitioned_info_cap");
  Tally budget("cycle", "budget_never_overdrawn");
  Tally compression("cycle", "compression_never_lowers_efficiency");
  Tally greedy("cycle", "greedy_round_one_argmax");

  for (std::size_t e = 0; e < envs; ++e) {
    const auto env = random_environment(rng);
    const std::size_t tau = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    const auto seq = random_sequence(rng, tau, env.intervention_count());
    const Policy fixed = policy::FixedSequence{seq};

    // Unlimited budget: the episode runs the full sequence.
    const auto full = run_episode(env, fixed, CostModel{}, 1e9, ExpectedMode{});
    const double h0 = entropy(env.prior()).value;
    const double enumerated = oracle::expected_posterior_entropy(env, seq);
    telescoping.observe(
        std::abs(cumulative_information(full.ledger).value - (h0 - enumerated)), 1e-10,
        "env " + std::to_string(e));
    telescoping.observe(std::abs(full.summary.final_expected_entropy - enumerated), 1e-10);

    // Random costs and a budget that typically cuts the episode short.
    const CostModel cost{kappa(rng), kappa(rng), dfree(rng)};
    const double full_cost = [&] {
      double w = 0.0;
      for (const auto& r : full.ledger.records) {
        w += cost.kappa_meas * (r.info_gain + cost.delta_f_mem) + cost.kappa_erase * r.stored_entropy;
      }
      return w;
    }();
    const double b = unit(rng) * 1.2 * full_cost;
    const auto run = run_episode(env, fixed, cost, b, ExpectedMode{});
    const auto checks = check_ledger(run.ledger, h0, 1e-10);
    for (const auto& c : checks) {
      Tally* t = c.name == "round_work_bound"         ? &round_bound
                 : c.name == "cumulative_work_bound"  ? &sum_bound
                 : c.name == "efficiency_cap"         ? &eta_cap
                 : c.name == "unpartitioned_info_cap" ? &info_cap
                                                      : &budget;
      t->require(c.passed, "env " + std::to_string(e) + " " + c.name);
    }

    // Compression: merge outcomes pairwise; same rounds, less erasure.
    std::vector<std::size_t> merge(env.outcome_count());
    for (std::size_t y = 0; y < merge.size(); ++y) merge[y] = y / 2;
    const auto compressed = run_episode(env, fixed, cost, 1e9, ExpectedMode{}, CompressionMap(merge));
    const auto plain = run_episode(env, fixed, cost, 1e9, ExpectedMode{});
    for (std::size_t t = 0; t < plain.ledger.records.size(); ++t) {
      compression.observe(std::max(0.0, compressed.ledger.records[t].stored_entropy -
                                            plain.ledger.records[t].outcome_entropy),
                          1e-12);
    }
    if (plain.ledger.budget_spent > 0.0) {
      compression.observe(std::max(0.0, efficiency(plain.ledger) - efficiency(compressed.ledger)), 1e-12);
    }

    // Greedy picks the best single first intervention.
    EpisodeLimits one;
    one.max_rounds = 1;
    const auto g = run_episode(env, policy::GreedyInfoMax{}, CostModel{}, 1e9, ExpectedMode{},
                               std::nullopt, one);
    for (std::size_t u = 0; u < env.intervention_count(); ++u) {
      const auto f = run_episode(env, policy::FixedSequence{{u}}, CostModel{}, 1e9, ExpectedMode{},
                                 std::nullopt, one);
      greedy.observe(std::max(0.0, f.ledger.records[0].info_gain - g.ledger.records[0].info_gain), 1e-13);
    }
  }

  Tally sampled("cycle", "sampled_matches_expected_3se");
  for (const auto& a : sampled_vs_expected(seed, trials)) {
    sampled.require(a.within(3.0), "expected " + std::to_string(a.expected) + " sampled " +
                                       std::to_string(a.sampled) + " se " + std::to_string(a.std_error));
  }

  std::vector<CheckResult> out;
  for (auto* t : {&telescoping, &round_bound, &sum_bound, &eta_cap, &info_cap, &budget, &compression,
                  &greedy, &sampled}) {
    out.push_back(std::move(*t).done());
  }
  return out;
}

inline std::vector<CheckResult> bounds_suite(std::uint64_t seed, std::size_t cases = 1000) {
  std::mt19937_64 rng(seed ^ 0xb0b0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Tally monotone("bounds", "caps_monotone_in_budget_and_erasure");
  Tally generalist("bounds", "generalist_reduction_bit_exact");
  Tally specialist("bounds", "specialist_reduction");
  Tally global_caps("bounds", "federated_cap_below_global_caps");
  Tally chain_rule("bounds", "chain_rule_gap_matches_joint_mi");
  Tally hfed_le_hgen("bounds", "h_fed_le_h_gen");

  for (std::size_t c = 0; c < cases; ++c) {
    BudgetScenario s{3.0 * unit(rng), 0.01 + 5.0 * unit(rng), 3.0 * unit(rng), std::nullopt};
    BudgetScenario more_budget = s;
    more_budget.beta_w += unit(rng);
    BudgetScenario more_erasure = s;
    more_erasure.sum_hy += unit(rng);
    const double i0 = unpartitioned_info_cap(s).value;
    const double e0 = unpartitioned_eta_cap(s).value;
    monotone.observe(std::max(0.0, i0 - unpartitioned_info_cap(more_budget).value), 0.0);
    monotone.observe(std::max(0.0, unpartitioned_info_cap(more_erasure).value - i0), 0.0);
    monotone.observe(std::max(0.0, unpartitioned_eta_cap(more_erasure).value - e0), 0.0);

    // Generalist partition of a random prior.
    const auto prior = DiscreteDistribution(random_simplex(rng, 2 + c % 6, 0.1));
    const auto gen = generalist_partition(prior, s.beta_w);
    BudgetScenario flat{entropy(prior).value, s.beta_w, s.sum_hy, std::nullopt};
    const auto fed = to_scenario(gen, {s.sum_hy}, flat.h0);
    const double a = federated_eta_cap(fed).value;
    const double b = unpartitioned_eta_cap(flat).value;
    generalist.require(a == b, "eta caps differ: " + std::to_string(a) + " vs " + std::to_string(b));
    generalist.require(federated_info_cap(fed).value == unpartitioned_info_cap(flat).value,
                       "info caps differ");

    // Specialist on a random subdomain of a random joint.
    const std::size_t n = 2 + c % 3;
    std::vector<DiscreteDistribution> priors;
    for (std::size_t i = 0; i < n; ++i) priors.emplace_back(random_simplex(rng, 4, 0.2));
    const std::size_t star = c % n;
    const auto spec = specialist_partition(priors, star, s.beta_w);
    std::vector<double> hy(n, 0.0);
    hy[star] = s.sum_hy;
    const double h_spec = entropy(priors[star]).value;
    const double display = std::max(0.0, std::min(h_spec / s.beta_w, 1.0 - s.sum_hy / s.beta_w));
    specialist.observe(std::abs(federated_eta_cap(to_scenario(spec, hy, h_spec)).value - display), 1e-12);

    // Federated cap against the two global caps, random partition.
    std::vector<SubdomainBudget> subs;
    const auto masses = random_simplex(rng, n, 0.2);
    double bw = 0.0, hf = 0.0, hyw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const SubdomainBudget d{masses[i], 2.0 * unit(rng), masses[i] > 0.0 ? 4.0 * unit(rng) : 0.0,
                              unit(rng)};
      bw += d.p * d.beta_w;
      hf += d.p * d.h;
      hyw += d.p * d.sum_hy;
      subs.push_back(d);
    }
    BudgetScenario part{0.0, bw, hyw, subs};
    // Concavity of min bounds the unfloored mean of caps by the pooled cap.
    // Flooring an underfunded subdomain at 0 can lift the floored mean above
    // bw - hyw, so only h_fed bounds that one.
    double unfloored = 0.0;
    for (const auto& d : subs) unfloored += d.p * std::min(d.h, d.beta_w - d.sum_hy);
    global_caps.observe(std::max(0.0, unfloored - std::min(hf, bw - hyw)), 1e-12);
    global_caps.observe(std::max(0.0, federated_info_cap(part).value - hf), 1e-12);

    // Chain rule on a random joint.
    const std::size_t rows = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const std::size_t cols = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    const auto raw = random_joint(rng, rows, cols);
    const JointTable joint(raw);
    const auto pk = joint.col_marginal();
    std::vector<double> budgets(cols);
    for (std::size_t k = 0; k < cols; ++k) budgets[k] = pk[k] > 0.0 ? 1.0 : 0.0;
    const auto p = build_partition_from_joint(joint, budgets);
    const double hg = entropy(DiscreteDistribution(joint.row_marginal())).value;
    const double gap = partition_entropy_gap(hg, h_fed(p));
    chain_rule.observe(std::abs(gap - mutual_information_of_joint(joint).value), 1e-10);
    chain_rule.observe(std::abs(h_fed(p) - oracle::conditional_entropy_by_columns(raw)), 1e-10);
    hfed_le_hgen.observe(std::max(0.0, h_fed(p) - hg), 1e-12);
  }
  std::vector<CheckResult> out;
  for (auto* t : {&monotone, &generalist, &specialist, &global_caps, &chain_rule, &hfed_le_hgen}) {
    out.push_back(std::move(*t).done());
  }
  return out;
}

using EtaFn = std::function<double(double omega, double c, double alpha)>;

/// Toy-model properties. `eta` defaults to the real law; tests substitute
/// mutated versions to confirm the suite notices.
inline std::vector<CheckResult> toy_suite(const EtaFn& eta = toy::eta_toy) {
  using namespace toy;
  Tally range("toy", "eta_in_unit_interval");
  Tally ordering("toy", "symmetric_ordering_gen_fed_spec");
  Tally monotone("toy", "eta_monotone_in_c_alpha_omega");
  Tally ceiling("toy", "asymmetric_ceiling_band");
  Tally cfed("toy", "c_fed_decreasing_and_bounded");
  Tally boundary("toy", "fed_gen_boundary_probes");

  const auto sym = ToyParams::symmetric();
  const auto asym = ToyParams::asymmetric();
  const SweepAxes axes = SweepAxes::default_for(Pair::FedGen, sym);
  const auto omegas = axes.omega.nodes();
  const auto ns = axes.second_nodes();

  for (double w : omegas) {
    for (double n : ns) {
      const double cf = c_fed(n, sym.c_min, sym.gamma);
      const double g = eta(w, 1.0, sym.alpha_gen);
      const double f = eta(w, cf, sym.alpha_fed);
      const double s = eta(w, sym.c_min, sym.alpha_spec);
      ordering.require(g >= f && f >= s, "omega " + std::to_string(w) + " N " + std::to_string(n));
      for (double v : {g, f, s}) range.require(v > 0.0 && v <= 1.0, "eta outside (0,1]");
    }
  }

  for (double w : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
    for (double c : {0.05, 0.2, 0.5, 1.0}) {
      for (double a : {0.0, 0.3, 0.8}) {
        const double base = eta(w, c, a);
        monotone.require(eta(w, std::min(1.0, c * 1.5), a) >= base, "not nondecreasing in c");
        monotone.require(eta(w, c, a + 0.1) <= base, "not nonincreasing in alpha");
        monotone.require(eta(w * 1.5, c, a) <= base, "not nonincreasing in omega");
      }
    }
  }

  // At omega = 1e-2 both strategies sit on their ceilings for every c_spec.
  const double band = 1.0 / (1.0 + asym.alpha_spec) - 1.0 / (1.0 + asym.alpha_gen);
  for (double cs : SweepAxes::default_for(Pair::SpecGen, asym).second_nodes()) {
    ceiling.observe(std::abs((eta(1e-2, cs, asym.alpha_spec) - eta(1e-2, 1.0, asym.alpha_gen)) - band),
                    1e-9);
  }

  double prev = 2.0;
  for (double n : ns) {
    const double v = c_fed(n, sym.c_min, sym.gamma);
    cfed.require(v > sym.c_min && v <= 1.0, "c_fed outside (c_min, 1]");
    if (n > 1.0) cfed.require(v < prev, "c_fed not strictly decreasing");
    prev = v;
    if (n > 1.0) cfed.require(c_fed(n, sym.c_min, 2.0) < v, "c_fed not decreasing in gamma");
  }

  const double cf4 = c_fed(4.0, asym.c_min, asym.gamma);
  boundary.require(eta(0.4, cf4, asym.alpha_fed) - eta(0.4, 1.0, asym.alpha_gen) > 0.0,
                   "delta eta at omega 0.4, N 4 not positive");
  boundary.require(eta(0.6, cf4, asym.alpha_fed) - eta(0.6, 1.0, asym.alpha_gen) < 0.0,
                   "delta eta at omega 0.6, N 4 not negative");

  std::vector<CheckResult> out;
  for (auto* t : {&range, &ordering, &monotone, &ceiling, &cfed, &boundary}) {
    out.push_back(std::move(*t).done());
  }
  return out;
}

enum class Scope { Info, Cycle, Bounds, Toy, All };

inline Scope parse_scope(const std::string& s) {
  if (s == "info") return Scope::Info;
  if (s == "cycle") return Scope::Cycle;
  if (s == "bounds") return Scope::Bounds;
  if (s == "toy") return Scope::Toy;
  if (s == "all") return Scope::All;
  throw Error(ErrorKind::InvalidConfig, "unknown verify scope '" + s + "'");
}

inline Report run(Scope scope, std::uint64_t seed) {
  Report report;
  report.seed = seed;
  auto add = [&](std::vector<CheckResult> v) {
    for (auto& c : v) report.checks.push_back(std::move(c));
  };
  if (scope == Scope::Info || scope == Scope::All) add(info_suite(seed));
  if (scope == Scope::Cycle || scope == Scope::All) add(cycle_suite(seed));
  if (scope == Scope::Bounds || scope == Scope::All) add(bounds_suite(seed));
  if (scope == Scope::Toy || scope == Scope::All) add(toy_suite());
  return report;
}

}  // namespace thermosci::verify
