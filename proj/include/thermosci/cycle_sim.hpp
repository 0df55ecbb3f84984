#pragma once

// Measure-update-erase episodes under a finite work budget.
//
// Work is beta-normalized (nats). Each executed round t charges
//   W_meas  = kappa_meas  * (I_t + delta_f_mem)
//   W_erase = kappa_erase * H(S_t)
// where I_t is the history-conditioned mutual information and S_t = g(Y_t) is
// the stored statistic. With kappa = 1 and delta_f_mem = 0 both Landauer-type
// lower bounds are saturated.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "thermosci/error.hpp"
#include "thermosci/info_core.hpp"
#include "thermosci/parallel.hpp"

namespace thermosci {

/// Absolute slack allowed when deciding whether a round fits the budget.
inline constexpr double kBudgetSlack = 1e-12;

class EnvironmentModel {
 public:
  EnvironmentModel(DiscreteDistribution prior, LikelihoodModel likelihood)
      : EnvironmentModel(std::move(prior), likelihood, likelihood.interventions()) {}

  EnvironmentModel(DiscreteDistribution prior, LikelihoodModel likelihood,
                   std::size_t intervention_count)
      : prior_(std::move(prior)), likelihood_(std::move(likelihood)) {
    if (intervention_count == 0 || intervention_count != likelihood_.interventions()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "declared intervention count does not match the likelihood table");
    }
    if (prior_.size() != likelihood_.states()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "prior support does not match the likelihood state dimension");
    }
  }

  const DiscreteDistribution& prior() const noexcept { return prior_; }
  const LikelihoodModel& likelihood() const noexcept { return likelihood_; }
  std::size_t intervention_count() const noexcept { return likelihood_.interventions(); }
  std::size_t state_count() const noexcept { return likelihood_.states(); }
  std::size_t outcome_count() const noexcept { return likelihood_.outcomes(); }

 private:
  DiscreteDistribution prior_;
  LikelihoodModel likelihood_;
};

struct CostModel {
  double kappa_meas = 1.0;
  double kappa_erase = 1.0;
  double delta_f_mem = 0.0;  // nats per round

  void validate() const {
    if (!(kappa_meas >= 1.0) || !std::isfinite(kappa_meas)) {
      throw Error(ErrorKind::InvalidConfig, "kappa_meas must be >= 1");
    }
    if (!(kappa_erase >= 1.0) || !std::isfinite(kappa_erase)) {
      throw Error(ErrorKind::InvalidConfig, "kappa_erase must be >= 1");
    }
    if (!(delta_f_mem >= 0.0) || !std::isfinite(delta_f_mem)) {
      throw Error(ErrorKind::InvalidConfig, "delta_f_mem must be >= 0");
    }
  }
};

/// Deterministic compression g: outcome index -> statistic index.
class CompressionMap {
 public:
  explicit CompressionMap(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
    if (mapping_.empty()) throw Error(ErrorKind::IncompleteMapping, "empty compression map");
    std::size_t top = 0;
    for (auto s : mapping_) top = std::max(top, s);
    statistics_ = top + 1;
    std::vector<bool> hit(statistics_, false);
    for (auto s : mapping_) hit[s] = true;
    for (bool h : hit) {
      if (!h) throw Error(ErrorKind::InvalidConfig, "compression map is not surjective");
    }
  }

  static CompressionMap identity(std::size_t outcomes) {
    std::vector<std::size_t> m(outcomes);
    for (std::size_t i = 0; i < outcomes; ++i) m[i] = i;
    return CompressionMap(std::move(m));
  }

  static CompressionMap constant(std::size_t outcomes) {
    return CompressionMap(std::vector<std::size_t>(outcomes, 0));
  }

  std::size_t outcome_count() const noexcept { return mapping_.size(); }
  std::size_t statistic_count() const noexcept { return statistics_; }
  std::size_t operator()(std::size_t y) const { return mapping_.at(y); }
  const std::vector<std::size_t>& mapping() const noexcept { return mapping_; }

  DiscreteDistribution pushforward(const DiscreteDistribution& outcomes) const {
    if (outcomes.size() != mapping_.size()) {
      throw Error(ErrorKind::IncompleteMapping,
                  "compression map covers " + std::to_string(mapping_.size()) + " outcomes, got " +
                      std::to_string(outcomes.size()));
    }
    std::vector<double> s(statistics_, 0.0);
    for (std::size_t y = 0; y < mapping_.size(); ++y) s[mapping_[y]] += outcomes[y];
    return DiscreteDistribution(std::move(s));
  }

 private:
  std::vector<std::size_t> mapping_;
  std::size_t statistics_ = 0;
};

/// Entropy of the stored statistic g(Y); plain H(Y) when no map is given.
inline InfoQuantity stored_entropy(const DiscreteDistribution& outcome_dist,
                                   const std::optional<CompressionMap>& compression = std::nullopt) {
  if (!compression) return entropy(outcome_dist);
  return entropy(compression->pushforward(outcome_dist));
}

namespace policy {
struct FixedSequence {
  std::vector<std::size_t> interventions;
};
struct RoundRobin {};
/// Open-loop uniform draws; the same intervention sequence is used on every
/// branch and in every trial, so Expected and Sampled runs stay comparable.
struct Random {
  std::uint64_t seed = 0;
};
/// Per-belief argmax of expected information gain, lowest index on ties.
struct GreedyInfoMax {};
}  // namespace policy

using Policy = std::variant<policy::FixedSequence, policy::RoundRobin, policy::Random,
                            policy::GreedyInfoMax>;

struct ExpectedMode {};
struct SampledMode {
  std::uint64_t seed = 0;
  std::size_t trials = 10000;
};
using RunMode = std::variant<ExpectedMode, SampledMode>;

struct EpisodeLimits {
  std::size_t max_rounds = 32;
  /// Cap on the number of live outcome-tree nodes in Expected mode.
  std::size_t node_cap = 1'000'000;
  /// Worker threads for Sampled mode; 0 means default_thread_count().
  unsigned threads = 1;
};

enum class EpisodeStatus { Completed, BudgetExhaustedImmediately };

inline std::string to_string(EpisodeStatus s) {
  return s == EpisodeStatus::Completed ? "completed" : "budget_exhausted_immediately";
}

enum class StopReason { BudgetExhausted, MaxRounds, PolicyExhausted };

inline std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::BudgetExhausted: return "budget_exhausted";
    case StopReason::MaxRounds: return "max_rounds";
    case StopReason::PolicyExhausted: return "policy_exhausted";
  }
  return "unknown";
}

struct RoundRecord {
  std::size_t round_index = 0;  // 1-based
  /// Intervention at this round. For adaptive policies in Expected mode this
  /// is the choice on the most probable branch; -1 means it varied.
  long intervention = 0;
  double info_gain = 0.0;
  double outcome_entropy = 0.0;
  double stored_entropy = 0.0;
  double work_meas = 0.0;
  double work_erase = 0.0;
  double belief_entropy_before = 0.0;
  double belief_entropy_after = 0.0;

  double work() const { return work_meas + work_erase; }
};

struct WorkLedger {
  std::vector<RoundRecord> records;
  double budget_total = 0.0;
  double budget_spent = 0.0;
  std::size_t rounds_completed = 0;
  EpisodeStatus status = EpisodeStatus::Completed;
  StopReason stop_reason = StopReason::BudgetExhausted;
};

struct BeliefSummary {
  double initial_entropy = 0.0;
  /// <H(Theta_tau)>: branch-weighted (Expected) or trial-averaged (Sampled).
  double final_expected_entropy = 0.0;
  /// Probability-weighted mixture of final beliefs.
  std::vector<double> mean_belief;
  std::size_t branches = 0;
  std::size_t trials = 0;
  /// Standard error of the trial mean of I_{1:tau}; zero in Expected mode.
  double cumulative_info_std_error = 0.0;
};

struct EpisodeResult {
  WorkLedger ledger;
  BeliefSummary summary;
};

inline InfoQuantity cumulative_information(const WorkLedger& ledger) {
  double total = 0.0;
  for (const auto& r : ledger.records) total += r.info_gain;
  return InfoQuantity::nonnegative(total);
}

inline double total_stored_entropy(const WorkLedger& ledger) {
  double total = 0.0;
  for (const auto& r : ledger.records) total += r.stored_entropy;
  return total;
}

inline double total_outcome_entropy(const WorkLedger& ledger) {
  double total = 0.0;
  for (const auto& r : ledger.records) total += r.outcome_entropy;
  return total;
}

/// Sum I_t / budget_spent.
inline double efficiency(const WorkLedger& ledger) {
  if (!(ledger.budget_spent > 0.0)) {
    throw Error(ErrorKind::NoWorkSpent, "efficiency is undefined when no work was spent");
  }
  return cumulative_information(ledger).value / ledger.budget_spent;
}

/// Per-round minimal work I_t + H(S_t). Throws if the record undercuts it.
inline double round_work_lower_bound(const RoundRecord& record) {
  const double bound = record.info_gain + record.stored_entropy;
  if (record.work() < bound - 1e-12) {
    throw std::logic_error("round " + std::to_string(record.round_index) +
                           " charges less work than its lower bound");
  }
  return bound;
}

namespace detail {

inline std::size_t greedy_choice(const DiscreteDistribution& belief, const LikelihoodModel& lik) {
  std::size_t best = 0;
  double best_gain = -1.0;
  for (std::size_t u = 0; u < lik.interventions(); ++u) {
    const double g = expected_information_gain(belief, lik, u).value;
    // Near-equal gains count as ties so that round-off cannot reorder them.
    if (g > best_gain + 1e-14) {
      best_gain = g;
      best = u;
    }
  }
  return best;
}

class PolicyRunner {
 public:
  PolicyRunner(const Policy& policy, const EnvironmentModel& env, std::size_t max_rounds)
      : policy_(policy), env_(env) {
    if (const auto* fixed = std::get_if<policy::FixedSequence>(&policy_)) {
      for (auto u : fixed->interventions) {
        if (u >= env.intervention_count()) {
          throw Error(ErrorKind::InvalidConfig, "fixed sequence references intervention " +
                                                    std::to_string(u) + " out of range");
        }
      }
    }
    if (const auto* rnd = std::get_if<policy::Random>(&policy_)) {
      std::mt19937_64 rng(rnd->seed);
      std::uniform_int_distribution<std::size_t> pick(0, env.intervention_count() - 1);
      random_sequence_.reserve(max_rounds);
      for (std::size_t t = 0; t < max_rounds; ++t) random_sequence_.push_back(pick(rng));
    }
  }

  /// Number of rounds the policy can plan for, or SIZE_MAX when unbounded.
  std::size_t horizon() const {
    if (const auto* fixed = std::get_if<policy::FixedSequence>(&policy_)) {
      return fixed->interventions.size();
    }
    return static_cast<std::size_t>(-1);
  }

  bool adaptive() const { return std::holds_alternative<policy::GreedyInfoMax>(policy_); }

  std::size_t choose(std::size_t t, const DiscreteDistribution& belief) const {
    return std::visit(
        [&](const auto& p) -> std::size_t {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, policy::FixedSequence>) {
            return p.interventions[t];
          } else if constexpr (std::is_same_v<P, policy::RoundRobin>) {
            return t % env_.intervention_count();
          } else if constexpr (std::is_same_v<P, policy::Random>) {
            return random_sequence_[t];
          } else {
            return greedy_choice(belief, env_.likelihood());
          }
        },
        policy_);
  }

 private:
  const Policy& policy_;
  const EnvironmentModel& env_;
  std::vector<std::size_t> random_sequence_;
};

// Per-belief quantities for one prospective round.
struct RoundTerms {
  std::size_t u = 0;
  double info = 0.0;
  double outcome_entropy = 0.0;
  double stored = 0.0;
};

inline RoundTerms round_terms(const DiscreteDistribution& belief, const EnvironmentModel& env,
                              std::size_t u, const std::optional<CompressionMap>& compression) {
  RoundTerms terms;
  terms.u = u;
  const auto py = predictive_outcome_dist(belief, env.likelihood(), u);
  terms.info = expected_information_gain(belief, env.likelihood(), u).value;
  terms.outcome_entropy = entropy(py).value;
  terms.stored = stored_entropy(py, compression).value;
  return terms;
}

inline void validate_episode_inputs(const EnvironmentModel& env, const CostModel& cost,
                                    double budget,
                                    const std::optional<CompressionMap>& compression) {
  cost.validate();
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw Error(ErrorKind::InvalidConfig, "budget must be a finite nonnegative number of nats");
  }
  if (compression && compression->outcome_count() != env.outcome_count()) {
    throw Error(ErrorKind::IncompleteMapping, "compression map does not cover the outcome support");
  }
}

struct TreeNode {
  DiscreteDistribution belief;
  double prob;
};

inline EpisodeResult run_expected(const EnvironmentModel& env, const Policy& pol,
                                  const CostModel& cost, double budget,
                                  const std::optional<CompressionMap>& compression,
                                  const EpisodeLimits& limits) {
  const PolicyRunner runner(pol, env, limits.max_rounds);
  const auto& lik = env.likelihood();

  EpisodeResult result;
  auto& ledger = result.ledger;
  ledger.budget_total = budget;
  result.summary.initial_entropy = entropy(env.prior()).value;

  std::vector<TreeNode> frontier{TreeNode{env.prior(), 1.0}};
  double belief_entropy = result.summary.initial_entropy;
  const std::size_t rounds = std::min(limits.max_rounds, runner.horizon());
  ledger.stop_reason = rounds == limits.max_rounds ? StopReason::MaxRounds
                                                   : StopReason::PolicyExhausted;

  for (std::size_t t = 0; t < rounds; ++t) {
    if (budget - ledger.budget_spent <= kBudgetSlack) {
      ledger.stop_reason = StopReason::BudgetExhausted;
      break;
    }
    RoundRecord rec;
    rec.round_index = t + 1;
    rec.belief_entropy_before = belief_entropy;

    std::vector<std::size_t> choice(frontier.size());
    double heaviest = -1.0;
    for (std::size_t n = 0; n < frontier.size(); ++n) {
      const auto& node = frontier[n];
      const auto terms = round_terms(node.belief, env, runner.choose(t, node.belief), compression);
      choice[n] = terms.u;
      rec.info_gain += node.prob * terms.info;
      rec.outcome_entropy += node.prob * terms.outcome_entropy;
      rec.stored_entropy += node.prob * terms.stored;
      if (node.prob > heaviest) {
        heaviest = node.prob;
        rec.intervention = static_cast<long>(terms.u);
      }
    }
    if (runner.adaptive()) {
      for (auto c : choice) {
        if (c != choice.front()) rec.intervention = -1;
      }
    }
    rec.work_meas = cost.kappa_meas * (rec.info_gain + cost.delta_f_mem);
    rec.work_erase = cost.kappa_erase * rec.stored_entropy;

    if (ledger.budget_spent + rec.work() > budget + kBudgetSlack) {
      ledger.stop_reason = StopReason::BudgetExhausted;
      break;
    }

    std::vector<TreeNode> next;
    for (std::size_t n = 0; n < frontier.size(); ++n) {
      const auto& node = frontier[n];
      const auto py = predictive_outcome_dist(node.belief, lik, choice[n]);
      for (std::size_t y = 0; y < py.size(); ++y) {
        if (py[y] == 0.0) continue;
        if (next.size() >= limits.node_cap) {
          throw Error(ErrorKind::TreeTooLarge, "outcome tree exceeds " +
                                                   std::to_string(limits.node_cap) +
                                                   " nodes at round " + std::to_string(t + 1));
        }
        next.push_back(
            TreeNode{posterior_update(node.belief, lik, choice[n], y), node.prob * py[y]});
      }
    }
    frontier = std::move(next);

    belief_entropy = 0.0;
    for (const auto& node : frontier) belief_entropy += node.prob * entropy(node.belief).value;
    rec.belief_entropy_after = belief_entropy;

    ledger.budget_spent += rec.work();
    ledger.records.push_back(rec);
  }

  ledger.rounds_completed = ledger.records.size();
  if (ledger.rounds_completed == 0 && ledger.stop_reason == StopReason::BudgetExhausted) {
    ledger.status = EpisodeStatus::BudgetExhaustedImmediately;
  }

  auto& summary = result.summary;
  summary.final_expected_entropy = belief_entropy;
  summary.branches = frontier.size();
  summary.mean_belief.assign(env.state_count(), 0.0);
  for (const auto& node : frontier) {
    for (std::size_t th = 0; th < env.state_count(); ++th) {
      summary.mean_belief[th] += node.prob * node.belief[th];
    }
  }
  return result;
}

inline std::size_t sample_index(std::span<const double> probs, std::mt19937_64& rng) {
  std::discrete_distribution<std::size_t> d(probs.begin(), probs.end());
  return d(rng);
}

inline EpisodeResult run_sampled(const EnvironmentModel& env, const Policy& pol,
                                 const CostModel& cost, double budget,
                                 const std::optional<CompressionMap>& compression,
                                 const EpisodeLimits& limits, const SampledMode& mode) {
  if (mode.trials == 0) throw Error(ErrorKind::InvalidConfig, "sampled mode needs >= 1 trial");
  const PolicyRunner runner(pol, env, limits.max_rounds);
  const auto& lik = env.likelihood();
  const std::size_t trials = mode.trials;
  const unsigned threads = limits.threads == 0 ? default_thread_count() : limits.threads;

  struct Trial {
    std::mt19937_64 rng;
    std::size_t theta = 0;
    DiscreteDistribution belief;
    double cumulative_info = 0.0;
    RoundTerms pending;
  };

  std::vector<Trial> state;
  state.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    // Independent substream per trial, independent of scheduling.
    std::seed_seq seq{static_cast<std::uint32_t>(mode.seed), static_cast<std::uint32_t>(mode.seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    Trial tr{std::mt19937_64(seq), 0, env.prior(), 0.0, {}};
    tr.theta = sample_index(env.prior().probs(), tr.rng);
    state.push_back(std::move(tr));
  }

  EpisodeResult result;
  auto& ledger = result.ledger;
  ledger.budget_total = budget;
  result.summary.initial_entropy = entropy(env.prior()).value;
  result.summary.trials = trials;
  double belief_entropy = result.summary.initial_entropy;

  const std::size_t rounds = std::min(limits.max_rounds, runner.horizon());
  ledger.stop_reason = rounds == limits.max_rounds ? StopReason::MaxRounds
                                                   : StopReason::PolicyExhausted;
  const double weight = 1.0 / static_cast<double>(trials);

  std::vector<double> entropy_after(trials, 0.0);
  for (std::size_t t = 0; t < rounds; ++t) {
    if (budget - ledger.budget_spent <= kBudgetSlack) {
      ledger.stop_reason = StopReason::BudgetExhausted;
      break;
    }
    parallel_for(trials, threads, [&](std::size_t i) {
      auto& tr = state[i];
      tr.pending = round_terms(tr.belief, env, runner.choose(t, tr.belief), compression);
    });

    RoundRecord rec;
    rec.round_index = t + 1;
    rec.belief_entropy_before = belief_entropy;
    std::vector<std::size_t> votes(env.intervention_count(), 0);
    for (const auto& tr : state) {
      rec.info_gain += weight * tr.pending.info;
      rec.outcome_entropy += weight * tr.pending.outcome_entropy;
      rec.stored_entropy += weight * tr.pending.stored;
      ++votes[tr.pending.u];
    }
    rec.intervention = static_cast<long>(
        std::distance(votes.begin(), std::max_element(votes.begin(), votes.end())));
    if (runner.adaptive() && votes[static_cast<std::size_t>(rec.intervention)] != trials) {
      rec.intervention = -1;
    }
    rec.work_meas = cost.kappa_meas * (rec.info_gain + cost.delta_f_mem);
    rec.work_erase = cost.kappa_erase * rec.stored_entropy;
    if (ledger.budget_spent + rec.work() > budget + kBudgetSlack) {
      ledger.stop_reason = StopReason::BudgetExhausted;
      break;
    }

    parallel_for(trials, threads, [&](std::size_t i) {
      auto& tr = state[i];
      const auto y = sample_index(lik.slice(tr.pending.u, tr.theta), tr.rng);
      tr.cumulative_info += tr.pending.info;
      tr.belief = posterior_update(tr.belief, lik, tr.pending.u, y);
      entropy_after[i] = entropy(tr.belief).value;
    });
    belief_entropy = 0.0;
    for (double h : entropy_after) belief_entropy += weight * h;
    rec.belief_entropy_after = belief_entropy;

    ledger.budget_spent += rec.work();
    ledger.records.push_back(rec);
  }

  ledger.rounds_completed = ledger.records.size();
  if (ledger.rounds_completed == 0 && ledger.stop_reason == StopReason::BudgetExhausted) {
    ledger.status = EpisodeStatus::BudgetExhaustedImmediately;
  }

  auto& summary = result.summary;
  summary.final_expected_entropy = belief_entropy;
  summary.branches = trials;
  summary.mean_belief.assign(env.state_count(), 0.0);
  double mean = 0.0;
  for (const auto& tr : state) {
    mean += weight * tr.cumulative_info;
    for (std::size_t th = 0; th < env.state_count(); ++th) {
      summary.mean_belief[th] += weight * tr.belief[th];
    }
  }
  if (trials > 1) {
    double ss = 0.0;
    for (const auto& tr : state) ss += (tr.cumulative_info - mean) * (tr.cumulative_info - mean);
    summary.cumulative_info_std_error =
        std::sqrt(ss / static_cast<double>(trials - 1)) / std::sqrt(static_cast<double>(trials));
  }
  return result;
}

}  // namespace detail

/// Runs one budgeted episode. A round executes only when its full expected
/// cost fits in the remaining budget; partial rounds are never charged. An
/// exhausted budget ends the episode even if the next round would be free.
///
/// Expected mode enumerates the outcome tree exactly, so sum_t I_t equals
/// H(Theta_0) - <H(Theta_tau)> up to round-off. Sampled mode draws theta from
/// the prior once per trial, advances all trials in lockstep, and reports
/// trial averages; the per-trial I_t is the mutual information conditioned on
/// that trial's history.
inline EpisodeResult run_episode(const EnvironmentModel& env, const Policy& pol,
                                 const CostModel& cost, double budget, const RunMode& mode,
                                 const std::optional<CompressionMap>& compression = std::nullopt,
                                 const EpisodeLimits& limits = {}) {
  detail::validate_episode_inputs(env, cost, budget, compression);
  if (const auto* sampled = std::get_if<SampledMode>(&mode)) {
    return detail::run_sampled(env, pol, cost, budget, compression, limits, *sampled);
  }
  return detail::run_expected(env, pol, cost, budget, compression, limits);
}

}  // namespace thermosci
