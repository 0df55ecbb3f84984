#pragma once

// Partitions of the environment by a subdomain variable K, and the three
// strategy archetypes expressed as partitions:
//   generalist  - trivial partition, N = 1
//   specialist  - all mass and budget on one subdomain
//   federated   - any non-degenerate partition

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "thermosci/bounds.hpp"
#include "thermosci/error.hpp"
#include "thermosci/info_core.hpp"

namespace thermosci {

class PartitionSpec {
 public:
  /// Either `conditional_priors` or `entropies` must be supplied (or both, in
  /// which case they must agree). When `declared_budget` is given it must
  /// equal sum_i p_i W^(i).
  PartitionSpec(DiscreteDistribution masses,
                std::optional<std::vector<DiscreteDistribution>> conditional_priors,
                std::optional<std::vector<double>> entropies, std::vector<double> budgets,
                std::optional<double> declared_budget = std::nullopt)
      : masses_(std::move(masses)),
        conditional_priors_(std::move(conditional_priors)),
        budgets_(std::move(budgets)) {
    const std::size_t n = masses_.size();
    if (!conditional_priors_ && !entropies) {
      throw Error(ErrorKind::InvalidPartition,
                  "partition needs conditional priors or subdomain entropies");
    }
    if (conditional_priors_) {
      if (conditional_priors_->size() != n) {
        throw Error(ErrorKind::InvalidPartition, "conditional prior count differs from N");
      }
      for (const auto& prior : *conditional_priors_) {
        if (prior.size() != conditional_priors_->front().size()) {
          throw Error(ErrorKind::InvalidPartition, "conditional priors have different supports");
        }
        entropies_.push_back(entropy(prior).value);
      }
      if (entropies) {
        if (entropies->size() != n) {
          throw Error(ErrorKind::InvalidPartition, "entropy count differs from N");
        }
        for (std::size_t i = 0; i < n; ++i) {
          if (std::abs((*entropies)[i] - entropies_[i]) > 1e-10) {
            throw Error(ErrorKind::InvalidPartition,
                        "supplied H_" + std::to_string(i) + " disagrees with its prior");
          }
        }
      }
    } else {
      entropies_ = *entropies;
      if (entropies_.size() != n) {
        throw Error(ErrorKind::InvalidPartition, "entropy count differs from N");
      }
      for (double h : entropies_) {
        if (!(h >= 0.0) || !std::isfinite(h)) {
          throw Error(ErrorKind::InvalidPartition, "subdomain entropies must be >= 0");
        }
      }
    }
    if (budgets_.size() != n) throw Error(ErrorKind::InvalidPartition, "budget count differs from N");
    for (std::size_t i = 0; i < n; ++i) {
      if (!(budgets_[i] >= 0.0) || !std::isfinite(budgets_[i])) {
        throw Error(ErrorKind::InvalidPartition, "subdomain budgets must be >= 0");
      }
      if (masses_[i] == 0.0 && budgets_[i] > 0.0) {
        throw Error(ErrorKind::ZeroMassSubdomain,
                    "subdomain " + std::to_string(i) + " has zero mass but a positive budget");
      }
      total_budget_ += masses_[i] * budgets_[i];
    }
    if (declared_budget && std::abs(*declared_budget - total_budget_) > 1e-10) {
      throw Error(ErrorKind::InvalidPartition,
                  "sum_i p_i W^(i) = " + std::to_string(total_budget_) +
                      " disagrees with the declared budget " + std::to_string(*declared_budget));
    }
  }

  std::size_t n() const noexcept { return masses_.size(); }
  const DiscreteDistribution& masses() const noexcept { return masses_; }
  const std::optional<std::vector<DiscreteDistribution>>& conditional_priors() const noexcept {
    return conditional_priors_;
  }
  const std::vector<double>& entropies() const noexcept { return entropies_; }
  const std::vector<double>& budgets() const noexcept { return budgets_; }
  /// sum_i p_i W^(i): the expected total work across subdomains.
  double total_budget() const noexcept { return total_budget_; }

 private:
  DiscreteDistribution masses_;
  std::optional<std::vector<DiscreteDistribution>> conditional_priors_;
  std::vector<double> entropies_;
  std::vector<double> budgets_;
  double total_budget_ = 0.0;
};

/// H(Theta_0 | K) = sum_i p_i H_i.
inline double h_fed(const PartitionSpec& part) {
  double h = 0.0;
  for (std::size_t i = 0; i < part.n(); ++i) h += part.masses()[i] * part.entropies()[i];
  return h;
}

/// H(Theta_0) of the mixture sum_i p_i p(theta | K = i). Needs full priors.
inline double h_gen(const PartitionSpec& part) {
  const auto& priors = part.conditional_priors();
  if (!priors) {
    throw Error(ErrorKind::MissingPartition, "h_gen needs the conditional priors");
  }
  std::vector<double> mix(priors->front().size(), 0.0);
  for (std::size_t i = 0; i < part.n(); ++i) {
    for (std::size_t th = 0; th < mix.size(); ++th) mix[th] += part.masses()[i] * (*priors)[i][th];
  }
  return entropy(DiscreteDistribution(std::move(mix))).value;
}

inline PartitionSpec generalist_partition(const DiscreteDistribution& prior, double budget) {
  return PartitionSpec(DiscreteDistribution({1.0}), std::vector<DiscreteDistribution>{prior},
                       std::nullopt, {budget}, budget);
}

inline PartitionSpec specialist_partition(const std::vector<DiscreteDistribution>& conditional_priors,
                                          std::size_t i_star, double budget) {
  if (i_star >= conditional_priors.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "specialist index " + std::to_string(i_star) +
                                                " outside " +
                                                std::to_string(conditional_priors.size()) +
                                                " subdomains");
  }
  std::vector<double> budgets(conditional_priors.size(), 0.0);
  budgets[i_star] = budget;
  return PartitionSpec(DiscreteDistribution::point_mass(conditional_priors.size(), i_star),
                       conditional_priors, std::nullopt, std::move(budgets), budget);
}

/// Partition induced by a joint p(theta, k): rows are states, columns are
/// subdomains. Zero-mass columns get the theta marginal as a placeholder
/// prior, which carries no weight.
inline PartitionSpec build_partition_from_joint(const JointTable& joint,
                                                const std::vector<double>& budgets) {
  if (budgets.size() != joint.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "one budget per joint column is required");
  }
  const auto pk = joint.col_marginal();
  const auto ptheta = joint.row_marginal();
  std::vector<DiscreteDistribution> priors;
  priors.reserve(joint.cols());
  for (std::size_t k = 0; k < joint.cols(); ++k) {
    if (pk[k] == 0.0) {
      if (budgets[k] > 0.0) {
        throw Error(ErrorKind::ZeroMassSubdomain,
                    "subdomain " + std::to_string(k) + " has zero mass but a positive budget");
      }
      priors.push_back(DiscreteDistribution(ptheta));
      continue;
    }
    std::vector<double> col(joint.rows());
    for (std::size_t r = 0; r < joint.rows(); ++r) col[r] = joint(r, k);
    priors.push_back(DiscreteDistribution::from_weights(std::move(col)));
  }
  return PartitionSpec(DiscreteDistribution(pk), std::move(priors), std::nullopt, budgets);
}

/// Budget scenario for the bounds module. `sum_hy` holds sum_t H(Y_{i,t}) per
/// subdomain; h0 is the unpartitioned prior entropy.
inline BudgetScenario to_scenario(const PartitionSpec& part, const std::vector<double>& sum_hy,
                                  double h0) {
  if (sum_hy.size() != part.n()) {
    throw Error(ErrorKind::DimensionMismatch, "one outcome-entropy total per subdomain is required");
  }
  BudgetScenario s;
  s.h0 = h0;
  s.beta_w = part.total_budget();
  std::vector<SubdomainBudget> subs;
  for (std::size_t i = 0; i < part.n(); ++i) {
    const double p = part.masses()[i];
    subs.push_back({p, part.entropies()[i], part.budgets()[i], sum_hy[i]});
    s.sum_hy += p * sum_hy[i];
  }
  s.subdomains = std::move(subs);
  return s;
}

}  // namespace thermosci
