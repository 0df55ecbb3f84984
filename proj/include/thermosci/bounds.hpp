#pragma once

// Closed-form information and efficiency caps for budgeted learning, plus
// regime classification and ledger checks. Everything is in nats.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "thermosci/cycle_sim.hpp"
#include "thermosci/error.hpp"

namespace thermosci {

struct SubdomainBudget {
  double p = 0.0;         // Pr[K = i]
  double h = 0.0;         // H(Theta_0 | K = i)
  double beta_w = 0.0;    // beta * W_tot^(i)
  double sum_hy = 0.0;    // sum_t H(Y_{i,t})
};

struct BudgetScenario {
  double h0 = 0.0;
  double beta_w = 0.0;
  double sum_hy = 0.0;
  std::optional<std::vector<SubdomainBudget>> subdomains;

  void validate() const {
    auto nonneg = [](double v, const char* what) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::InvalidScenario, std::string(what) + " must be finite and >= 0");
      }
    };
    nonneg(h0, "h0");
    nonneg(beta_w, "beta_w");
    nonneg(sum_hy, "sum_hy");
    if (!subdomains) return;
    if (subdomains->empty()) throw Error(ErrorKind::InvalidScenario, "empty subdomain list");
    double mass = 0.0;
    double weighted_budget = 0.0;
    for (const auto& s : *subdomains) {
      nonneg(s.p, "p_i");
      nonneg(s.h, "h_i");
      nonneg(s.beta_w, "beta_w_i");
      nonneg(s.sum_hy, "sum_hy_i");
      mass += s.p;
      weighted_budget += s.p * s.beta_w;
    }
    if (std::abs(mass - 1.0) > 1e-10) {
      throw Error(ErrorKind::InvalidScenario, "subdomain masses sum to " + std::to_string(mass));
    }
    if (std::abs(weighted_budget - beta_w) > 1e-10) {
      throw Error(ErrorKind::InvalidScenario,
                  "sum_i p_i beta_w_i = " + std::to_string(weighted_budget) +
                      " disagrees with beta_w = " + std::to_string(beta_w));
    }
  }
};

/// A cap value after flooring. `floored` marks caps whose raw expression was
/// negative (erasure entropy alone exceeds the budget), i.e. vacuous ones.
struct Cap {
  double value = 0.0;
  bool floored = false;

  static Cap from_raw(double raw) { return raw < 0.0 ? Cap{0.0, true} : Cap{raw, false}; }
};

namespace detail {

inline const std::vector<SubdomainBudget>& require_partition(const BudgetScenario& s) {
  if (!s.subdomains) {
    throw Error(ErrorKind::MissingPartition, "scenario carries no subdomain data");
  }
  return *s.subdomains;
}

inline void require_budget(double beta_w) {
  if (!(beta_w > 0.0)) throw Error(ErrorKind::ZeroBudget, "efficiency caps need beta_w > 0");
}

}  // namespace detail

/// min{h0, beta_w - sum_hy}.
inline Cap unpartitioned_info_cap(const BudgetScenario& s) {
  s.validate();
  return Cap::from_raw(std::min(s.h0, s.beta_w - s.sum_hy));
}

/// min{h0 / beta_w, 1 - sum_hy / beta_w}.
inline Cap unpartitioned_eta_cap(const BudgetScenario& s) {
  s.validate();
  detail::require_budget(s.beta_w);
  return Cap::from_raw(std::min(s.h0 / s.beta_w, 1.0 - s.sum_hy / s.beta_w));
}

inline Cap per_subdomain_cap(double p_i, double h_i, double beta_w_i, double sum_hy_i) {
  if (!(p_i >= 0.0 && h_i >= 0.0 && beta_w_i >= 0.0 && sum_hy_i >= 0.0)) {
    throw Error(ErrorKind::InvalidScenario, "subdomain inputs must be >= 0");
  }
  return Cap::from_raw(std::min(h_i, beta_w_i - sum_hy_i));
}

inline Cap per_subdomain_cap(const SubdomainBudget& s) {
  return per_subdomain_cap(s.p, s.h, s.beta_w, s.sum_hy);
}

/// sum_i p_i * per_subdomain_cap(i).
inline Cap federated_info_cap(const BudgetScenario& s) {
  s.validate();
  const auto& subs = detail::require_partition(s);
  Cap total;
  for (const auto& sub : subs) {
    const Cap c = per_subdomain_cap(sub);
    total.value += sub.p * c.value;
    total.floored = total.floored || (c.floored && sub.p > 0.0);
  }
  return total;
}

/// min{ (sum_i p_i h_i) / beta_w, 1 - (sum_i p_i sum_hy_i) / beta_w }.
inline Cap federated_eta_cap(const BudgetScenario& s) {
  s.validate();
  detail::require_budget(s.beta_w);
  const auto& subs = detail::require_partition(s);
  double h_fed = 0.0;
  double hy = 0.0;
  for (const auto& sub : subs) {
    h_fed += sub.p * sub.h;
    hy += sub.p * sub.sum_hy;
  }
  return Cap::from_raw(std::min(h_fed / s.beta_w, 1.0 - hy / s.beta_w));
}

/// I(Theta_0; K) = h_gen - h_fed.
inline double partition_entropy_gap(double h_gen, double h_fed) {
  const double gap = h_gen - h_fed;
  if (gap < -1e-12) {
    throw Error(ErrorKind::NegativeGap, "h_fed exceeds h_gen by " + std::to_string(-gap) +
                                            "; the partition is inconsistent");
  }
  return std::max(gap, 0.0);
}

enum class Regime { PriorLimited, BudgetLimited, Crossover };

inline std::string to_string(Regime r) {
  switch (r) {
    case Regime::PriorLimited: return "prior_limited";
    case Regime::BudgetLimited: return "budget_limited";
    case Regime::Crossover: return "crossover";
  }
  return "unknown";
}

struct RegimeThresholds {
  double lo = 0.1;
  double hi = 10.0;
};

struct RegimeClass {
  Regime regime = Regime::Crossover;
  double ratio = 0.0;  // beta_w / h
};

inline RegimeClass regime_classify(double beta_w, double h, RegimeThresholds thresholds = {}) {
  if (!(h > 0.0)) throw Error(ErrorKind::ZeroPriorEntropy, "regime needs h > 0");
  if (!(thresholds.lo < thresholds.hi)) {
    throw Error(ErrorKind::InvalidConfig, "regime thresholds must satisfy lo < hi");
  }
  const double ratio = beta_w / h;
  if (ratio > thresholds.hi) return {Regime::PriorLimited, ratio};
  if (ratio < thresholds.lo) return {Regime::BudgetLimited, ratio};
  return {Regime::Crossover, ratio};
}

/// Scenario implied by a finished ledger: W_tot is the work actually spent and
/// the erasure term is the entropy that was actually stored.
inline BudgetScenario scenario_from_ledger(const WorkLedger& ledger, double h0) {
  BudgetScenario s;
  s.h0 = h0;
  s.beta_w = ledger.budget_spent;
  s.sum_hy = total_stored_entropy(ledger);
  return s;
}

struct BoundCheck {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  bool passed = true;
  std::string relation;  // how observed compares to bound, e.g. ">=" or "<="
};

/// Checks a ledger against the per-round work bound, the summed work bound,
/// the efficiency cap and the unpartitioned information cap.
inline std::vector<BoundCheck> check_ledger(const WorkLedger& ledger, double h0,
                                            double tol = 1e-10) {
  std::vector<BoundCheck> out;
  double sum_bound = 0.0;
  double sum_info = 0.0;
  bool per_round_ok = true;
  double worst_slack = 0.0;
  double spent = 0.0;
  for (const auto& r : ledger.records) {
    const double lb = r.info_gain + r.stored_entropy;
    const double slack = r.work() - lb;
    if (slack < -tol) per_round_ok = false;
    worst_slack = r.round_index == 1 ? slack : std::min(worst_slack, slack);
    sum_bound += lb;
    sum_info += r.info_gain;
    spent += r.work();
  }
  out.push_back({"round_work_bound", worst_slack, 0.0, per_round_ok, "min(W_t - (I_t + H(S_t))) >="});
  out.push_back({"cumulative_work_bound", spent, sum_bound, spent >= sum_bound - tol, ">="});
  out.push_back({"ledger_consistency", ledger.budget_spent, spent,
                 std::abs(ledger.budget_spent - spent) <= tol, "=="});
  out.push_back({"budget_respected", ledger.budget_spent, ledger.budget_total,
                 ledger.budget_spent <= ledger.budget_total + kBudgetSlack, "<="});

  if (ledger.budget_spent > 0.0) {
    const double eta = sum_info / ledger.budget_spent;
    const double cap = sum_bound > 0.0 ? sum_info / sum_bound : 0.0;
    out.push_back({"efficiency_cap", eta, cap, eta <= cap + tol && cap <= 1.0 + tol, "<="});
  } else {
    out.push_back({"efficiency_cap", 0.0, 0.0, true, "n/a (no work spent)"});
  }

  const Cap info_cap = unpartitioned_info_cap(scenario_from_ledger(ledger, h0));
  out.push_back({"unpartitioned_info_cap", sum_info, info_cap.value,
                 sum_info <= info_cap.value + tol, "<="});
  return out;
}

}  // namespace thermosci
