#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "thermosci/bounds.hpp"

using namespace thermosci;

namespace {

BudgetScenario flat(double h0, double beta_w, double sum_hy) { return {h0, beta_w, sum_hy, std::nullopt}; }

BudgetScenario two_way(std::vector<SubdomainBudget> subs) {
  BudgetScenario s;
  for (const auto& x : subs) {
    s.beta_w += x.p * x.beta_w;
    s.sum_hy += x.p * x.sum_hy;
  }
  s.h0 = 2.0;
  s.subdomains = std::move(subs);
  return s;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no thermosci::Error thrown";
  return ErrorKind::MalformedInput;
}

}  // namespace

TEST(InfoCap, PriorAndBudgetLimited) {
  EXPECT_EQ(unpartitioned_info_cap(flat(2, 10, 3)).value, 2.0);
  EXPECT_EQ(unpartitioned_info_cap(flat(2, 1, 0.5)).value, 0.5);
  EXPECT_EQ(unpartitioned_info_cap(flat(2, 1.5, 1.5)).value, 0.0);
  EXPECT_FALSE(unpartitioned_info_cap(flat(2, 1.5, 1.5)).floored);
}

TEST(InfoCap, NegativeRawValueIsFlooredAndFlagged) {
  const Cap c = unpartitioned_info_cap(flat(2, 1, 3));
  EXPECT_EQ(c.value, 0.0);
  EXPECT_TRUE(c.floored);
}

TEST(EtaCap, Examples) {
  EXPECT_NEAR(unpartitioned_eta_cap(flat(2, 10, 3)).value, 0.2, 1e-15);
  EXPECT_EQ(unpartitioned_eta_cap(flat(3, 2, 0)).value, 1.0);
  EXPECT_NEAR(unpartitioned_eta_cap(flat(1, 0.5, 0.4)).value, 0.2, 1e-15);
  EXPECT_EQ(kind_of([] { unpartitioned_eta_cap(flat(1, 0, 0)); }), ErrorKind::ZeroBudget);
}

TEST(SubdomainCap, Examples) {
  EXPECT_EQ(per_subdomain_cap(0.5, 1, 5, 1).value, 1.0);
  EXPECT_EQ(per_subdomain_cap(0.5, 1, 0, 0).value, 0.0);
  EXPECT_EQ(per_subdomain_cap(0.5, 0, 5, 1).value, 0.0);
}

TEST(FederatedInfoCap, WeightedMean) {
  const auto s = two_way({{0.5, 1, 3, 0}, {0.5, 2, 3, 0}});
  EXPECT_NEAR(federated_info_cap(s).value, 1.5, 1e-15);
}

TEST(FederatedInfoCap, DegenerateMassPicksOneSubdomain) {
  const auto s = two_way({{1.0, 1.2, 3, 0.5}, {0.0, 2, 0, 0}});
  EXPECT_EQ(federated_info_cap(s).value, per_subdomain_cap(1.0, 1.2, 3, 0.5).value);
}

TEST(FederatedInfoCap, HandEvaluation) {
  const auto s = two_way({{0.5, 1, 0.4, 0.1}, {0.5, 1, 2, 0.5}});
  EXPECT_NEAR(federated_info_cap(s).value, 0.5 * 0.3 + 0.5 * 1.0, 1e-15);
  EXPECT_NEAR(federated_info_cap(s).value, 0.65, 1e-15);
}

TEST(FederatedInfoCap, NeedsPartition) {
  EXPECT_EQ(kind_of([] { federated_info_cap(flat(1, 1, 0)); }), ErrorKind::MissingPartition);
}

TEST(FederatedEtaCap, Examples) {
  BudgetScenario s;
  s.h0 = 2.0;
  s.beta_w = 4.0;
  s.sum_hy = 1.0;
  s.subdomains = std::vector<SubdomainBudget>{{0.5, 1, 4, 1}, {0.5, 3, 4, 1}};
  EXPECT_NEAR(federated_eta_cap(s).value, 0.5, 1e-15);

  s.subdomains = std::vector<SubdomainBudget>{{0.5, 0, 4, 1}, {0.5, 0, 4, 1}};
  EXPECT_EQ(federated_eta_cap(s).value, 0.0);
}

TEST(FederatedEtaCap, TrivialPartitionIsUnpartitioned) {
  BudgetScenario s = flat(1.7, 3.1, 0.9);
  s.subdomains = std::vector<SubdomainBudget>{{1.0, 1.7, 3.1, 0.9}};
  EXPECT_EQ(federated_eta_cap(s).value, unpartitioned_eta_cap(flat(1.7, 3.1, 0.9)).value);
}

TEST(FederatedInfoCap, EqualEntropiesEqualBudgetsMatchPooled) {
  // Every subdomain sits in the same branch of the min, so the mean of caps is
  // the cap of the pooled scenario.
  BudgetScenario s = flat(1.4, 3.0, 0.6);
  s.subdomains = std::vector<SubdomainBudget>{{0.2, 1.4, 3.0, 0.6}, {0.5, 1.4, 3.0, 0.6}, {0.3, 1.4, 3.0, 0.6}};
  EXPECT_NEAR(federated_info_cap(s).value, unpartitioned_info_cap(flat(1.4, 3.0, 0.6)).value, 1e-15);
}

TEST(Scenario, ValidationRejectsInconsistentBudgets) {
  BudgetScenario s = flat(1, 2, 0);
  s.subdomains = std::vector<SubdomainBudget>{{0.5, 1, 1, 0}, {0.5, 1, 1, 0}};
  EXPECT_EQ(kind_of([&] { s.validate(); }), ErrorKind::InvalidScenario);
  s.subdomains = std::vector<SubdomainBudget>{{0.5, 1, 2, 0}, {0.4, 1, 2, 0}};
  EXPECT_EQ(kind_of([&] { s.validate(); }), ErrorKind::InvalidScenario);
  EXPECT_EQ(kind_of([] { flat(-1, 1, 0).validate(); }), ErrorKind::InvalidScenario);
}

TEST(Gap, Examples) {
  EXPECT_EQ(partition_entropy_gap(1.3, 1.3), 0.0);
  EXPECT_NEAR(partition_entropy_gap(std::log(4.0), std::log(2.0)), std::numbers::ln2, 1e-15);
  EXPECT_EQ(partition_entropy_gap(1.0, 1.0 + 1e-13), 0.0);
  EXPECT_EQ(kind_of([] { partition_entropy_gap(1.0, 1.1); }), ErrorKind::NegativeGap);
}

TEST(Regime, Classification) {
  EXPECT_EQ(regime_classify(100, 1).regime, Regime::PriorLimited);
  EXPECT_EQ(regime_classify(0.01, 1).regime, Regime::BudgetLimited);
  const auto mid = regime_classify(1.5, 1.5);
  EXPECT_EQ(mid.regime, Regime::Crossover);
  EXPECT_EQ(mid.ratio, 1.0);
  EXPECT_EQ(regime_classify(10, 1).regime, Regime::Crossover);
  EXPECT_EQ(regime_classify(0.1, 1).regime, Regime::Crossover);
  EXPECT_EQ(regime_classify(5, 1, {0.5, 2}).regime, Regime::PriorLimited);
  EXPECT_EQ(kind_of([] { regime_classify(1, 0); }), ErrorKind::ZeroPriorEntropy);
}

TEST(CheckLedger, FlagsUndercharging) {
  WorkLedger l;
  RoundRecord r;
  r.round_index = 1;
  r.info_gain = 0.5;
  r.stored_entropy = 0.5;
  r.work_meas = 0.5;
  r.work_erase = 0.2;
  l.records.push_back(r);
  l.budget_spent = 0.7;
  l.budget_total = 1.0;
  l.rounds_completed = 1;
  bool round_failed = false;
  for (const auto& c : check_ledger(l, 1.0)) {
    if (c.name == "round_work_bound") round_failed = !c.passed;
  }
  EXPECT_TRUE(round_failed);
}

TEST(CheckLedger, EmptyLedgerPasses) {
  WorkLedger l;
  for (const auto& c : check_ledger(l, 1.0)) EXPECT_TRUE(c.passed) << c.name;
}
