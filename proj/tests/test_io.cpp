#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "thermosci/io.hpp"

using namespace thermosci;
using nlohmann::json;

namespace {

EnvironmentModel two_probe_env() {
  return EnvironmentModel(DiscreteDistribution({0.4, 0.3, 0.2, 0.1}),
                          LikelihoodModel({{{0.9, 0.1}, {0.9, 0.1}, {0.1, 0.9}, {0.1, 0.9}},
                                           {{0.8, 0.2}, {0.2, 0.8}, {0.8, 0.2}, {0.2, 0.8}}}));
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no thermosci::Error thrown";
  return ErrorKind::InvalidConfig;
}

}  // namespace

TEST(EnvironmentJson, RoundTrip) {
  const auto env = two_probe_env();
  const auto back = io::environment_from_json(io::environment_to_json(env));
  EXPECT_EQ(back.intervention_count(), 2u);
  EXPECT_EQ(back.likelihood()(1, 2, 0), 0.8);
  EXPECT_NEAR(back.prior()[3], 0.1, 1e-15);
}

TEST(EnvironmentJson, MissingAndMismatchedFields) {
  EXPECT_EQ(kind_of([] { io::environment_from_json(json{{"prior", {0.5, 0.5}}}); }), ErrorKind::MalformedInput);
  const json bad{{"prior", {0.5, 0.5}}, {"interventions", 2}, {"likelihood", {{{1.0, 0.0}, {0.0, 1.0}}}}};
  EXPECT_EQ(kind_of([&] { io::environment_from_json(bad); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([] { io::parse_json("{nope", "test"); }), ErrorKind::MalformedInput);
}

TEST(LedgerJson, RoundTripInBitsAndNats) {
  EpisodeLimits lim;
  lim.max_rounds = 3;
  const auto r = run_episode(two_probe_env(), policy::GreedyInfoMax{}, CostModel{1.2, 1.0, 0.05}, 5.0,
                             ExpectedMode{}, std::nullopt, lim);
  for (Units u : {Units::Nats, Units::Bits}) {
    const auto j = io::ledger_to_json(r, "expected", u);
    EXPECT_EQ(j.at("units"), to_string(u));
    const auto back = io::ledger_from_json(json::parse(j.dump()));
    ASSERT_EQ(back.ledger.records.size(), r.ledger.records.size());
    EXPECT_NEAR(back.ledger.budget_spent, r.ledger.budget_spent, 1e-14);
    EXPECT_EQ(back.ledger.stop_reason, r.ledger.stop_reason);
    for (std::size_t t = 0; t < r.ledger.records.size(); ++t) {
      EXPECT_NEAR(back.ledger.records[t].info_gain, r.ledger.records[t].info_gain, 1e-14);
      EXPECT_EQ(back.ledger.records[t].intervention, r.ledger.records[t].intervention);
    }
    for (const auto& c : check_ledger(back.ledger, back.summary.initial_entropy)) EXPECT_TRUE(c.passed) << c.name;
  }
}

TEST(LedgerJson, EfficiencyNullWithoutWork) {
  const auto r = run_episode(two_probe_env(), policy::RoundRobin{}, CostModel{}, 0.0, ExpectedMode{});
  EXPECT_TRUE(io::ledger_to_json(r, "expected").at("efficiency").is_null());
}

TEST(ScenarioJson, RoundTrip) {
  BudgetScenario s{1.0, 2.0, 0.5, std::vector<SubdomainBudget>{{0.5, 0.6, 2.0, 0.3}, {0.5, 0.4, 2.0, 0.7}}};
  const auto back = io::scenario_from_json(json::parse(io::scenario_to_json(s).dump()));
  ASSERT_TRUE(back.subdomains);
  EXPECT_EQ(federated_info_cap(back).value, federated_info_cap(s).value);
  const auto flat = io::scenario_from_json(json{{"h0", 1.0}, {"beta_w", 2.0}, {"sum_hy", 0.1}, {"subdomains", nullptr}});
  EXPECT_FALSE(flat.subdomains);
}

TEST(PartitionJson, RoundTrip) {
  const json j{{"masses", {0.5, 0.5}},
               {"conditional_priors", {{0.5, 0.5, 0.0, 0.0}, {0.0, 0.0, 0.5, 0.5}}},
               {"entropies", nullptr},
               {"budgets", {1.0, 3.0}}};
  const auto p = io::partition_from_json(j);
  EXPECT_NEAR(h_fed(p), std::log(2.0), 1e-15);
  EXPECT_EQ(p.total_budget(), 2.0);
  const auto back = io::partition_from_json(json::parse(io::partition_to_json(p).dump()));
  EXPECT_EQ(h_fed(back), h_fed(p));
  EXPECT_EQ(h_gen(back), h_gen(p));
  const json entropies_only{{"masses", {0.5, 0.5}}, {"conditional_priors", nullptr}, {"entropies", {1.0, 2.0}},
                            {"budgets", {1.0, 1.0}}};
  EXPECT_EQ(h_fed(io::partition_from_json(entropies_only)), 1.5);
}

TEST(GridCsv, NineDigitsAndFixedPoint) {
  const auto preset = toy::panel_preset('D');
  auto axes = preset.axes;
  axes.omega.steps = 40;
  axes.second.steps = 15;
  const auto g = toy::sweep(preset.pair, preset.params, axes);
  const auto csv = io::grid_to_csv(g);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), io::kGridCsvHeader);
  const auto t = io::grid_from_csv(csv);
  ASSERT_EQ(t.nx(), 40u);
  ASSERT_EQ(t.ny(), 15u);
  EXPECT_TRUE(t.omega_log);
  EXPECT_FALSE(t.axis2_log);
  for (std::size_t k = 0; k < t.values.size(); ++k) {
    EXPECT_EQ(io::format_g9(t.values[k]), io::format_g9(g.values[k]));
  }
  const auto from_csv = io::zero_contours(t);
  ASSERT_EQ(from_csv.size(), g.contours.size());
  ASSERT_EQ(from_csv[0].size(), g.contours[0].size());
  for (std::size_t k = 0; k < from_csv[0].size(); ++k) {
    EXPECT_NEAR(from_csv[0][k].x, g.contours[0][k].x, 1e-6 * g.contours[0][k].x);
    EXPECT_NEAR(from_csv[0][k].y, g.contours[0][k].y, 1e-6);
  }
}

TEST(GridCsv, Malformed) {
  EXPECT_EQ(kind_of([] { io::grid_from_csv(""); }), ErrorKind::MalformedInput);
  EXPECT_EQ(kind_of([] { io::grid_from_csv("a,b,c\n1,2,3\n"); }), ErrorKind::MalformedInput);
  const std::string h = std::string(io::kGridCsvHeader) + "\n";
  EXPECT_EQ(kind_of([&] { io::grid_from_csv(h); }), ErrorKind::MalformedInput);
  EXPECT_EQ(kind_of([&] { io::grid_from_csv(h + "1,1,0.5,0.5\n"); }), ErrorKind::MalformedInput);
  EXPECT_EQ(kind_of([&] { io::grid_from_csv(h + "1,1,0.5,0.5,x\n"); }), ErrorKind::MalformedInput);
  EXPECT_EQ(kind_of([&] { io::grid_from_csv(h + "1,1,0,0,0\n2,1,0,0,0\n1,2,0,0,0\n"); }), ErrorKind::MalformedInput);
  EXPECT_NO_THROW(io::grid_from_csv(h + "1,1,0,0,0\r\n2,1,0,0,0\r\n1,2,0,0,0\r\n2,2,0,0,0\r\n"));
}

TEST(ContoursJson, RoundTrip) {
  const std::vector<Polyline> lines{{{0.1, 1.0}, {0.2, 2.0}}, {{1.0, 1.0}, {2.0, 1.0}, {1.0, 1.0}}};
  const auto j = io::contours_to_json("fed-gen", lines, io::params_to_json(toy::ToyParams::asymmetric()));
  EXPECT_EQ(j.at("pair"), "fed-gen");
  EXPECT_EQ(j.at("params").at("alpha_gen"), 0.8);
  const auto back = io::contours_from_json(json::parse(j.dump()));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].size(), 3u);
  EXPECT_EQ(back[0][1].x, 0.2);
  EXPECT_EQ(kind_of([] { io::contours_from_json(json::object()); }), ErrorKind::MalformedInput);
}

TEST(Svg, HasMarkerAndContours) {
  const auto preset = toy::panel_preset('D');
  auto axes = preset.axes;
  axes.omega.steps = 20;
  axes.second.steps = 10;
  const auto svg = io::grid_to_svg(toy::sweep(preset.pair, preset.params, axes), "panel D");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}
