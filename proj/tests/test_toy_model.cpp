#include <gtest/gtest.h>

#include <cmath>

#include "thermosci/toy_model.hpp"

using namespace thermosci;
using namespace thermosci::toy;

TEST(EtaToy, Branches) {
  EXPECT_NEAR(eta_toy(10, 1, 0.3), 0.1, 1e-15);
  EXPECT_NEAR(eta_toy(0.01, 1, 0.3), 1.0 / 1.3, 1e-15);
  EXPECT_NEAR(eta_toy(0.01, 1, 0.3), 0.769231, 1e-6);
  const double w = crossover_omega(0.4, 0.25);
  EXPECT_NEAR(0.4 / w, 1.0 / 1.25, 1e-15);
  EXPECT_NEAR(eta_toy(w, 0.4, 0.25), 1.0 / 1.25, 1e-15);
}

TEST(EtaToy, RejectsBadInputs) {
  EXPECT_THROW(eta_toy(0, 1, 0.3), Error);
  EXPECT_THROW(eta_toy(-1, 1, 0.3), Error);
  EXPECT_THROW(eta_toy(1, 0, 0.3), Error);
  EXPECT_THROW(eta_toy(1, 1.5, 0.3), Error);
  EXPECT_THROW(eta_toy(1, 1, -0.1), Error);
}

TEST(CFed, Law) {
  EXPECT_EQ(c_fed(1, 0.05, 1), 1.0);
  EXPECT_NEAR(c_fed(4, 0.05, 1), 0.2875, 1e-15);
  EXPECT_NEAR(c_fed(1e9, 0.05, 1), 0.05, 1e-8);
  EXPECT_LT(c_fed(5, 0.05, 2), c_fed(5, 0.05, 1));
  EXPECT_THROW(c_fed(0.5, 0.05, 1), Error);
}

TEST(Crossover, Examples) {
  EXPECT_NEAR(crossover_omega(1, 0.3), 1.3, 1e-15);
  EXPECT_NEAR(crossover_omega(0.05, 0.2), 0.06, 1e-15);
  EXPECT_EQ(crossover_omega(0.7, 0.0), 0.7);
}

TEST(DeltaEta, SymmetricSpecNeverBeatsGen) {
  const auto p = ToyParams::symmetric();
  for (double w : {0.01, 0.1, 0.5, 1.0, 3.0, 50.0}) {
    for (double c : {0.05, 0.3, 0.99}) EXPECT_LE(delta_eta(Pair::SpecGen, w, p, c), 0.0);
  }
}

TEST(DeltaEta, AsymmetricCeilingGap) {
  EXPECT_NEAR(delta_eta(Pair::SpecGen, 0.01, ToyParams::asymmetric(), 0.5), 1.0 / 1.2 - 1.0 / 1.8, 1e-15);
  EXPECT_NEAR(delta_eta(Pair::SpecGen, 0.01, ToyParams::asymmetric(), 0.5), 0.277778, 1e-6);
}

TEST(DeltaEta, FedAtOneIsGen) {
  const auto p = ToyParams::symmetric();
  for (double w : {0.01, 1.0, 100.0}) EXPECT_EQ(delta_eta(Pair::FedGen, w, p, 1.0), 0.0);
}

TEST(DeltaEta, FedSpecUsesMinimalSpecialist) {
  const auto p = ToyParams::asymmetric();
  const auto e = pair_etas(Pair::FedSpec, 2.0, p, 4.0);
  EXPECT_EQ(e.first, eta_toy(2.0, c_fed(4.0, 0.05, 1.0), 0.4));
  EXPECT_EQ(e.second, eta_toy(2.0, 0.05, 0.2));
}

TEST(Sweep, SymmetricFedGenNeverPositive) {
  const auto p = ToyParams::symmetric();
  const auto g = sweep(Pair::FedGen, p, SweepAxes::default_for(Pair::FedGen, p));
  ASSERT_EQ(g.nx(), 200u);
  ASSERT_EQ(g.ny(), 100u);
  EXPECT_EQ(g.omega.front(), 1e-2);
  EXPECT_EQ(g.omega.back(), 1e2);
  EXPECT_EQ(g.axis2.front(), 1.0);
  EXPECT_EQ(g.axis2.back(), 20.0);
  for (double v : g.values) EXPECT_LE(v, 1e-15);
  for (std::size_t i = 0; i < g.nx(); ++i) EXPECT_EQ(g.at(i, 0), 0.0);
  EXPECT_TRUE(g.contours.empty());
}

TEST(Sweep, AsymmetricSpecGenBand) {
  const auto p = ToyParams::asymmetric();
  const auto g = sweep(Pair::SpecGen, p, SweepAxes::default_for(Pair::SpecGen, p));
  EXPECT_EQ(g.axis2.front(), 0.05);
  for (std::size_t j = 0; j < g.ny(); ++j) EXPECT_NEAR(g.at(0, j), 1.0 / 1.2 - 1.0 / 1.8, 1e-15);
}

TEST(Sweep, IdenticalStrategiesGiveZeroGrid) {
  ToyParams p = ToyParams::symmetric();
  SweepAxes a = SweepAxes::default_for(Pair::SpecGen, p);
  a.second = AxisSpec{1.0 - 1e-12, 1.0, 3, Scale::Linear};
  const auto g = sweep(Pair::SpecGen, p, a);
  for (std::size_t i = 0; i < g.nx(); ++i) EXPECT_EQ(g.at(i, g.ny() - 1), 0.0);
}

TEST(Sweep, ThreadCountDoesNotChangeValues) {
  const auto preset = panel_preset('D');
  const auto a = sweep(preset.pair, preset.params, preset.axes, 1);
  const auto b = sweep(preset.pair, preset.params, preset.axes, 4);
  EXPECT_EQ(a.values, b.values);
}

TEST(Sweep, IntegerN) {
  auto p = ToyParams::symmetric();
  auto a = SweepAxes::default_for(Pair::FedGen, p);
  a.second.steps = 7;
  a.integer_n = true;
  const auto g = sweep(Pair::FedGen, p, a);
  for (double n : g.axis2) EXPECT_EQ(n, std::round(n));
}

TEST(Sweep, AxisValidation) {
  const auto p = ToyParams::symmetric();
  auto a = SweepAxes::default_for(Pair::FedGen, p);
  a.omega.steps = 1;
  EXPECT_THROW(sweep(Pair::FedGen, p, a), Error);
  a = SweepAxes::default_for(Pair::FedGen, p);
  a.second.min = 0.5;
  EXPECT_THROW(sweep(Pair::FedGen, p, a), Error);
  a = SweepAxes::default_for(Pair::SpecGen, p);
  a.second.min = 0.01;
  EXPECT_THROW(sweep(Pair::SpecGen, p, a), Error);
  EXPECT_THROW(sweep(Pair::FedGen, p, SweepAxes::default_for(Pair::SpecGen, p)), Error);
  a = SweepAxes::default_for(Pair::FedGen, p);
  a.omega.min = 0.0;
  EXPECT_THROW(sweep(Pair::FedGen, p, a), Error);
}

TEST(Sweep, PanelDBoundary) {
  const auto preset = panel_preset('D');
  const auto g = sweep(preset.pair, preset.params, preset.axes);
  ASSERT_EQ(g.contours.size(), 1u);
  EXPECT_GT(delta_eta(Pair::FedGen, 0.4, preset.params, 4.0), 0.0);
  EXPECT_LT(delta_eta(Pair::FedGen, 0.6, preset.params, 4.0), 0.0);
  const double step = std::log(g.omega[1] / g.omega[0]);
  for (const auto& pt : g.contours.front()) {
    const double star = 1.8 * c_fed(pt.y, 0.05, 1.0);
    const double dn = g.axis2[1] - g.axis2[0];
    const double hi = 1.8 * c_fed(std::max(1.0, pt.y - dn), 0.05, 1.0);
    const double lo = 1.8 * c_fed(pt.y + dn, 0.05, 1.0);
    EXPECT_GE(std::log(pt.x), std::log(lo) - step) << "omega*=" << star;
    EXPECT_LE(std::log(pt.x), std::log(hi) + step) << "omega*=" << star;
  }
}

TEST(Panels, Presets) {
  EXPECT_EQ(panel_preset('A').pair, Pair::SpecGen);
  EXPECT_EQ(panel_preset('C').pair, Pair::FedGen);
  EXPECT_EQ(panel_preset('F').pair, Pair::FedSpec);
  EXPECT_EQ(panel_preset('B').params.alpha_gen, 0.8);
  EXPECT_EQ(panel_preset('E').params.alpha_spec, 0.3);
  EXPECT_EQ(panel_preset('D').regime, "asymmetric");
  EXPECT_THROW(panel_preset('G'), Error);
  EXPECT_EQ(parse_pair("fed-spec"), Pair::FedSpec);
  EXPECT_THROW(parse_pair("gen-fed"), Error);
}

TEST(Params, Validation) {
  ToyParams p;
  p.c_min = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = ToyParams{};
  p.c_spec = 0.01;
  EXPECT_THROW(p.validate(), Error);
  p = ToyParams{};
  p.gamma = -1;
  EXPECT_THROW(p.validate(), Error);
}
