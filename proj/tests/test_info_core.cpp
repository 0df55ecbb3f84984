#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "thermosci/info_core.hpp"

using namespace thermosci;

namespace {

constexpr double kLn2Ref = 0.6931471805599453;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no thermosci::Error thrown";
  return ErrorKind::MalformedInput;
}

LikelihoodModel binary_channel(double p1_given_0, double p1_given_1) {
  return LikelihoodModel({{{1.0 - p1_given_0, p1_given_0}, {1.0 - p1_given_1, p1_given_1}}});
}

}  // namespace

TEST(Entropy, UniformBinaryIsLn2) {
  EXPECT_NEAR(entropy(DiscreteDistribution::uniform(2)).value, kLn2Ref, 1e-15);
}

TEST(Entropy, PointMassIsZero) {
  EXPECT_EQ(entropy(DiscreteDistribution({1.0, 0.0})).value, 0.0);
}

TEST(Entropy, QuarterThreeQuarters) {
  const double hand = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
  EXPECT_NEAR(entropy(DiscreteDistribution({0.25, 0.75})).value, hand, 1e-15);
  EXPECT_NEAR(entropy(DiscreteDistribution({0.25, 0.75})).value, 0.562335, 1e-6);
}

TEST(Entropy, BitsConversionIsExact) {
  const auto h = entropy(DiscreteDistribution::uniform(2));
  EXPECT_NEAR(h.bits(), 1.0, 1e-15);
  EXPECT_EQ(convert(to_nats(3.0, Units::Bits), Units::Bits), 3.0 * kLn2 / kLn2);
}

TEST(Distribution, SmallSlackIsRenormalized) {
  const DiscreteDistribution d({0.5, 0.5 + 5e-10});
  EXPECT_NEAR(d[0] + d[1], 1.0, 1e-15);
}

TEST(Distribution, RejectsBadInput) {
  EXPECT_EQ(kind_of([] { DiscreteDistribution({0.5, 0.6}); }), ErrorKind::InvalidDistribution);
  EXPECT_EQ(kind_of([] { DiscreteDistribution({-0.1, 1.1}); }), ErrorKind::InvalidDistribution);
  EXPECT_EQ(kind_of([] { DiscreteDistribution(std::vector<double>{}); }), ErrorKind::InvalidDistribution);
  EXPECT_EQ(kind_of([] { DiscreteDistribution({NAN, 1.0}); }), ErrorKind::InvalidDistribution);
}

TEST(Distribution, TinyProbabilitiesCountAsZero) {
  // The 1e-16 entry contributes nothing; only the rounding of ln(1 - 1e-16) remains.
  EXPECT_NEAR(entropy(DiscreteDistribution({1e-16, 1.0 - 1e-16})).value, 0.0, 1e-15);
}

TEST(Likelihood, RejectsUnnormalizedRows) {
  EXPECT_EQ(kind_of([] { LikelihoodModel({{{0.5, 0.6}, {0.5, 0.5}}}); }), ErrorKind::InvalidLikelihood);
  EXPECT_EQ(kind_of([] { LikelihoodModel({{{0.5, 0.5}, {1.0}}}); }), ErrorKind::InvalidLikelihood);
}

TEST(Posterior, NoiselessChannelRevealsState) {
  const auto post = posterior_update(DiscreteDistribution::uniform(2), binary_channel(0.0, 1.0), 0, 0);
  EXPECT_EQ(post[0], 1.0);
  EXPECT_EQ(post[1], 0.0);
}

TEST(Posterior, UninformativeOutcomeKeepsPrior) {
  const DiscreteDistribution prior({0.2, 0.5, 0.3});
  const LikelihoodModel flat({{{0.3, 0.7}, {0.3, 0.7}, {0.3, 0.7}}});
  const auto post = posterior_update(prior, flat, 0, 1);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(post[i], prior[i], 1e-15);
}

TEST(Posterior, HandBayes) {
  const auto post = posterior_update(DiscreteDistribution::uniform(2), binary_channel(0.8, 0.4), 0, 1);
  EXPECT_NEAR(post[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(post[1], 1.0 / 3.0, 1e-15);
}

TEST(Posterior, ZeroEvidenceIsAnError) {
  EXPECT_EQ(kind_of([] {
              posterior_update(DiscreteDistribution({1.0, 0.0}), binary_channel(0.0, 1.0), 0, 1);
            }),
            ErrorKind::ZeroEvidence);
}

TEST(Posterior, IndexChecks) {
  EXPECT_ANY_THROW(posterior_update(DiscreteDistribution::uniform(2), binary_channel(0.5, 0.5), 1, 0));
  EXPECT_ANY_THROW(posterior_update(DiscreteDistribution::uniform(3), binary_channel(0.5, 0.5), 0, 0));
}

TEST(Predictive, PointMassGivesSlice) {
  const auto py = predictive_outcome_dist(DiscreteDistribution::point_mass(2, 0), binary_channel(0.8, 0.4), 0);
  EXPECT_NEAR(py[1], 0.8, 1e-15);
}

TEST(Predictive, HandMarginal) {
  const auto py = predictive_outcome_dist(DiscreteDistribution({2.0 / 3.0, 1.0 / 3.0}), binary_channel(0.8, 0.4), 0);
  EXPECT_NEAR(py[1], 2.0 / 3.0 * 0.8 + 1.0 / 3.0 * 0.4, 1e-15);
  EXPECT_NEAR(py[1], 0.666667, 1e-6);
}

TEST(Eig, NoiselessAndUninformative) {
  EXPECT_NEAR(expected_information_gain(DiscreteDistribution::uniform(2), binary_channel(0.0, 1.0), 0).value,
              kLn2Ref, 1e-15);
  EXPECT_EQ(expected_information_gain(DiscreteDistribution({0.3, 0.7}), binary_channel(0.4, 0.4), 0).value, 0.0);
}

TEST(Eig, BinarySymmetricChannel) {
  const double h025 = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
  const double eig = expected_information_gain(DiscreteDistribution::uniform(2), binary_channel(0.25, 0.75), 0).value;
  EXPECT_NEAR(eig, std::numbers::ln2 - h025, 1e-15);
  EXPECT_NEAR(eig, 0.130812, 1e-6);
}

TEST(Eig, BothSidesAgree) {
  const DiscreteDistribution b({0.1, 0.6, 0.3});
  const LikelihoodModel l({{{0.2, 0.5, 0.3}, {0.7, 0.2, 0.1}, {0.1, 0.1, 0.8}}});
  EXPECT_NEAR(expected_information_gain(b, l, 0).value, expected_information_gain_posterior_side(b, l, 0).value,
              1e-13);
}

TEST(JointMi, IndependenceDiagonalAndHalves) {
  EXPECT_NEAR(mutual_information_of_joint(JointTable({{0.12, 0.28}, {0.18, 0.42}})).value, 0.0, 1e-15);
  EXPECT_NEAR(mutual_information_of_joint(JointTable({{0.5, 0.0}, {0.0, 0.5}})).value, kLn2Ref, 1e-15);
  const JointTable halves({{0.25, 0.0}, {0.25, 0.0}, {0.0, 0.25}, {0.0, 0.25}});
  EXPECT_NEAR(mutual_information_of_joint(halves).value, kLn2Ref, 1e-15);
  EXPECT_NEAR(mutual_information_of_joint(halves).value, std::log(4.0) - std::log(2.0), 1e-15);
}

TEST(JointMi, RejectsBadTables) {
  EXPECT_EQ(kind_of([] { JointTable({{0.5, 0.2}, {0.5}}); }), ErrorKind::InvalidJoint);
  EXPECT_EQ(kind_of([] { JointTable({{0.5, 0.2}, {0.5, 0.2}}); }), ErrorKind::InvalidJoint);
}

TEST(InfoQuantity, ClampsRoundingNegatives) {
  EXPECT_EQ(InfoQuantity::nonnegative(-1e-13).value, 0.0);
  EXPECT_ANY_THROW(InfoQuantity::nonnegative(-1e-6));
}
