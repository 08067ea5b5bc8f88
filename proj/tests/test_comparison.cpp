#include <gtest/gtest.h>

#include <sstream>

#include "dirac_bounds/comparison.hpp"

using namespace dirac_bounds;

TEST(Comparison, PointwiseOrder) {
  EXPECT_TRUE(pointwise_order(Coulomb{2.0}, Coulomb{1.0}).ordered);
  EXPECT_FALSE(pointwise_order(Coulomb{1.0}, Coulomb{2.0}).ordered);
  EXPECT_FALSE(pointwise_order(Oscillator{1.0}, Linear{1.0}).ordered);
  EXPECT_TRUE(pointwise_order(Log{1.0}, Oscillator{1.0}).ordered);
}

TEST(Comparison, OrderedCoulombPair) {
  const auto report = verify_ordering(Coulomb{2.0}, Coulomb{1.0}, standard_channels());
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.method, EnergyMethod::exact);
  EXPECT_EQ(report.count(CaseStatus::pass), 6);
  for (const auto& c : report.channels) EXPECT_GE(c.margin, 0.0);
}

TEST(Comparison, NotComparableRaised) {
  EXPECT_THROW((void)verify_ordering(Oscillator{1.0}, Linear{1.0}, standard_channels()), NotComparable);
}

TEST(Comparison, MissingStatesAreSkipped) {
  // Pseudo-spin Coulomb needs v < 0; with v > 0 there is nothing to compare.
  const auto report = verify_ordering(Coulomb{2.0}, Coulomb{1.0}, standard_channels(Symmetry::pseudo));
  EXPECT_EQ(report.count(CaseStatus::skipped), 6);
  EXPECT_TRUE(report.passed());
}

TEST(Comparison, FaultyEvaluatorIsCaught) {
  const auto report =
      verify_ordering(Coulomb{2.0}, Coulomb{1.0}, standard_channels(), faulty_evaluator(standard_evaluator()));
  EXPECT_FALSE(report.passed());
  EXPECT_EQ(report.violations().size(), 6u);
}

TEST(Comparison, BuiltinCorpusPasses) {
  const auto corpus = builtin_corpus();
  EXPECT_GE(corpus.size(), 12u);
  for (const auto& cs : corpus) {
    EXPECT_TRUE(verify_ordering(cs.V1, cs.V2, cs.channels).passed()) << cs.name;
  }
}

TEST(Comparison, FamilyScanMonotone) {
  const auto scan = family_scan(Coulomb{2.0}, Coulomb{1.0}, Channel{}, 5);
  EXPECT_TRUE(scan.monotone);
  EXPECT_NEAR(scan.energies.front(), 0.0, 1e-12);
  EXPECT_NEAR(scan.energies.back(), 0.6, 1e-12);
  const auto oracle_scan = family_scan(Log{1.0}, shifted_potential(Log{1.0}, 0.1), Channel{}, 3);
  EXPECT_TRUE(oracle_scan.monotone);
}

TEST(Comparison, DerivativeSignCheck) {
  const auto fam = interpolation_family(Coulomb{2.0}, Coulomb{1.0});
  EXPECT_EQ(derivative_sign(fam, 0.5), 1);
  const auto check = derivative_sign_check(fam, {0.25, 0.75}, Channel{});
  EXPECT_TRUE(check.passed());
  const auto crossing = interpolation_family(Oscillator{1.0}, Linear{1.0});
  EXPECT_THROW((void)derivative_sign(crossing, 0.5), NotApplicable);
}

TEST(Comparison, ShiftedPotentialKeepsFamilies) {
  EXPECT_TRUE(std::holds_alternative<ShiftedCoulomb>(shifted_potential(Coulomb{1.0}, 0.2)));
  EXPECT_TRUE(std::holds_alternative<Kratzer>(shifted_potential(Kratzer{0.1, 1.0, 0.0}, 0.2)));
  const auto V = shifted_potential(Log{1.0}, 0.1);
  EXPECT_NEAR(evaluate(V, 2.0), std::log(2.0) + 0.1, 1e-14);
}

TEST(Comparison, ParsePotential) {
  EXPECT_TRUE(std::holds_alternative<Coulomb>(parse_potential("coulomb:v=2")));
  const auto k = std::get<Kratzer>(parse_potential("kratzer:a=0.1,v=1,c=0.2"));
  EXPECT_DOUBLE_EQ(k.a, 0.1);
  EXPECT_DOUBLE_EQ(k.c, 0.2);
  EXPECT_THROW((void)parse_potential("coulomb:v=x"), UsageError);
  EXPECT_THROW((void)parse_potential("coulomb:w=1"), UsageError);
  EXPECT_THROW((void)parse_potential("morse:v=1"), UsageError);
}

TEST(Comparison, ParseCorpus) {
  std::istringstream in(
      "# pairs\n"
      "a coulomb:v=2 coulomb:v=1\n"
      "\n"
      "b coulomb:v=-1 coulomb:v=-2 mode=pseudo nu_max=1\n");
  const auto corpus = parse_corpus(in);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus[1].channels.size(), 4u);
  EXPECT_EQ(corpus[1].channels[0].mode, Symmetry::pseudo);
  std::istringstream bad("x coulomb:v=1\n");
  EXPECT_THROW((void)parse_corpus(bad), UsageError);
  std::istringstream bad_opt("x coulomb:v=2 coulomb:v=1 colour=red\n");
  EXPECT_THROW((void)parse_corpus(bad_opt), UsageError);
}
