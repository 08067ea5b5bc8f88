#include <gtest/gtest.h>

#include "dirac_bounds/channel.hpp"
#include "dirac_bounds/errors.hpp"

using namespace dirac_bounds;

TEST(Channel, DerivedQuantitiesSpinGround) {
  const auto p = derive(Channel{});
  EXPECT_DOUBLE_EQ(p.k_d, 1.0);
  EXPECT_DOUBLE_EQ(p.kappa, 1.0);
  EXPECT_DOUBLE_EQ(p.mu, 1.0);
  EXPECT_DOUBLE_EQ(p.L, 1.0);
  EXPECT_DOUBLE_EQ(p.centrifugal(), 2.0);
}

TEST(Channel, PseudoFlipsSigns) {
  const auto p = derive(Channel{3, 1, 1, Symmetry::pseudo, 0, 2.0});
  EXPECT_DOUBLE_EQ(p.kappa, -1.0);
  EXPECT_DOUBLE_EQ(p.mu, -2.0);
  EXPECT_DOUBLE_EQ(p.L, 0.0);
  EXPECT_DOUBLE_EQ(p.centrifugal(), 0.0);
}

TEST(Channel, EffectiveLSatisfiesCentrifugalIdentity) {
  for (int d : {2, 3, 4, 5}) {
    for (int j2 : {1, 3, 5}) {
      for (int tau : {1, -1}) {
        for (auto mode : {Symmetry::spin, Symmetry::pseudo}) {
          const auto p = derive(Channel{d, j2, tau, mode, 0, 1.0});
          EXPECT_GE(p.L, -0.5);  // d = 2, kappa = -1/2 sits at L = -1/2
          EXPECT_NEAR(p.L * (p.L + 1.0), p.centrifugal(), 1e-12);
        }
      }
    }
  }
}

TEST(Channel, DimensionShiftsKd) {
  EXPECT_DOUBLE_EQ(derive(Channel{2, 1, 1}).k_d, 0.5);
  EXPECT_DOUBLE_EQ(derive(Channel{4, 3, -1}).k_d, -2.5);
}

TEST(Channel, ValidationRejectsBadInput) {
  EXPECT_THROW(validate(Channel{0}), DomainError);
  EXPECT_THROW(validate(Channel{3, 2}), DomainError);
  EXPECT_THROW(validate(Channel{3, 1, 0}), DomainError);
  EXPECT_THROW(validate(Channel{3, 1, 1, Symmetry::spin, -1}), DomainError);
  EXPECT_THROW(validate(Channel{3, 1, 1, Symmetry::spin, 0, -1.0}), DomainError);
  EXPECT_NO_THROW(validate(Channel{3, 1, 1, Symmetry::spin, 0, 0.0}));
}

TEST(Channel, SymmetryParsing) {
  EXPECT_EQ(parse_symmetry("spin"), Symmetry::spin);
  EXPECT_EQ(parse_symmetry("pseudo"), Symmetry::pseudo);
  EXPECT_THROW((void)parse_symmetry("both"), UsageError);
  EXPECT_EQ(to_string(Symmetry::pseudo), "pseudo");
  EXPECT_EQ(flipped(Symmetry::spin), Symmetry::pseudo);
}

TEST(Channel, PrincipalQuantumNumbers) {
  EXPECT_DOUBLE_EQ(principal_quantum(0, 1.0, SpectrumFamily::coulomb_like), 2.0);
  EXPECT_DOUBLE_EQ(principal_quantum(1, 1.0, SpectrumFamily::oscillator), 9.0);
  EXPECT_THROW((void)parse_family("quartic"), UsageError);
}
