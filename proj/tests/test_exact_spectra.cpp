#include <gtest/gtest.h>

#include <cmath>

#include "dirac_bounds/exact_spectra.hpp"

using namespace dirac_bounds;

namespace {
const Channel kSpin{};
const Channel kPseudo{3, 1, 1, Symmetry::pseudo, 0, 1.0};
}  // namespace

TEST(ExactSpectra, CoulombGround) {
  EXPECT_NEAR(coulomb_energy(1.0, kSpin).E, 0.6, 1e-14);
  // E = mu (1 - x)/(1 + x), x = v^2/P^2.
  Channel excited = kSpin;
  excited.nu = 1;
  EXPECT_NEAR(coulomb_energy(1.0, excited).E, (1.0 - 1.0 / 9.0) / (1.0 + 1.0 / 9.0), 1e-14);
  EXPECT_NEAR(coulomb_energy(-1.0, kPseudo).E, -0.0, 1e-14);
}

TEST(ExactSpectra, CoulombWrongSignHasNoSpectrum) {
  EXPECT_THROW((void)coulomb_energy(1.0, kPseudo), NoDiscreteSpectrum);
  EXPECT_THROW((void)coulomb_energy(-1.0, kSpin), NoDiscreteSpectrum);
  EXPECT_THROW((void)coulomb_energy(0.0, kSpin), NoDiscreteSpectrum);
}

TEST(ExactSpectra, ShiftedCoulomb) {
  EXPECT_NEAR(shifted_coulomb_energy(1.0, 0.5, kSpin).E, 1.4, 1e-14);
  EXPECT_NEAR(shifted_coulomb_energy(1.0, 0.0, kSpin).E, coulomb_energy(1.0, kSpin).E, 1e-14);
  EXPECT_THROW((void)shifted_coulomb_energy(1.0, -1.0, kSpin), NoDiscreteSpectrum);
}

TEST(ExactSpectra, OscillatorFrozenValues) {
  EXPECT_NEAR(oscillator_energy(1.0, kSpin).E, 4.123831404087, 1e-10);
  Channel massless = kSpin;
  massless.m = 0.0;
  EXPECT_NEAR(oscillator_energy(1.0, massless).E, std::cbrt(50.0), 1e-12);
}

TEST(ExactSpectra, OscillatorSatisfiesDefiningRelation) {
  for (double v : {0.3, 1.0, 4.0}) {
    for (int nu : {0, 1, 2}) {
      Channel ch = kSpin;
      ch.nu = nu;
      const double E = oscillator_energy(v, ch).E;
      const double P = principal_quantum(ch, SpectrumFamily::oscillator);
      EXPECT_NEAR(E * E - 1.0, P * std::sqrt(2.0 * v * (1.0 + E)), 1e-10 * E * E);
    }
  }
  EXPECT_THROW((void)oscillator_energy(0.0, kSpin), NoDiscreteSpectrum);
}

TEST(ExactSpectra, LinearMassless) {
  Channel ch = kSpin;
  ch.m = 0.0;
  const double P = 3.3612545;
  const double E = linear_energy(1.0, ch, P).E;
  // m = 0: E^4 = 4 v^2 P^3.
  EXPECT_NEAR(E, std::pow(4.0 * P * P * P, 0.25), 1e-10);
}

TEST(ExactSpectra, KratzerMatchesQuarticRoute) {
  for (double a : {0.05, 0.2, 0.5}) {
    for (double v : {0.5, 1.0, 2.0}) {
      for (double c : {0.0, 0.3, 1.0}) {
        const double E = kratzer_energy(a, v, c, kSpin).E;
        double best = INFINITY;
        for (double q : kratzer_quartic_energies(a, v, c, kSpin)) best = std::min(best, std::abs(q - E));
        EXPECT_LT(best, 1e-8) << a << " " << v << " " << c;
      }
    }
  }
}

TEST(ExactSpectra, KratzerLimitsAndErrors) {
  EXPECT_NEAR(kratzer_energy(0.0, 1.0, 0.5, kSpin).E, 1.4, 1e-12);
  EXPECT_NEAR(kratzer_energy(1e-12, 1.0, 0.5, kSpin).E, 1.4, 1e-10);
  EXPECT_THROW((void)kratzer_energy(0.2, 0.0, 0.0, kSpin), NoDiscreteSpectrum);
}

TEST(ExactSpectra, KratzerRaisesEnergyWithBarrier) {
  double prev = -INFINITY;
  for (double a : {0.0, 0.1, 0.3, 0.6}) {
    const double E = kratzer_energy(a, 1.0, 0.0, kSpin).E;
    EXPECT_GT(E, prev);
    prev = E;
  }
}

TEST(ExactSpectra, LogCriticalCoupling) {
  EXPECT_NEAR(log_u1(1.0, 1.6411353), 14.28389, 1e-3);
  const double u1 = log_u1(1.0, 1.6411353);
  // -m^2 = u1 (2e - ln 2) - u1 ln u1
  EXPECT_NEAR(u1 * (2.0 * 1.6411353 - std::log(2.0)) - u1 * std::log(u1), -1.0, 1e-10);
  EXPECT_NEAR(log_energy(u1, kSpin, 1.6411353).E, 0.0, 1e-10);
}

TEST(ExactSpectra, LogEnergyAndResidual) {
  const auto s = log_energy(1.0, kSpin, 1.6411413);
  EXPECT_NEAR(s.E, 2.373256747744, 1e-9);
  EXPECT_LE(s.residual, 1e-10);
  EXPECT_THROW((void)log_energy(0.0, kSpin, 1.6411353), NoDiscreteSpectrum);
}

TEST(ExactSpectra, LogEnergiesStayInsideRegions) {
  const double e1 = 1.6411353;
  const double u1 = log_u1(1.0, e1);
  for (auto mode : {Symmetry::spin, Symmetry::pseudo}) {
    for (double v : {-5.0, -1.0, -0.2, 0.2, 1.0, 5.0}) {
      const Channel ch{3, 1, 1, mode, 0, 1.0};
      const auto region = log_spectral_region(v, ch, u1);
      const double E = log_energy(v, ch, e1).E;
      EXPECT_TRUE(region.contains(E)) << "v=" << v << " mode=" << to_string(mode) << " E=" << E;
    }
  }
}

TEST(ExactSpectra, LogRegionTable) {
  const double u1 = 14.28389;
  const auto a = log_spectral_region(2.0, 1.0, u1);
  EXPECT_DOUBLE_EQ(a.lo, -1.0);
  EXPECT_DOUBLE_EQ(a.hi, u1 / 2.0 - 1.0);
  const auto b = log_spectral_region(-2.0, -1.0, u1);
  EXPECT_DOUBLE_EQ(b.lo, 1.0 - u1 / 2.0);
  EXPECT_DOUBLE_EQ(b.hi, 1.0);
  EXPECT_THROW((void)log_spectral_region(0.0, 1.0, u1), DomainError);
}

TEST(ExactSpectra, LaguerreRecurrence) {
  EXPECT_DOUBLE_EQ(laguerre(0, 1.5, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(laguerre(1, 1.5, 2.0), 0.5);
  // L_2^a(x) = ((x^2) - 2(a+2)x + (a+1)(a+2)) / 2
  EXPECT_NEAR(laguerre(2, 1.5, 2.0), (4.0 - 2.0 * 3.5 * 2.0 + 2.5 * 3.5) / 2.0, 1e-14);
}

TEST(ExactSpectra, SpectralConstantsCacheAndPublished) {
  SpectralConstants computed;
  const double e = computed.log_e1(1.0, 0);
  EXPECT_NEAR(e, 1.6411353, 1e-5);
  EXPECT_EQ(computed.log_e1(1.0, 0), e);
  auto published = SpectralConstants::published();
  EXPECT_EQ(published.log_e1(1.0, 0), 1.6411353);
  EXPECT_EQ(published.linear_P(1.0, 0), 3.3612545);
}

TEST(ExactSpectra, ExactEnergyDispatch) {
  SpectralConstants k = SpectralConstants::published();
  EXPECT_NEAR(exact_energy(Coulomb{1.0}, kSpin, k).E, 0.6, 1e-14);
  EXPECT_NEAR(exact_energy(Kratzer{0.0, 1.0, 0.5}, kSpin, k).E, 1.4, 1e-12);
  EXPECT_THROW((void)exact_energy(Custom{[](double r) { return r; }, 1.0}, kSpin, k), NotApplicable);
  EXPECT_FALSE(has_exact_spectrum(Custom{}));
  EXPECT_TRUE(has_exact_spectrum(Log{}));
}
