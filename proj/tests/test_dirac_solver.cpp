#include <gtest/gtest.h>

#include <cmath>

#include "dirac_bounds/dirac_solver.hpp"
#include "dirac_bounds/exact_spectra.hpp"

using namespace dirac_bounds;

namespace {
Channel channel(Symmetry mode, int nu, int j2 = 1) { return Channel{3, j2, 1, mode, nu, 1.0}; }
}  // namespace

TEST(DiracSolver, CoulombMatchesClosedForm) {
  for (auto mode : {Symmetry::spin, Symmetry::pseudo}) {
    for (double v : {0.5, 1.0, 2.0}) {
      for (int nu : {0, 1}) {
        const auto ch = channel(mode, nu);
        const double vv = mode == Symmetry::spin ? v : -v;
        EXPECT_NEAR(dirac_energy(Coulomb{vv}, ch).E, coulomb_energy(vv, ch).E, 1e-8)
            << to_string(mode) << " v=" << vv << " nu=" << nu;
      }
    }
  }
}

TEST(DiracSolver, OtherFamiliesMatchClosedForms) {
  const Channel ch;
  EXPECT_NEAR(dirac_energy(Oscillator{1.0}, ch).E, oscillator_energy(1.0, ch).E, 1e-8);
  EXPECT_NEAR(dirac_energy(ShiftedCoulomb{1.0, 0.5}, ch).E, 1.4, 1e-8);
  EXPECT_NEAR(dirac_energy(Kratzer{0.2, 1.0, 0.5}, ch).E, kratzer_energy(0.2, 1.0, 0.5, ch).E, 1e-8);
  EXPECT_NEAR(dirac_energy(Log{1.0}, ch).E, log_energy(1.0, ch, log_e1(1.0, 0)).E, 1e-8);
  EXPECT_NEAR(dirac_energy(Linear{1.0}, ch).E, linear_energy(1.0, ch, linear_P(1.0, 0)).E, 1e-8);
}

TEST(DiracSolver, FrozenOracleValue) {
  const auto s = dirac_energy(Oscillator{-1.0}, channel(Symmetry::pseudo, 0));
  EXPECT_NEAR(s.E, -3.0962498068373, 1e-9);
  EXPECT_EQ(s.nodes, 0);
}

TEST(DiracSolver, ExcitedAndHigherJ) {
  const auto ch = channel(Symmetry::spin, 2, 3);
  EXPECT_NEAR(dirac_energy(Coulomb{1.0}, ch).E, coulomb_energy(1.0, ch).E, 1e-8);
}

TEST(DiracSolver, NoStateForWrongSign) {
  EXPECT_THROW((void)dirac_energy(Coulomb{1.0}, channel(Symmetry::pseudo, 0)), Error);
}

TEST(DiracSolver, OneDimensionNotSupported) {
  EXPECT_THROW((void)dirac_energy(Coulomb{1.0}, Channel{1, 1, 1}), NotApplicable);
}

TEST(DiracSolver, CustomPotential) {
  // Custom -1/r must reproduce Coulomb.
  const Custom V{[](double r) { return -1.0 / r; }, 1.0, "coulomb-custom"};
  EXPECT_NEAR(dirac_energy(V, Channel{}).E, 0.6, 1e-8);
}

TEST(DiracSolver, FixedGridOverload) {
  const RadialGrid grid{1e-6, 60.0, 12000};
  EXPECT_NEAR(dirac_energy(Coulomb{1.0}, Channel{}, grid, 1e-10).E, 0.6, 1e-6);
}

TEST(DiracSolver, ReconstructedComponents) {
  for (int nu : {0, 1}) {
    for (auto mode : {Symmetry::spin, Symmetry::pseudo}) {
      const auto ch = channel(mode, nu);
      const auto s = dirac_state(Coulomb{mode == Symmetry::spin ? 1.0 : -1.0}, ch);
      EXPECT_LE(s.residual1, 1e-6);
      EXPECT_LE(s.residual2, 1e-6);
      EXPECT_LE(s.norm_defect, 1e-8);
      EXPECT_EQ(s.nodes, nu);
      ASSERT_EQ(s.psi1.size(), s.grid.n);
      ASSERT_EQ(s.psi2.size(), s.grid.n);
    }
  }
}

TEST(DiracSolver, StateMatchesAnalyticWavefunction) {
  const Channel ch;
  const auto s = dirac_state(Coulomb{1.0}, ch);
  const auto r = s.grid.radii();
  for (std::size_t i = r.size() / 4; i < r.size() / 2; i += r.size() / 16) {
    EXPECT_NEAR(std::abs(s.psi1[i]), std::abs(coulomb_wavefunction(1.0, ch, s.E, r[i])), 1e-6) << "r=" << r[i];
  }
}

TEST(DiracSolver, DegenerateReconstructionThrows) {
  // Spin symmetry needs m + E != 0.
  const RadialGrid grid{1e-6, 20.0, 2000};
  std::vector<double> psi(grid.n, 1.0);
  EXPECT_THROW((void)reconstruct_components(psi, grid, -1.0, Channel{}, Coulomb{1.0}), DegenerateEnergy);
}

TEST(DiracSolver, DerivativeIdentityShiftedCoulomb) {
  const double c = 0.5;
  const PotentialFamily family{[c](double a) { return PotentialModel{ShiftedCoulomb{a, c}}; },
                               [](double r, double) { return -1.0 / r; }, std::nullopt};
  const auto id = energy_derivative_identity(family, 1.0, Channel{});
  const double x = 0.25;
  const double closed = -4.0 * 1.5 / (4.0 * (1.0 + x) * (1.0 + x));
  EXPECT_NEAR(id.lhs, closed, 1e-4 * std::abs(closed));
  EXPECT_NEAR(id.rhs, closed, 1e-4 * std::abs(closed));
  EXPECT_NEAR(id.richardson, closed, 1e-6);
}

TEST(DiracSolver, DerivativeIdentityNumericalDerivative) {
  // d_da left empty: dV/da taken by differences. E(c) = -1 + 2(1 + c)/(1 + x).
  const PotentialFamily family{[](double a) { return PotentialModel{ShiftedCoulomb{1.0, a}}; }, {}, std::nullopt};
  const auto id = energy_derivative_identity(family, 0.0, Channel{});
  EXPECT_NEAR(id.lhs, 1.6, 1e-6);
  EXPECT_NEAR(id.rhs, 1.6, 1e-6);
}

TEST(DiracSolver, InterpolationFamily) {
  const auto fam = interpolation_family(Coulomb{2.0}, Coulomb{1.0});
  EXPECT_NEAR(fam.derivative(2.0, 0.3), 0.5, 1e-12);
  EXPECT_NEAR(dirac_energy(fam.at(0.5), Channel{}).E, coulomb_energy(1.5, Channel{}).E, 1e-8);
}
