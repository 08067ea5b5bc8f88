#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dirac_bounds/radial_solver.hpp"

using namespace dirac_bounds;

TEST(RadialSolver, NodeCount) {
  EXPECT_EQ(node_count(std::vector<double>{1, 2, -1, -2, 0, 3, 0, 0}), 2);
  EXPECT_EQ(node_count(std::vector<double>{0, 1, 2}), 0);
}

TEST(RadialSolver, SimpsonIntegratesCubicExactly) {
  std::vector<double> f(11);
  for (int i = 0; i <= 10; ++i) f[i] = std::pow(0.1 * i, 3);
  EXPECT_NEAR(detail::simpson(f, 0.1), 0.25, 1e-14);
}

TEST(RadialSolver, HydrogenLikeLevels) {
  // -psi'' + (L(L+1)/r^2 - 1/r) psi = F psi has F = -1 / (4 n^2), n = nu + L + 1.
  for (double L : {0.0, 1.0, 2.0}) {
    for (int nu : {0, 1, 2}) {
      const double n = nu + L + 1.0;
      const auto s = schrodinger_eigenvalue([](double r) { return -1.0 / r; }, 1.0, L, nu);
      EXPECT_NEAR(s.eigenvalue, -1.0 / (4.0 * n * n), 1e-9) << "L=" << L << " nu=" << nu;
      EXPECT_EQ(s.nodes, nu);
      EXPECT_TRUE(s.converged);
    }
  }
}

TEST(RadialSolver, OscillatorLevels) {
  // v r^2 with v = 1: F = 4 nu + 2L + 3.
  for (double L : {0.0, 1.0}) {
    for (int nu : {0, 1, 2}) {
      const auto s = schrodinger_eigenvalue([](double r) { return r * r; }, 1.0, L, nu);
      EXPECT_NEAR(s.eigenvalue, 4.0 * nu + 2.0 * L + 3.0, 1e-8);
    }
  }
}

TEST(RadialSolver, NonIntegerCentrifugal) {
  // Oscillator with L(L+1) = 0.75 (L = 0.5): F = 2L + 3 = 4.
  RadialProblem p{[](double r) { return r * r; }, 0.75, 0};
  EXPECT_NEAR(schrodinger_eigenvalue(p).eigenvalue, 4.0, 1e-8);
}

TEST(RadialSolver, Constants) {
  EXPECT_NEAR(linear_P(1.0, 0), 3.3612545, 1e-6);
  EXPECT_NEAR(log_e1(1.0, 0), 1.6411353, 1e-5);
  // Ground linear L = 0: minus the first Airy zero.
  EXPECT_NEAR(linear_P(0.0, 0), 2.338107410459767, 1e-8);
}

TEST(RadialSolver, GridRefinementIsStable) {
  RadialGrid coarse{1e-6, 60.0, 6000};
  RadialGrid fine{1e-6, 60.0, 12000};
  RadialProblem p{[](double r) { return std::log(r); }, 2.0, 0};
  const double a = schrodinger_eigenvalue(p, coarse).eigenvalue;
  const double b = schrodinger_eigenvalue(p, fine).eigenvalue;
  EXPECT_LT(std::abs(a - b), 1e-6);
}

TEST(RadialSolver, NoBoundStateWhenPotentialRepels) {
  EXPECT_THROW((void)schrodinger_eigenvalue([](double r) { return 1.0 / r; }, 1.0, 0.0, 0), Error);
}
