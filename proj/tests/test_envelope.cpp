#include <gtest/gtest.h>

#include <cmath>

#include "dirac_bounds/dirac_solver.hpp"
#include "dirac_bounds/envelope.hpp"
#include "dirac_bounds/exact_spectra.hpp"

using namespace dirac_bounds;

TEST(Envelope, TangentCoefficientsOfQuadratic) {
  const auto tc = tangent_coefficients([](double h) { return h * h; }, [](double h) { return 2.0 * h; },
                                       [](double r) { return -1.0 / r; }, 2.0);
  // h(2) = -1/2: slope -1, intercept 1/4 - (-1/2)(-1) = -1/4.
  EXPECT_DOUBLE_EQ(tc.b, -1.0);
  EXPECT_DOUBLE_EQ(tc.c, -0.25);
  EXPECT_THROW((void)tangent_coefficients([](double h) { return h; }, [](double) { return 1.0; },
                                          [](double r) { return r; }, 0.0),
               DomainError);
}

TEST(Envelope, CoulombTangentTouchesShape) {
  const auto f = log_shape();
  for (double t : {0.1, 1.0, 7.0}) {
    const auto tc = coulomb_tangent(f, t);
    EXPECT_NEAR(-tc.b / t + tc.c, std::log(t), 1e-14);
    // Convex g: tangent lies below ln r everywhere.
    for (double r : {0.01, 0.5, 3.0, 100.0}) EXPECT_LE(-tc.b / r + tc.c, std::log(r) + 1e-12);
  }
}

TEST(Envelope, ConvexityCertificates) {
  EXPECT_TRUE(certify_convexity(log_shape(), 1e-3, 1e3).convex());
  EXPECT_FALSE(certify_convexity(log_shape(), 1e-3, 1e3).concave());
  const Shape power{[](double r) { return r * r; }, {}, {}, "r^2"};
  EXPECT_TRUE(certify_convexity(power, 1e-2, 1e2).convex());
  const Shape affine{[](double r) { return -1.0 / r + 0.3; }, {}, {}, "shifted coulomb"};
  const auto cert = certify_convexity(affine, 1e-2, 1e2);
  EXPECT_TRUE(cert.convex());
  EXPECT_TRUE(cert.concave());
  const Shape root{[](double r) { return -std::pow(r, -1.5); }, {}, {}, "-r^-1.5"};
  EXPECT_TRUE(certify_convexity(root, 1e-2, 1e2).concave());
}

TEST(Envelope, LogBoundFrozenAndFormula) {
  const Channel ch;
  const auto b = log_envelope_bound(1.0, ch);
  EXPECT_NEAR(b.value, 2.217644722, 1e-8);
  EXPECT_EQ(b.direction, BoundDirection::lower);
  // E_L = mu + v [1 + 2 ln P - ln(v (mu + E_L))]
  EXPECT_NEAR(b.value, 1.0 + 1.0 * (1.0 + 2.0 * std::log(2.0) - std::log(1.0 + b.value)), 1e-12);
  EXPECT_NEAR(b.q_opt, 1.0 / (1.0 + b.value), 1e-12);
}

TEST(Envelope, LogBoundAgreesWithTangentSearch) {
  const Channel ch;
  for (double v : {0.1, 1.0, 5.0}) {
    const auto implicit = log_envelope_bound(v, ch);
    const auto searched = coulomb_base_envelope(log_shape(), v, ch);
    EXPECT_NEAR(implicit.value, searched.value, 1e-10) << "v=" << v;
    EXPECT_NEAR(implicit.t_opt, searched.t_opt, 1e-4 * implicit.t_opt);
    EXPECT_FALSE(searched.multimodal);
  }
}

TEST(Envelope, LowerBoundBelowExactEnergy) {
  SpectralConstants k;
  for (double v : {0.05, 0.5, 1.0, 4.0, 14.0}) {
    for (int nu : {0, 1}) {
      Channel ch;
      ch.nu = nu;
      const double E = exact_energy(Log{v}, ch, k).E;
      EXPECT_LT(log_envelope_bound(v, ch).value, E) << "v=" << v << " nu=" << nu;
    }
  }
}

TEST(Envelope, UpperBoundForNegativeCoupling) {
  const Channel ch{3, 1, 1, Symmetry::pseudo, 0, 1.0};
  const auto b = log_envelope_bound(-1.0, ch);
  EXPECT_EQ(b.direction, BoundDirection::upper);
  EXPECT_GT(b.value, dirac_energy(Log{-1.0}, ch).E);
}

TEST(Envelope, AffineShapeIsExact) {
  const Shape affine{[](double r) { return -1.0 / r + 0.3; }, {}, {}, "shifted coulomb"};
  const auto b = coulomb_base_envelope(affine, 1.0, Channel{});
  EXPECT_NEAR(b.value, shifted_coulomb_energy(1.0, 0.3, Channel{}).E, 1e-9);
}

TEST(Envelope, RejectsMixedCurvatureAndBadInput) {
  const Shape wiggle{[](double r) { return std::sin(r); }, {}, {}, "sin"};
  EXPECT_THROW((void)coulomb_base_envelope(wiggle, 1.0, Channel{}), NotApplicable);
  EXPECT_THROW((void)coulomb_base_envelope(log_shape(), 0.0, Channel{}), DomainError);
  EXPECT_THROW((void)log_envelope_bound(0.0, Channel{}), DomainError);
}
