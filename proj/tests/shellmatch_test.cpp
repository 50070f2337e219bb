#include <gtest/gtest.h>

#include <cmath>

#include "coulomb/numeval.hpp"
#include "coulomb/shellmatch.hpp"

namespace coulomb {
namespace {

ShellConfig demo_config() {
  ShellConfig c;
  c.qn = QuantumNumbers(2, 0);
  c.a = 1e-4;
  c.b_min = 0.5;
  c.b_max = 1.8;
  return c;
}

TEST(Interior, MatchesClosedFormForS) {
  // l = 0 free solution at negative energy: sinh(kappa r)/(kappa r).
  for (int n : {1, 2, 3}) {
    const QuantumNumbers qn(n, 0);
    const double k = qn.kappa().get_d();
    for (double a : {0.1, 0.7, 2.0}) {
      const RadialValue u = integrate_interior(qn, a, 0.01);
      const double expected = (k * a * std::cosh(k * a) - std::sinh(k * a)) / (a * std::sinh(k * a));
      EXPECT_NEAR(u.derivative / u.value, expected, 1e-6 * (std::fabs(expected) + 1)) << n << " " << a;
    }
  }
}

TEST(Interior, MatchesClosedFormForP) {
  // l = 1: i_1(z) = (z cosh z - sinh z)/z^2.
  const QuantumNumbers qn(3, 1);
  const double k = qn.kappa().get_d();
  auto i1 = [](double z) { return (z * std::cosh(z) - std::sinh(z)) / (z * z); };
  for (double a : {0.2, 1.5}) {
    const RadialValue u = integrate_interior(qn, a, 0.01);
    const double h = 1e-5;
    const double expected = (std::log(i1(k * (a + h))) - std::log(i1(k * (a - h)))) / (2 * h);
    EXPECT_NEAR(u.derivative / u.value, expected, 1e-6);
  }
}

TEST(Interior, LinearGrowthForP) {
  const QuantumNumbers qn(2, 1);
  const double h = 1e-3;
  const double ratio = integrate_interior(qn, 2 * h, 1e-5).value / integrate_interior(qn, h, 1e-5).value;
  EXPECT_NEAR(ratio, 2.0, 1e-5);
}

TEST(Exterior, SWaveLogDerivative) {
  for (int n : {1, 2, 4}) {
    const QuantumNumbers qn(n, 0);
    const double k = qn.kappa().get_d();
    for (double b : {0.5, 1.0, 3.0}) {
      EXPECT_NEAR(exterior_logderiv(qn, b), -k - 1.0 / b, 1e-8) << n << " " << b;
    }
  }
}

TEST(Exterior, PWaveLogDerivative) {
  // k_1(z) = e^{-z}(1/z + 1/z^2).
  const QuantumNumbers qn(2, 1);
  const double k = qn.kappa().get_d();
  for (double b : {0.5, 2.0}) {
    const double expected = -k + k / (k * b + 1.0) - 2.0 / b;
    EXPECT_NEAR(exterior_logderiv(qn, b), expected, 1e-8);
  }
}

TEST(Exterior, InsensitiveToStartingRadius) {
  const QuantumNumbers qn(3, 2);
  const double a = exterior_logderiv(qn, 1.2, 0.01, 40.0);
  const double b = exterior_logderiv(qn, 1.2, 0.01, 50.0);
  EXPECT_LT(std::fabs(a - b), 1e-9);
}

TEST(MatchInner, SmallCoreSelectsRegularSolution) {
  const ShellConfig c = demo_config();
  const RadialValue u = integrate_interior(c.qn, c.a, c.grid_step);
  const Mixing mix = match_inner(c.qn, c.a, u);
  EXPECT_LT(std::fabs(mix.c2), 1e-6);
  EXPECT_NEAR(mix.c1, 1.0, 1e-9);
  EXPECT_NEAR(inner_mismatch(c.qn, c.a, mix, u), 0.0, 1e-6);
}

TEST(MatchInner, IrregularPartIsNeededForFiniteCore) {
  const QuantumNumbers qn(2, 0);
  const double a = 0.5;
  const RadialValue u = integrate_interior(qn, a, 0.01);
  EXPECT_GT(std::fabs(inner_mismatch(qn, a, Mixing{1.0, 0.0}, u)), 1e-3);
  const Mixing mix = match_inner(qn, a, u);
  EXPECT_GT(std::fabs(mix.c2), 1e-4);
  EXPECT_GE(mix.c1, 0.0);
  EXPECT_NEAR(mix.c1 * mix.c1 + mix.c2 * mix.c2, 1.0, 1e-12);
  EXPECT_NEAR(inner_mismatch(qn, a, mix, u), 0.0, 1e-8);
}

TEST(MatchShell, PureCoulombLimitRecoversAnalyticRadius) {
  const ShellConfig c = demo_config();
  const MatchResult res = match_shell(c);
  EXPECT_NEAR(res.b_star, 1.0, 1e-6);
  EXPECT_LT(std::fabs(res.mismatch), 1e-6);
}

TEST(MatchShell, GridHalvingIsStable) {
  ShellConfig c = demo_config();
  c.a = 0.3;
  const MatchResult coarse = match_shell(c);
  c.grid_step = 0.005;
  const MatchResult fine = match_shell(c);
  EXPECT_LT(std::fabs(coarse.b_star - fine.b_star), 1e-6);
}

TEST(MatchShell, Continuity) {
  ShellConfig c = demo_config();
  c.a = 0.3;
  const MatchResult res = match_shell(c);
  const ContinuityResiduals cont = continuity_residuals(c, res);
  EXPECT_LT(cont.at_a, 1e-7);
  EXPECT_LT(cont.at_b, 1e-7);
}

TEST(MatchShell, MixingIsScaleInvariant) {
  const QuantumNumbers qn(3, 1);
  RadialValue u = integrate_interior(qn, 0.4, 0.01);
  const Mixing a = match_inner(qn, 0.4, u);
  u.value *= 10;
  u.derivative *= 10;
  const Mixing b = match_inner(qn, 0.4, u);
  EXPECT_NEAR(a.c1, b.c1, 1e-14);
  EXPECT_NEAR(a.c2, b.c2, 1e-14);
}

TEST(MatchShell, NoRootReportsScan) {
  ShellConfig c = demo_config();
  c.b_min = 1.2;
  c.b_max = 1.8;
  try {
    match_shell(c);
    FAIL() << "expected NoRootInRange";
  } catch (const NoRootInRange& e) {
    EXPECT_GE(e.scan().size(), 2u);
    EXPECT_DOUBLE_EQ(e.scan().front().first, 1.2);
    EXPECT_DOUBLE_EQ(e.scan().back().first, 1.8);
  }
}

TEST(MatchShell, RejectsBadGeometry) {
  ShellConfig c = demo_config();
  c.b_max = 0.4;
  EXPECT_THROW(match_shell(c), std::invalid_argument);
  c = demo_config();
  c.grid_step = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Wavefunction, PiecewiseIsContinuous) {
  const ShellConfig c = demo_config();
  const MatchResult res = match_shell(c);
  const double eps = 1e-7;
  const std::vector<double> radii{c.a - eps, c.a + eps, res.b_star - eps, res.b_star + eps, 5.0};
  const auto w = piecewise_wavefunction(c, res, radii);
  ASSERT_EQ(w.size(), radii.size());
  EXPECT_EQ(w[0].region, 0);
  EXPECT_EQ(w[1].region, 1);
  EXPECT_EQ(w[3].region, 2);
  EXPECT_NEAR(w[0].value / w[1].value, 1.0, 1e-5);
  EXPECT_NEAR(w[2].value / w[3].value, 1.0, 1e-5);
  EXPECT_LT(std::fabs(w[4].value), std::fabs(w[3].value));
}

}  // namespace
}  // namespace coulomb
