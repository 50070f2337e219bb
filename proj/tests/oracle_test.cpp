#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "coulomb/errors.hpp"
#include "coulomb/numeval.hpp"
#include "coulomb/oracle.hpp"

namespace coulomb {
namespace {

BigRational q(long num, long den = 1) { return make_rational(num, den); }

TEST(RadialOperator, AnnihilatesBothSolutions) {
  for (int n = 1; n <= 20; ++n) {
    for (int l = 0; l < n; ++l) {
      const QuantumNumbers qn(n, l);
      const VerificationReport a = ode_residual_symbolic(assemble_R1(qn), qn);
      const VerificationReport b = ode_residual_symbolic(assemble_R2(qn), qn);
      ASSERT_TRUE(a.passed && a.exact) << a.subject_label << " " << a.details;
      ASSERT_TRUE(b.passed && b.exact) << b.subject_label << " " << b.details;
      ASSERT_EQ(b.residual_norm, 0.0);
    }
  }
}

TEST(RadialOperator, DetectsCorruptedCoefficient) {
  // Mutation test: the check must not pass vacuously.
  for (int n = 2; n <= 6; ++n) {
    for (int l = 0; l < n; ++l) {
      const QuantumNumbers qn(n, l);
      ExpEiForm bad = assemble_R2(qn);
      bad.q_plus += RatPoly::monomial(q(1), bad.q_plus.lowest_degree());
      const VerificationReport rep = ode_residual_symbolic(bad, qn);
      EXPECT_FALSE(rep.passed) << rep.subject_label;
      EXPECT_GT(rep.residual_norm, 0.0);
    }
  }
  // A solution for the wrong l fails as well.
  EXPECT_FALSE(ode_residual_symbolic(assemble_R2(QuantumNumbers(3, 1)), QuantumNumbers(3, 2)).passed);
}

TEST(RadialOperator, HandWorkedGroundState) {
  // e^{-r}: r^2 - 2r + (-r^2 + 2r) = 0.
  const ExpEiForm res = radial_operator(assemble_R1(QuantumNumbers(1, 0)), 0);
  EXPECT_TRUE(res.is_zero());
  // r^{-1} e^{-r} at l = 0 leaves 2 e^{-r}.
  ExpEiForm f;
  f.q_minus = RatPoly::monomial(q(1), -1);
  const ExpEiForm left = radial_operator(f, 0);
  EXPECT_EQ(left.q_minus, RatPoly(q(2)));
  EXPECT_TRUE(left.q_plus.is_zero());
}

TEST(RadialOperator, NumericResidualAgrees) {
  const std::vector<double> radii{0.05, 0.3, 1.0, 2.5, 7.0, 15.0};
  for (int n = 1; n <= 5; ++n) {
    for (int l = 0; l < n; ++l) {
      const QuantumNumbers qn(n, l);
      const VerificationReport rep = ode_residual_numeric(assemble_R2(qn), qn, radii);
      EXPECT_TRUE(rep.passed) << rep.subject_label << " " << rep.details;
      EXPECT_FALSE(rep.exact);
    }
  }
  ExpEiForm bad = assemble_R2(QuantumNumbers(2, 0));
  bad.q_ei *= q(2);
  EXPECT_FALSE(ode_residual_numeric(bad, QuantumNumbers(2, 0), radii).passed);
}

TEST(Wronskian, KnownConstants) {
  struct Case {
    int n, l;
    BigRational c;
  };
  const std::vector<Case> cases{{1, 0, q(-1, 2)}, {2, 0, q(-2)},  {2, 1, q(-6)},
                                {3, 0, q(-9, 2)}, {3, 1, q(-36)}, {3, 2, q(-180)}};
  for (const auto& c : cases) {
    const WronskianResult w = wronskian_symbolic(QuantumNumbers(c.n, c.l));
    ASSERT_TRUE(w.report.passed) << w.report.details;
    ASSERT_TRUE(w.r2_constant.has_value());
    EXPECT_EQ(*w.r2_constant, c.c) << "n=" << c.n << " l=" << c.l;
  }
}

TEST(Wronskian, NonzeroUpToTwenty) {
  for (int n = 1; n <= 20; ++n) {
    for (int l = 0; l < n; ++l) {
      const WronskianResult w = wronskian_symbolic(QuantumNumbers(n, l));
      ASSERT_TRUE(w.report.passed) << w.report.subject_label;
      ASSERT_NE(*w.r2_constant, 0);
    }
  }
}

TEST(Wronskian, ScalesLinearly) {
  const QuantumNumbers qn(3, 1);
  const ExpEiForm r1 = assemble_R1(qn);
  const ExpEiForm r2 = assemble_R2(qn);
  const BigRational base = *wronskian_symbolic(r1, r2, qn).r2_constant;
  EXPECT_EQ(*wronskian_symbolic(r1, q(2) * r2, qn).r2_constant, 2 * base);
  // Adding R1 to R2 leaves the Wronskian alone.
  EXPECT_EQ(*wronskian_symbolic(r1, r2 + r1, qn).r2_constant, base);
  // Two copies of R1 are dependent.
  EXPECT_FALSE(wronskian_symbolic(r1, r1, qn).report.passed);
}

TEST(Wronskian, NumericCrossCheck) {
  // r^2 (R1 R2' - R1' R2) evaluated in double precision.
  for (int n = 1; n <= 4; ++n) {
    for (int l = 0; l < n; ++l) {
      const QuantumNumbers qn(n, l);
      const ExpEiForm r1 = assemble_R1(qn), r2 = assemble_R2(qn);
      const ExpEiForm d1 = derivative(r1), d2 = derivative(r2);
      const double expected = wronskian_symbolic(qn).r2_constant->get_d();
      for (double r : {0.5, 1.0, 3.0}) {
        const double w = r * r * (eval_form(r1, r).value * eval_form(d2, r).value -
                                  eval_form(d1, r).value * eval_form(r2, r).value);
        EXPECT_NEAR(w / expected, 1.0, 1e-9) << "n=" << n << " l=" << l << " r=" << r;
      }
    }
  }
}

TEST(PrincipalValue, MatchesClosedForm) {
  struct Case {
    int n_r, m;
    double x, expected;
  };
  // Frozen from a 30-digit principal-value quadrature.
  const std::vector<Case> cases{{0, 1, 2.0, -1.2597063065365650498},
                                {1, 1, 1.0, -0.94755890817796837773},
                                {1, 3, 0.5, 11.555786795820652182}};
  for (const auto& c : cases) {
    const QuadratureValue pv = phi2_pv_oracle(c.n_r, c.m, c.x);
    EXPECT_NEAR(pv.value / c.expected, 1.0, 1e-8) << c.n_r << "," << c.m << "," << c.x;
    EXPECT_NEAR(phi2_closed_form(c.n_r, c.m, c.x) / c.expected, 1.0, 1e-12);
  }
}

TEST(PrincipalValue, SweepWithinTolerance) {
  for (int n_r = 0; n_r <= 4; ++n_r) {
    for (int m = 1; m + n_r <= 8; m += 2) {
      for (double x : {0.3, 1.7, 4.0}) {
        const QuadratureValue pv = phi2_pv_oracle(n_r, m, x);
        const double closed = phi2_closed_form(n_r, m, x);
        EXPECT_LE(std::fabs(pv.value - closed), 1e-6 * std::fabs(closed))
            << "n_r=" << n_r << " m=" << m << " x=" << x;
      }
    }
  }
}

TEST(PrincipalValue, RejectsBadArguments) {
  EXPECT_THROW(phi2_pv_oracle(0, 1, 0.0), DomainError);
  EXPECT_THROW(phi2_pv_oracle(-1, 1, 1.0), std::invalid_argument);
  EXPECT_THROW(phi2_closed_form(0, 0, 1.0), std::invalid_argument);
}

TEST(PoleSplit, IdentityHolds) {
  const std::vector<double> xs{0.25, 1.0, 3.0, 6.0};
  for (int n_r = 0; n_r <= 3; ++n_r) {
    for (int m : {1, 3, 5}) {
      const VerificationReport rep = pole_split_identity_check(n_r, m, xs);
      EXPECT_TRUE(rep.passed) << rep.subject_label << " " << rep.details;
      EXPECT_LE(rep.residual_norm, 1e-8);
    }
  }
}

TEST(PoleSplit, IntegrandIsSmoothAtThePole) {
  // At s = x the integrand tends to e^{-x} Q'(x), Q(s) = s^m 1F1(-n_r; m+1; s).
  for (int n_r : {0, 2}) {
    for (int m : {1, 3}) {
      const RatPoly qpoly = hyp1f1_terminating(n_r, m).shifted(m);
      for (double x : {0.5, 2.0}) {
        const double slope = qpoly.derivative().evaluate(BigRational(x)).get_d();
        const double at = pole_free_integrand(n_r, m, x, x);
        const double near = pole_free_integrand(n_r, m, x, x + 1e-7);
        EXPECT_NEAR(at, std::exp(-x) * slope, 1e-12 * (1 + std::fabs(slope)));
        EXPECT_NEAR(near, at, 1e-5 * (1 + std::fabs(at)));
      }
    }
  }
}

TEST(FirstIntegral, Examples) {
  // N = 1: integral of e^{-s} = 1.
  EXPECT_NEAR(first_integral_quadrature(1, 0.5).value, 1.0, 1e-10);
  // N = 2: x + 1.
  EXPECT_NEAR(first_integral_quadrature(2, 2.0).value, 3.0, 1e-10);
  // N = 3: x^2 + x + 2.
  EXPECT_NEAR(first_integral_quadrature(3, 1.0).value, 4.0, 1e-10);
  EXPECT_THROW(first_integral_quadrature(0, 1.0), std::invalid_argument);
}

TEST(FirstIntegral, ClosedFormCheck) {
  for (int n_r = 0; n_r <= 4; ++n_r) {
    for (int m : {1, 3, 5}) {
      const VerificationReport rep = first_integral_closed_form_check(n_r, m);
      EXPECT_TRUE(rep.passed) << rep.subject_label << " " << rep.details;
    }
  }
}

TEST(GoldenTable, AllEntriesVerify) {
  const auto entries = golden_table();
  ASSERT_EQ(entries.size(), 10u);
  const auto reports = golden_table_check(entries);
  ASSERT_EQ(reports.size(), 10u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.passed) << r.subject_label << " " << r.details;
    EXPECT_TRUE(r.exact);
  }
  EXPECT_EQ(entries.front().q_plus, RatPoly::monomial(q(1, 2), -1));
  EXPECT_EQ(entries.front().ei_arg_scale, q(-2));
}

TEST(GoldenTable, DetectsCorruptEntry) {
  auto entries = golden_table();
  entries[4].q_plus += RatPoly::monomial(q(1, 7), 0);
  entries[7].ei_arg_scale = q(-1);
  const auto reports = golden_table_check(entries);
  int failures = 0;
  for (const auto& r : reports) failures += r.passed ? 0 : 1;
  EXPECT_EQ(failures, 2);
  EXPECT_FALSE(reports[4].passed);
  EXPECT_FALSE(reports[7].passed);
}

}  // namespace
}  // namespace coulomb
