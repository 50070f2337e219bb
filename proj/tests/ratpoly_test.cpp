#include <gtest/gtest.h>

#include <random>

#include "coulomb/errors.hpp"
#include "coulomb/ratpoly.hpp"

namespace coulomb {
namespace {

RatPoly poly(int lowest, std::initializer_list<long> coeffs) {
  std::vector<BigRational> c;
  for (long v : coeffs) c.emplace_back(v);
  return RatPoly(lowest, std::move(c));
}

BigRational q(long num, long den = 1) { return make_rational(num, den); }

// Small random Laurent polynomials with rational coefficients.
class PolyGen {
 public:
  explicit PolyGen(unsigned seed) : rng_(seed) {}

  RatPoly next() {
    std::uniform_int_distribution<int> lowest(-3, 2);
    std::uniform_int_distribution<int> len(0, 5);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 6);
    std::vector<BigRational> c(static_cast<std::size_t>(len(rng_)));
    for (auto& v : c) v = make_rational(num(rng_), den(rng_));
    return RatPoly(lowest(rng_), std::move(c));
  }

  BigRational nonzero_rational() {
    std::uniform_int_distribution<long> num(1, 12);
    std::uniform_int_distribution<long> den(1, 7);
    std::bernoulli_distribution sign;
    return make_rational(sign(rng_) ? num(rng_) : -num(rng_), den(rng_));
  }

 private:
  std::mt19937 rng_;
};

bool all_reduced(const RatPoly& p) {
  for (const auto& c : p.coefficients()) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
    if (g != 1 || c.get_den() < 1) return false;
  }
  return true;
}

TEST(BigRational, CanonicalForm) {
  EXPECT_EQ(to_string(make_rational(6, -4)), "-3/2");
  EXPECT_EQ(to_string(make_rational(0, 7)), "0");
  EXPECT_EQ(make_rational(0, 7).get_den(), 1);
  EXPECT_THROW(make_rational(1, 0), ZeroDenominator);
}

TEST(BigRational, ParseRoundTrip) {
  EXPECT_EQ(parse_rational("27/2"), q(27, 2));
  EXPECT_EQ(parse_rational("-13/3"), q(-13, 3));
  EXPECT_EQ(parse_rational("22/24"), q(11, 12));
  EXPECT_EQ(parse_rational("+5"), q(5));
  EXPECT_THROW(parse_rational("1/"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
  EXPECT_THROW(parse_rational("3/0"), ZeroDenominator);
}

TEST(RatPoly, AddExamples) {
  EXPECT_TRUE((poly(0, {1, 1}) + poly(0, {-1, -1})).is_zero());
  EXPECT_EQ(poly(0, {2, 1}) + poly(2, {3}), poly(0, {2, 1, 3}));
  const RatPoly laurent = poly(-1, {1}) + poly(1, {1});
  EXPECT_EQ(laurent, poly(-1, {1, 0, 1}));
  EXPECT_EQ(laurent.lowest_degree(), -1);
  EXPECT_EQ(laurent.degree(), 1);
}

TEST(RatPoly, MulExamples) {
  EXPECT_EQ(poly(0, {1, -1}) * poly(0, {1, 1}), poly(0, {1, 0, -1}));
  const RatPoly p = poly(-2, {3, 0, 5});
  EXPECT_EQ(p * RatPoly(q(1)), p);
  EXPECT_EQ(poly(-1, {1}) * poly(2, {1}), poly(1, {1}));
}

TEST(RatPoly, DerivativeExamples) {
  EXPECT_EQ(poly(2, {1}).derivative(), poly(1, {2}));
  EXPECT_EQ(poly(-1, {1}).derivative(), poly(-2, {-1}));
  EXPECT_TRUE(RatPoly(q(7)).derivative().is_zero());
}

TEST(RatPoly, EvaluateExamples) {
  EXPECT_EQ(poly(0, {1, -1}).evaluate(q(1)), 0);
  EXPECT_EQ(poly(0, {2, 1, 1}).evaluate(q(2)), 8);
  EXPECT_EQ(poly(-1, {1}).evaluate(q(1, 2)), 2);
  EXPECT_EQ(poly(-3, {2, 0, 0, 0, 1}).evaluate(q(2)), q(1, 4) + 2);
  EXPECT_THROW(poly(-1, {1}).evaluate(q(0)), ZeroDenominator);
  EXPECT_EQ(poly(0, {4, 1}).evaluate(q(0)), 4);
}

TEST(RatPoly, NormalizationTrimsZeros) {
  const RatPoly p(-2, {0, 0, q(3), 0, q(1), 0});
  EXPECT_EQ(p.lowest_degree(), 0);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.coefficients().size(), 3u);
  EXPECT_EQ(p.coeff(1), 0);
  EXPECT_EQ(p.coeff(7), 0);
  EXPECT_TRUE(RatPoly(3, {0, 0}).is_zero());
  EXPECT_EQ(RatPoly(3, {0, 0}), RatPoly{});
}

TEST(RatPoly, RescaleAndShift) {
  // p(x) = 1 + x + x^-1 ; p(2x) = 1 + 2x + (1/2) x^-1
  const RatPoly p = poly(-1, {1, 1, 1});
  EXPECT_EQ(p.rescaled(q(2)), RatPoly(-1, {q(1, 2), q(1), q(2)}));
  EXPECT_EQ(p.shifted(3), poly(2, {1, 1, 1}));
  EXPECT_THROW(p.rescaled(q(0)), ZeroDenominator);
}

TEST(RatPoly, ToString) {
  EXPECT_EQ(RatPoly(-1, {q(1, 2), q(-3), q(1)}).to_string("r"), "1/2*r^-1 - 3 + r");
  EXPECT_EQ(RatPoly{}.to_string(), "0");
  EXPECT_EQ(poly(0, {0, -1}).to_string(), "-x");
}

TEST(Factorial, Values) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(5), 120);
  BigInt iterated = 1;
  for (unsigned k = 2; k <= 20; ++k) iterated *= k;
  EXPECT_EQ(factorial(20), iterated);
  EXPECT_EQ(factorial(20).get_str(), "2432902008176640000");
}

TEST(Pochhammer, Values) {
  EXPECT_EQ(pochhammer(-3, 2), 6);
  EXPECT_EQ(pochhammer(5, 0), 1);
  EXPECT_EQ(pochhammer(-7, 0), 1);
  EXPECT_EQ(pochhammer(-2, 3), 0);
  EXPECT_EQ(pochhammer(4, 3), 4 * 5 * 6);
}

TEST(RatPolyProperties, RingAxioms) {
  PolyGen gen(20261018);
  for (int i = 0; i < 300; ++i) {
    const RatPoly a = gen.next(), b = gen.next(), c = gen.next();
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
    ASSERT_TRUE(all_reduced(a * b + c));
  }
}

TEST(RatPolyProperties, LeibnizRule) {
  PolyGen gen(7);
  for (int i = 0; i < 300; ++i) {
    const RatPoly p = gen.next(), r = gen.next();
    ASSERT_EQ((p * r).derivative(), p.derivative() * r + p * r.derivative());
  }
}

TEST(RatPolyProperties, EvaluationIsARingHomomorphism) {
  PolyGen gen(99);
  for (int i = 0; i < 300; ++i) {
    const RatPoly p = gen.next(), r = gen.next();
    const BigRational x = gen.nonzero_rational();
    ASSERT_EQ((p * r).evaluate(x), p.evaluate(x) * r.evaluate(x));
    ASSERT_EQ((p + r).evaluate(x), p.evaluate(x) + r.evaluate(x));
    ASSERT_EQ(p.rescaled(x).evaluate(q(1)), p.evaluate(x));
  }
}

}  // namespace
}  // namespace coulomb
