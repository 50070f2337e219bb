#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coulomb {

using BigInt = mpz_class;
/// Always canonical: gcd(|num|, den) = 1, den >= 1, zero is 0/1.
using BigRational = mpq_class;

/// Builds num/den in canonical form. Throws ZeroDenominator when den == 0.
BigRational make_rational(const BigInt& num, const BigInt& den);

/// Parses "p" or "p/q" (optional sign on p). Throws std::invalid_argument.
BigRational parse_rational(std::string_view text);

/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const BigRational& value);

BigInt factorial(unsigned k);

/// Rising factorial (a)_k = a(a+1)...(a+k-1), with (a)_0 = 1.
BigInt pochhammer(long a, unsigned k);

/// Laurent polynomial with exact rational coefficients.
///
/// Coefficients are stored densely starting at `lowest_degree()`. Every
/// instance is normalized: the lowest and highest stored coefficients are
/// nonzero, and the zero polynomial has no coefficients and lowest degree 0.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(BigRational constant);
  RatPoly(int lowest_degree, std::vector<BigRational> coefficients);

  static RatPoly monomial(BigRational coefficient, int power);

  bool is_zero() const { return coeffs_.empty(); }
  int lowest_degree() const { return lowest_; }
  /// Highest power present. Precondition: !is_zero().
  int degree() const { return lowest_ + static_cast<int>(coeffs_.size()) - 1; }
  std::span<const BigRational> coefficients() const { return coeffs_; }

  /// Coefficient of x^power; zero outside the stored range.
  BigRational coeff(int power) const;

  RatPoly derivative() const;

  /// Exact evaluation. Throws ZeroDenominator at x = 0 if negative powers exist.
  BigRational evaluate(const BigRational& x) const;

  /// p(scale * x).
  RatPoly rescaled(const BigRational& scale) const;

  /// x^k * p(x).
  RatPoly shifted(int k) const;

  RatPoly& operator+=(const RatPoly& rhs);
  RatPoly& operator-=(const RatPoly& rhs);
  RatPoly& operator*=(const RatPoly& rhs);
  RatPoly& operator*=(const BigRational& scalar);

  friend RatPoly operator+(RatPoly lhs, const RatPoly& rhs) { return lhs += rhs; }
  friend RatPoly operator-(RatPoly lhs, const RatPoly& rhs) { return lhs -= rhs; }
  friend RatPoly operator*(const RatPoly& lhs, const RatPoly& rhs);
  friend RatPoly operator*(RatPoly p, const BigRational& s) { return p *= s; }
  friend RatPoly operator*(const BigRational& s, RatPoly p) { return p *= s; }
  RatPoly operator-() const;

  friend bool operator==(const RatPoly& lhs, const RatPoly& rhs);

  /// Human-readable form, e.g. "1/2*x^-1 + 3 - x^2".
  std::string to_string(std::string_view var = "x") const;

 private:
  void normalize();

  int lowest_ = 0;
  std::vector<BigRational> coeffs_;
};

}  // namespace coulomb
