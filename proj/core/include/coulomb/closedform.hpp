#pragma once

#include <vector>

#include "coulomb/ratpoly.hpp"

namespace coulomb {

/// Validated hydrogenic quantum numbers in library units (kappa_0 = 1, so
/// kappa_n = 1/n and lengths are in reduced Bohr radii divided by Z).
class QuantumNumbers {
 public:
  /// Throws InvalidQuantumNumbers unless n >= 1 and 0 <= l <= n-1.
  QuantumNumbers(int n, int l);

  int n() const { return n_; }
  int l() const { return l_; }
  int n_r() const { return n_ - l_ - 1; }
  int m() const { return 2 * l_ + 1; }
  const BigRational& kappa() const { return kappa_; }

  friend bool operator==(const QuantumNumbers& a, const QuantumNumbers& b) {
    return a.n_ == b.n_ && a.l_ == b.l_;
  }

 private:
  int n_;
  int l_;
  BigRational kappa_;
};

/// E_n = -1/(2 n^2), energy unit hbar^2 kappa_0^2 / mu.
BigRational energy(const QuantumNumbers& qn);

enum class Variable { x, r };

/// q_plus(v) e^{kappa v} + q_minus(v) e^{-kappa v} + q_ei(v) e^{-kappa v} Ei(1, -2 kappa v)
///
/// where Ei(1,-z) is the principal value of the integral of e^{-s}/s from -z
/// to infinity. The x-variable convention is the same shape with kappa = 1/2.
struct ExpEiForm {
  RatPoly q_plus;
  RatPoly q_minus;
  RatPoly q_ei;
  BigRational kappa = 1;
  Variable variable = Variable::r;

  bool is_zero() const { return q_plus.is_zero() && q_minus.is_zero() && q_ei.is_zero(); }

  ExpEiForm& operator+=(const ExpEiForm& rhs);
  ExpEiForm& operator-=(const ExpEiForm& rhs);
  /// Multiplies all three buckets by a Laurent polynomial.
  ExpEiForm& operator*=(const RatPoly& factor);
  ExpEiForm& operator*=(const BigRational& factor);

  friend ExpEiForm operator+(ExpEiForm a, const ExpEiForm& b) { return a += b; }
  friend ExpEiForm operator-(ExpEiForm a, const ExpEiForm& b) { return a -= b; }
  friend ExpEiForm operator*(const RatPoly& p, ExpEiForm f) { return f *= p; }
  friend ExpEiForm operator*(const BigRational& c, ExpEiForm f) { return f *= c; }
  friend bool operator==(const ExpEiForm& a, const ExpEiForm& b) = default;
};

/// Exact d/dv. Uses d/dv Ei(1, -2 kappa v) = -e^{2 kappa v} / v, which moves
/// the Ei bucket's derivative into the e^{+kappa v} bucket.
ExpEiForm derivative(const ExpEiForm& f);

/// Associated Laguerre polynomial L_{n_r}^{m}(x) as an explicit finite sum.
RatPoly laguerre_L1(int n_r, int m);

/// 1F1(-n_r; m+1; x), which terminates at degree n_r.
RatPoly hyp1f1_terminating(int n_r, int m);

/// Integer-coefficient polynomial of degree n_r + m - 1 carried by the
/// e^x / x^m term of the second solution, built from the double sum.
RatPoly p2_doublesum(int n_r, int m);

/// Same polynomial from the positive-part plus harmonic-tail representation.
RatPoly p2_simplified(int n_r, int m);

/// (2 kappa r)^l e^{-kappa r} L1(n_r, 2l+1, 2 kappa r).
ExpEiForm assemble_R1(const QuantumNumbers& qn);

/// (1/n_r!) (2 kappa r)^{-l-1} e^{kappa r} P2(n_r, 2l+1, 2 kappa r)
///   + (2 kappa r)^l e^{-kappa r} L1(n_r, 2l+1, 2 kappa r) Ei(1, -2 kappa r).
ExpEiForm assemble_R2(const QuantumNumbers& qn);

struct TableEntry {
  QuantumNumbers qn;
  ExpEiForm r1;
  ExpEiForm r2;
};

/// Every (n, l) with n <= n_max, ordered by n then l.
std::vector<TableEntry> paper_units_table(int n_max);

}  // namespace coulomb
