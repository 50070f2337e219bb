#pragma once

#include "coulomb/bigfloat.hpp"
#include "coulomb/closedform.hpp"

namespace coulomb {

/// How the exponential integral part of a value was obtained. `direct` means
/// no exponential integral was involved.
enum class EvalMethod { direct, series, asymptotic };

const char* to_string(EvalMethod method);

struct EvalResult {
  double value = 0.0;
  double est_rel_error = 0.0;  ///< >= 0; may be large near zeros or under cancellation
  EvalMethod method = EvalMethod::direct;
  double magnitude = 0.0;      ///< sum of |term| before cancellation between buckets and monomials
};

/// Arguments above this use the asymptotic expansion; at or below, the power series.
inline constexpr double kEiCrossover = 40.0;

/// Ei(1, -x) = PV integral of e^{-s}/s over (-x, inf) = -Ei(x), for x > 0.
/// Throws DomainError for x <= 0 and OverflowSignal when |Ei(x)| exceeds double range.
EvalResult ei_one_neg(double x);

/// e^{-x} Ei(1, -x); finite for every x > 0.
EvalResult ei_one_neg_scaled(double x);

/// The two branches, exposed for crossover testing. Both return e^{-x} Ei(1,-x)
/// when `scaled` is set, Ei(1,-x) otherwise.
EvalResult ei_one_neg_series(double x, bool scaled = false);
EvalResult ei_one_neg_asymptotic(double x, bool scaled = false);

/// Ei(1, -x) in MPFR at the precision of x (plus internal guard bits), from
/// -(gamma + ln x + sum x^k/(k k!)).
BigFloat ei_one_neg_extended(const BigFloat& x);

/// Double-precision value of an r-variable ExpEiForm at r > 0. The error
/// estimate includes Horner rounding, the cancellation between the e^{kappa r}
/// and Ei buckets, and the Ei error. Throws DomainError for r <= 0 and
/// OverflowSignal if e^{kappa r} is out of range.
EvalResult eval_form(const ExpEiForm& f, double r);

/// The same formula evaluated with MPFR; polynomials are evaluated exactly at
/// the rational r. precision_bits >= 64.
BigFloat eval_form_extended(const ExpEiForm& f, const BigRational& r, mpfr_prec_t precision_bits);

}  // namespace coulomb
