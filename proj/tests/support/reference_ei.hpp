#pragma once

// Test-only references for Ei(1,-x) = PV integral_{-x}^{inf} e^{-s}/s ds, x > 0.
// Both are independent of coulomb::ei_one_neg*.

#include <mpfr.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace coulomb::testing {

using Float50 = boost::multiprecision::cpp_bin_float_50;

/// Quadrature of the defining integral. Pairing s and -s over the symmetric
/// window removes the pole exactly:
///   PV int_{-x}^{x} e^{-s}/s ds = -2 int_0^x sinh(s)/s ds,
/// so Ei(1,-x) = int_x^inf e^{-s}/s ds - 2 int_0^x sinh(s)/s ds.
inline Float50 ei_one_neg_by_quadrature(const Float50& x) {
  using boost::multiprecision::exp;
  using boost::multiprecision::sinh;
  const Float50 tol = Float50(1e-40);
  boost::math::quadrature::tanh_sinh<Float50> ts(15);
  auto sinc_h = [](const Float50& s) { return s == 0 ? Float50(1) : Float50(sinh(s) / s); };
  const Float50 shi = ts.integrate(sinc_h, Float50(0), x, tol);
  boost::math::quadrature::exp_sinh<Float50> es(9);
  auto tail = [&](const Float50& u) { return Float50(exp(-(x + u)) / (x + u)); };
  const Float50 e1 = es.integrate(tail, tol);
  return e1 - 2 * shi;
}

/// MPFR's own exponential integral: Ei(1,-x) = -Ei(x).
inline double ei_one_neg_mpfr(double x, mpfr_prec_t bits = 200) {
  mpfr_t v;
  mpfr_init2(v, bits);
  mpfr_set_d(v, x, MPFR_RNDN);
  mpfr_eint(v, v, MPFR_RNDN);
  const double out = -mpfr_get_d(v, MPFR_RNDN);
  mpfr_clear(v);
  return out;
}

}  // namespace coulomb::testing
