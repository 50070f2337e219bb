#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coulomb/closedform.hpp"

namespace coulomb {

struct VerificationReport {
  std::optional<QuantumNumbers> subject;
  std::string subject_label;  ///< "n=3,l=1" or "n_r=1,m=3" for hypergeometric-level checks
  std::string check_name;
  bool passed = false;
  bool exact = false;          ///< symbolic check: residual_norm == 0 means identically zero
  double residual_norm = 0.0;  ///< max |coefficient| (exact checks) or max relative deviation
  std::string details;
};

std::string subject_label(const QuantumNumbers& qn);

// ---------------------------------------------------------------------------
// Symbolic checks

/// r^2 f'' + 2 r f' + (-kappa^2 r^2 + 2 r - l(l+1)) f, exactly.
ExpEiForm radial_operator(const ExpEiForm& f, int l);

/// Passes iff radial_operator(f, qn.l()) is identically zero in all three buckets.
VerificationReport ode_residual_symbolic(const ExpEiForm& f, const QuantumNumbers& qn);

/// Numeric re-evaluation of the residual at the given radii. Passes iff each
/// |residual| <= 1e-9 * (sum of |term| magnitudes).
VerificationReport ode_residual_numeric(const ExpEiForm& f, const QuantumNumbers& qn, std::span<const double> radii);

/// Sum over buckets e^{k kappa r} Ei(1,-2 kappa r)^j, keyed by (k, j); the
/// closure of ExpEiForm under multiplication.
using ProductForm = std::map<std::pair<int, int>, RatPoly>;

ProductForm multiply(const ExpEiForm& a, const ExpEiForm& b);

/// f g' - f' g.
ProductForm wronskian(const ExpEiForm& f, const ExpEiForm& g);

struct WronskianResult {
  ProductForm w;
  std::optional<BigRational> r2_constant;  ///< r^2 W when it is a constant
  VerificationReport report;
};

/// Passes iff every bucket except (0, 0) cancels and r^2 W is a nonzero constant.
WronskianResult wronskian_symbolic(const ExpEiForm& r1, const ExpEiForm& r2, const QuantumNumbers& qn);
WronskianResult wronskian_symbolic(const QuantumNumbers& qn);

// ---------------------------------------------------------------------------
// Numeric Cauchy-integral oracle for the hypergeometric second solution

/// (m!/(n_r+m)!) P2(x) e^x / x^m + 1F1(-n_r; m+1; x) Ei(1,-x).
double phi2_closed_form(int n_r, int m, double x);

struct QuadratureValue {
  double value = 0.0;
  double est_abs_error = 0.0;
};

/// (1/rho(x)) PV integral over (0, inf) of rho(s) 1F1(s) / (s - x), rho = e^{-s} s^m.
/// Throws QuadratureFailure if the estimated relative error exceeds 1e-6.
QuadratureValue phi2_pv_oracle(int n_r, int m, double x);

/// Pole-free integral x^{-m} e^x * integral e^{-s}[s^m F(s) - x^m F(x)]/(s-x) ds.
QuadratureValue pole_free_part(int n_r, int m, double x);

/// The integrand of pole_free_part at s (without the x^{-m} e^x prefactor).
double pole_free_integrand(int n_r, int m, double x, double s);

/// phi2_closed_form versus phi2_pv_oracle at each x, `tolerance` relative.
VerificationReport phi2_pv_check(int n_r, int m, std::span<const double> x_samples, double tolerance = 1e-6);

/// Pole-free part + F(x) Ei(1,-x) versus phi2_pv_oracle, 1e-8 relative, per x.
VerificationReport pole_split_identity_check(int n_r, int m, std::span<const double> x_samples);

/// integral e^{-s}(s^N - x^N)/(s - x) ds = sum_{j<N} (N-1-j)! x^j, for N = m+k,
/// k = 0..n_r and x in {0.5, 1, 2}; 1e-8 relative.
VerificationReport first_integral_closed_form_check(int n_r, int m);

/// Direct quadrature of integral_0^inf e^{-s}(s^N - x^N)/(s-x) ds.
QuadratureValue first_integral_quadrature(int power, double x);

/// Double-sum and simplified P2 agree exactly, coefficients are integers and
/// the leading coefficient is (-1)^n_r.
VerificationReport p2_equivalence_check(int n_r, int m);

// ---------------------------------------------------------------------------
// Golden table of published second solutions

struct GoldenEntry {
  int n = 1;
  int l = 0;
  RatPoly q_plus;               ///< multiplies e^{r/n}
  RatPoly q_ei;                 ///< multiplies e^{-r/n} Ei(1, ei_arg_scale * r)
  BigRational ei_arg_scale;     ///< -2/n
};

/// The ten published closed forms R2(n, l, r) for n <= 4.
std::vector<GoldenEntry> golden_table();

std::vector<VerificationReport> golden_table_check(std::span<const GoldenEntry> entries);
std::vector<VerificationReport> golden_table_check();

}  // namespace coulomb
