#include "coulomb/numeval.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <string>

#include "coulomb/errors.hpp"

namespace coulomb {

namespace {

constexpr double kEulerGamma = 0.577215664901532860606512090082;
constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kMaxExpArg = std::log(DBL_MAX);

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw DomainError(std::string(what) + " must be positive, got " + std::to_string(x));
}

// Horner evaluation of a Laurent polynomial in double, with the matching sum
// of |c_k| |r|^k used as the rounding-error scale.
struct PolyValue {
  double value = 0.0;
  double magnitude = 0.0;
  int terms = 0;
};

PolyValue horner(const RatPoly& p, double r) {
  PolyValue out;
  if (p.is_zero()) return out;
  out.terms = p.degree() - p.lowest_degree() + 1;
  const double ar = std::fabs(r);
  for (int k = p.degree(); k >= 0; --k) {
    const double c = p.coeff(k).get_d();
    out.value = out.value * r + c;
    out.magnitude = out.magnitude * ar + std::fabs(c);
  }
  if (p.lowest_degree() < 0) {
    double neg = 0.0;
    double neg_mag = 0.0;
    for (int k = p.lowest_degree(); k <= -1; ++k) {
      const double c = p.coeff(k).get_d();
      neg = (neg + c) / r;
      neg_mag = (neg_mag + std::fabs(c)) / ar;
    }
    out.value += neg;
    out.magnitude += neg_mag;
  }
  return out;
}

}  // namespace

const char* to_string(EvalMethod method) {
  switch (method) {
    case EvalMethod::direct:
      return "direct";
    case EvalMethod::series:
      return "series";
    case EvalMethod::asymptotic:
      return "asymptotic";
  }
  return "unknown";
}

EvalResult ei_one_neg_series(double x, bool scaled) {
  require_positive(x, "Ei argument");
  // Ei(x) = gamma + ln x + sum_{k>=1} x^k / (k k!); every series term is positive.
  double term = 1.0;
  double sum = 0.0;
  int k = 1;
  for (; k < 1000; ++k) {
    term *= x / k;
    const double contrib = term / k;
    sum += contrib;
    if (contrib < 0.25 * kEps * sum) break;
  }
  const double log_x = std::log(x);
  const double ei = kEulerGamma + log_x + sum;
  const double scale = kEulerGamma + 2.0 * std::fabs(log_x) + (k + 2) * sum;
  EvalResult out;
  out.method = EvalMethod::series;
  out.value = -ei;
  out.est_rel_error = ei == 0.0 ? std::numeric_limits<double>::infinity() : kEps * scale / std::fabs(ei);
  if (scaled) {
    out.value *= std::exp(-x);
    out.est_rel_error += kEps * (1.0 + x);
  }
  return out;
}

EvalResult ei_one_neg_asymptotic(double x, bool scaled) {
  require_positive(x, "Ei argument");
  // e^{-x} Ei(x) ~ (1/x) sum_k k!/x^k, truncated before the smallest term.
  double term = 1.0;
  double sum = 1.0;
  int k = 1;
  for (; k < 10000; ++k) {
    const double next = term * k / x;
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < 0.25 * kEps * sum) break;
  }
  const double scaled_ei = sum / x;
  EvalResult out;
  out.method = EvalMethod::asymptotic;
  out.est_rel_error = kEps * (k + 2) + term / sum;
  if (scaled) {
    out.value = -scaled_ei;
    return out;
  }
  if (x + std::log(scaled_ei) > kMaxExpArg) {
    throw OverflowSignal("Ei(1,-x) overflows double at x=" + std::to_string(x) +
                         "; use ei_one_neg_scaled or the extended evaluator");
  }
  out.value = -scaled_ei * std::exp(x);
  out.est_rel_error += kEps * (1.0 + x);
  return out;
}

EvalResult ei_one_neg(double x) {
  require_positive(x, "Ei argument");
  return x <= kEiCrossover ? ei_one_neg_series(x) : ei_one_neg_asymptotic(x);
}

EvalResult ei_one_neg_scaled(double x) {
  require_positive(x, "Ei argument");
  return x <= kEiCrossover ? ei_one_neg_series(x, true) : ei_one_neg_asymptotic(x, true);
}

BigFloat ei_one_neg_extended(const BigFloat& x) {
  if (!(BigFloat(0.0, 2) < x)) throw DomainError("Ei argument must be positive");
  const mpfr_prec_t out_bits = x.precision();
  const mpfr_prec_t work = out_bits + 64;
  BigFloat xw(work);
  mpfr_set(xw.get(), x.get(), MPFR_RNDN);

  BigFloat term(1.0, work);
  BigFloat sum(0.0, work);
  BigFloat contrib(work);
  for (unsigned long k = 1;; ++k) {
    term *= xw;
    mpfr_div_ui(term.get(), term.get(), k, MPFR_RNDN);
    mpfr_div_ui(contrib.get(), term.get(), k, MPFR_RNDN);
    sum += contrib;
    // Terms decrease once k > x; stop when they no longer move the sum.
    if (mpfr_cmp_ui(xw.get(), k) < 0 && mpfr_get_exp(contrib.get()) < mpfr_get_exp(sum.get()) - work - 2) break;
  }
  BigFloat gamma(work);
  mpfr_const_euler(gamma.get(), MPFR_RNDN);
  BigFloat ei = gamma + log(xw) + sum;
  BigFloat out(out_bits);
  mpfr_neg(out.get(), ei.get(), MPFR_RNDN);
  return out;
}

EvalResult eval_form(const ExpEiForm& f, double r) {
  require_positive(r, "radius");
  if (f.variable != Variable::r) throw std::invalid_argument("eval_form expects an r-variable form");
  const double kappa = f.kappa.get_d();
  const double t = kappa * r;

  const PolyValue plus = horner(f.q_plus, r);
  const PolyValue minus = horner(f.q_minus, r);
  const PolyValue ei_poly = horner(f.q_ei, r);
  const int max_terms = std::max({plus.terms, minus.terms, ei_poly.terms, 1});
  const double horner_eps = kEps * (2.0 * max_terms + 2.0);
  // exp(t) inherits the relative error of t itself.
  const double exp_eps = kEps * (2.0 + t);

  EvalResult out;
  const double decay = std::exp(-t);
  const double minus_term = minus.value * decay;
  double error_abs = (horner_eps + exp_eps) * minus.magnitude * decay;

  if (f.q_plus.is_zero() && f.q_ei.is_zero()) {
    out.value = minus_term;
    out.method = EvalMethod::direct;
    out.magnitude = minus.magnitude * decay;
  } else {
    // q_ei e^{-t} Ei(1,-2t) = q_ei e^{t} [e^{-2t} Ei(1,-2t)], so both growing
    // buckets share the factor e^{t}.
    double scaled = 0.0;
    double scaled_err = 0.0;
    out.method = EvalMethod::direct;
    if (!f.q_ei.is_zero()) {
      const EvalResult s = ei_one_neg_scaled(2.0 * t);
      scaled = s.value;
      scaled_err = s.est_rel_error;
      out.method = s.method;
    }
    const double inner = plus.value + ei_poly.value * scaled;
    const double inner_mag = plus.magnitude + ei_poly.magnitude * std::fabs(scaled);
    if (t > kMaxExpArg) {
      throw OverflowSignal("e^{kappa r} overflows double at r=" + std::to_string(r) +
                           "; use eval_form_extended");
    }
    const double growth = std::exp(t);
    out.value = inner * growth + minus_term;
    if (!std::isfinite(out.value)) throw OverflowSignal("form value overflows double at r=" + std::to_string(r));
    out.magnitude = inner_mag * growth + minus.magnitude * decay;
    error_abs += (horner_eps + exp_eps) * inner_mag * growth;
    error_abs += scaled_err * std::fabs(ei_poly.value * scaled) * growth;
  }
  error_abs += kEps * std::fabs(out.value);
  out.est_rel_error =
      out.value == 0.0 ? std::numeric_limits<double>::infinity() : error_abs / std::fabs(out.value);
  return out;
}

BigFloat eval_form_extended(const ExpEiForm& f, const BigRational& r, mpfr_prec_t precision_bits) {
  if (precision_bits < 64) throw std::invalid_argument("precision_bits must be >= 64");
  if (r <= 0) throw DomainError("radius must be positive");
  if (f.variable != Variable::r) throw std::invalid_argument("eval_form_extended expects an r-variable form");
  const mpfr_prec_t work = precision_bits + 64;

  const BigRational t_exact = f.kappa * r;
  const BigFloat t(t_exact, work);
  const BigFloat growth = exp(t);
  const BigFloat decay = exp(-t);

  BigFloat total = BigFloat(f.q_minus.evaluate(r), work) * decay;
  if (!f.q_plus.is_zero()) total += BigFloat(f.q_plus.evaluate(r), work) * growth;
  if (!f.q_ei.is_zero()) {
    const BigFloat ei = ei_one_neg_extended(BigFloat(BigRational(2 * t_exact), work));
    total += BigFloat(f.q_ei.evaluate(r), work) * decay * ei;
  }
  BigFloat out(precision_bits);
  mpfr_set(out.get(), total.get(), MPFR_RNDN);
  return out;
}

}  // namespace coulomb
