#include "coulomb/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "coulomb/errors.hpp"
#include "coulomb/numeval.hpp"

namespace coulomb {

namespace {

double max_abs_coefficient(const RatPoly& p) {
  double out = 0.0;
  for (const auto& c : p.coefficients()) out = std::max(out, std::fabs(c.get_d()));
  return out;
}

std::vector<double> to_doubles(const RatPoly& p) {
  // Plain polynomial (lowest degree >= 0) as a dense double array from x^0.
  std::vector<double> out(p.is_zero() ? 0 : static_cast<std::size_t>(p.degree()) + 1, 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.coeff(static_cast<int>(k)).get_d();
  return out;
}

double horner(std::span<const double> c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double horner_abs(std::span<const double> c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * std::fabs(x) + std::fabs(*it);
  return acc;
}

// Taylor coefficients of the polynomial c about x0: c(x0 + h) = sum t_i h^i.
std::vector<double> taylor_shift(std::vector<double> c, double x0) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += x0 * c[j];
  }
  return c;
}

QuadratureValue integrate(const auto& f, double a, double b, unsigned max_depth = 15) {
  QuadratureValue out;
  if (b <= a) return out;
  double error = 0.0;
  out.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, 1e-11, &error);
  out.est_abs_error = error;
  return out;
}

std::string hyper_label(int n_r, int m) { return "n_r=" + std::to_string(n_r) + ",m=" + std::to_string(m); }

void require_pv_args(int n_r, int m, double x) {
  if (n_r < 0 || m < 1) throw std::invalid_argument("need n_r >= 0 and m >= 1");
  if (!(x > 0.0)) throw DomainError("x must be positive");
}

// Upper integration limit and a bound for integral_L^inf s^d e^{-s} ds / (s - x)
// given the polynomial magnitude at L.
double upper_limit(int n_r, int m, double x) { return x + 60.0 + 10.0 * (m + n_r); }

double tail_bound(double magnitude_at_l, int degree, double l, double x) {
  return std::exp(-l) * magnitude_at_l / (1.0 - degree / l) / (l - x);
}

}  // namespace

std::string subject_label(const QuantumNumbers& qn) {
  return "n=" + std::to_string(qn.n()) + ",l=" + std::to_string(qn.l());
}

ExpEiForm radial_operator(const ExpEiForm& f, int l) {
  const ExpEiForm d1 = derivative(f);
  const ExpEiForm d2 = derivative(d1);
  const RatPoly r2 = RatPoly::monomial(1, 2);
  const RatPoly two_r = RatPoly::monomial(2, 1);
  const RatPoly potential = RatPoly(0, {BigRational(-l * (l + 1)), 2, -f.kappa * f.kappa});
  return r2 * d2 + two_r * d1 + potential * f;
}

VerificationReport ode_residual_symbolic(const ExpEiForm& f, const QuantumNumbers& qn) {
  VerificationReport rep;
  rep.subject = qn;
  rep.subject_label = subject_label(qn);
  rep.check_name = "ode_residual_symbolic";
  rep.exact = true;
  if (f.kappa != qn.kappa()) {
    rep.details = "form kappa does not match quantum numbers";
    rep.residual_norm = std::numeric_limits<double>::infinity();
    return rep;
  }
  const ExpEiForm res = radial_operator(f, qn.l());
  rep.residual_norm =
      std::max({max_abs_coefficient(res.q_plus), max_abs_coefficient(res.q_minus), max_abs_coefficient(res.q_ei)});
  rep.passed = res.is_zero();
  if (!rep.passed) {
    rep.details = "residual e^{+kr}: " + res.q_plus.to_string("r") + "; e^{-kr}: " + res.q_minus.to_string("r") +
                  "; Ei: " + res.q_ei.to_string("r");
  }
  return rep;
}

VerificationReport ode_residual_numeric(const ExpEiForm& f, const QuantumNumbers& qn, std::span<const double> radii) {
  VerificationReport rep;
  rep.subject = qn;
  rep.subject_label = subject_label(qn);
  rep.check_name = "ode_residual_numeric";
  const ExpEiForm d1 = derivative(f);
  const ExpEiForm d2 = derivative(d1);
  const double kappa = qn.kappa().get_d();
  const double centrifugal = qn.l() * (qn.l() + 1.0);
  rep.passed = true;
  for (double r : radii) {
    const EvalResult v0 = eval_form(f, r);
    const EvalResult v1 = eval_form(d1, r);
    const EvalResult v2 = eval_form(d2, r);
    const double coef = -kappa * kappa * r * r + 2.0 * r - centrifugal;
    const double res = r * r * v2.value + 2.0 * r * v1.value + coef * v0.value;
    const double scale = r * r * v2.magnitude + 2.0 * r * v1.magnitude + std::fabs(coef) * v0.magnitude;
    const double rel = scale == 0.0 ? std::fabs(res) : std::fabs(res) / scale;
    rep.residual_norm = std::max(rep.residual_norm, rel);
    if (rel > 1e-9) {
      rep.passed = false;
      std::ostringstream d;
      d << "r=" << r << " rel=" << rel << "; ";
      rep.details += d.str();
    }
  }
  return rep;
}

ProductForm multiply(const ExpEiForm& a, const ExpEiForm& b) {
  if (a.kappa != b.kappa || a.variable != b.variable) {
    throw std::invalid_argument("multiply: incompatible forms");
  }
  using Bucket = std::pair<std::pair<int, int>, const RatPoly*>;
  const Bucket ab[] = {{{1, 0}, &a.q_plus}, {{-1, 0}, &a.q_minus}, {{-1, 1}, &a.q_ei}};
  const Bucket bb[] = {{{1, 0}, &b.q_plus}, {{-1, 0}, &b.q_minus}, {{-1, 1}, &b.q_ei}};
  ProductForm out;
  for (const auto& [ka, pa] : ab) {
    if (pa->is_zero()) continue;
    for (const auto& [kb, pb] : bb) {
      if (pb->is_zero()) continue;
      out[{ka.first + kb.first, ka.second + kb.second}] += *pa * *pb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

ProductForm wronskian(const ExpEiForm& f, const ExpEiForm& g) {
  ProductForm out = multiply(f, derivative(g));
  for (const auto& [key, poly] : multiply(derivative(f), g)) out[key] -= poly;
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

WronskianResult wronskian_symbolic(const ExpEiForm& r1, const ExpEiForm& r2, const QuantumNumbers& qn) {
  WronskianResult res;
  res.w = wronskian(r1, r2);
  auto& rep = res.report;
  rep.subject = qn;
  rep.subject_label = subject_label(qn);
  rep.check_name = "wronskian_symbolic";
  rep.exact = true;

  std::ostringstream details;
  bool clean = true;
  for (const auto& [key, poly] : res.w) {
    if (key == std::pair{0, 0}) continue;
    clean = false;
    rep.residual_norm = std::max(rep.residual_norm, max_abs_coefficient(poly));
    details << "uncancelled bucket (" << key.first << "," << key.second << "): " << poly.to_string("r") << "; ";
  }
  const auto it = res.w.find({0, 0});
  const RatPoly r2w = it == res.w.end() ? RatPoly{} : it->second.shifted(2);
  if (!r2w.is_zero() && r2w.lowest_degree() == 0 && r2w.degree() == 0) {
    res.r2_constant = r2w.coeff(0);
    details << "r^2 W = " << to_string(*res.r2_constant);
  } else {
    clean = false;
    details << "r^2 W not a nonzero constant: " << r2w.to_string("r");
  }
  rep.passed = clean;
  rep.details = details.str();
  return res;
}

WronskianResult wronskian_symbolic(const QuantumNumbers& qn) {
  return wronskian_symbolic(assemble_R1(qn), assemble_R2(qn), qn);
}

double phi2_closed_form(int n_r, int m, double x) {
  require_pv_args(n_r, m, x);
  const std::vector<double> p2 = to_doubles(p2_doublesum(n_r, m));
  const std::vector<double> f1 = to_doubles(hyp1f1_terminating(n_r, m));
  const double norm =
      make_rational(factorial(static_cast<unsigned>(m)), factorial(static_cast<unsigned>(n_r + m))).get_d();
  return norm * horner(p2, x) * std::exp(x) / std::pow(x, m) + horner(f1, x) * ei_one_neg(x).value;
}

QuadratureValue phi2_pv_oracle(int n_r, int m, double x) {
  require_pv_args(n_r, m, x);
  const std::vector<double> f1 = to_doubles(hyp1f1_terminating(n_r, m));
  auto g = [&](double s) { return std::exp(-s) * std::pow(s, m) * horner(f1, s); };
  const double l = upper_limit(n_r, m, x);

  // PV integral = outer pieces + integral_0^delta (g(x+u) - g(x-u))/u du; the
  // g(x)/(s-x) part over the symmetric window integrates to zero.
  // The outer pieces use s = x -/+ e^t, which turns g(s) ds/(s - x) into the
  // smooth -/+ g(x -/+ e^t) dt.
  auto pv_with = [&](double delta) {
    QuadratureValue left = integrate([&](double t) { return g(x - std::exp(t)); }, std::log(delta), std::log(x));
    left.value = -left.value;
    const auto right = integrate([&](double t) { return g(x + std::exp(t)); }, std::log(delta), std::log(l - x));
    // Analytic on the short window; adaptive refinement would only chase the
    // rounding noise of the difference quotient near u = 0.
    const auto mid = integrate([&](double u) { return (g(x + u) - g(x - u)) / u; }, 0.0, delta, 0);
    QuadratureValue v;
    v.value = left.value + right.value + mid.value;
    v.est_abs_error = left.est_abs_error + right.est_abs_error + mid.est_abs_error;
    return v;
  };
  const double delta = std::min(1e-3 * std::max(1.0, x), 0.5 * x);
  const QuadratureValue full = pv_with(delta);
  const QuadratureValue half = pv_with(0.5 * delta);

  const double tail = tail_bound(std::pow(l, m) * horner_abs(f1, l), m + n_r, l, x);
  const double rho = std::exp(-x) * std::pow(x, m);
  QuadratureValue out;
  out.value = full.value / rho;
  out.est_abs_error = (full.est_abs_error + tail + std::fabs(full.value - half.value)) / rho;
  if (!(out.est_abs_error <= 1e-6 * std::fabs(out.value))) {
    throw QuadratureFailure("PV quadrature for " + hyper_label(n_r, m) + " at x=" + std::to_string(x) +
                            " has error estimate " + std::to_string(out.est_abs_error));
  }
  return out;
}

double pole_free_integrand(int n_r, int m, double x, double s) {
  // [Q(s) - Q(x)]/(s - x) with Q(s) = s^m 1F1(s), evaluated as the Taylor
  // polynomial of Q about x with the constant term dropped.
  const std::vector<double> q = to_doubles(hyp1f1_terminating(n_r, m).shifted(m));
  const std::vector<double> t = taylor_shift(q, x);
  return std::exp(-s) * horner(std::span(t).subspan(1), s - x);
}

QuadratureValue pole_free_part(int n_r, int m, double x) {
  require_pv_args(n_r, m, x);
  const std::vector<double> q = to_doubles(hyp1f1_terminating(n_r, m).shifted(m));
  const std::vector<double> t = taylor_shift(q, x);
  const std::span<const double> quotient = std::span(t).subspan(1);
  const double l = upper_limit(n_r, m, x);
  const auto body = integrate([&](double s) { return std::exp(-s) * horner(quotient, s - x); }, 0.0, l);
  const double tail = tail_bound(horner_abs(q, l) + std::fabs(horner(q, x)), m + n_r, l, x);
  const double prefactor = std::exp(x) / std::pow(x, m);
  return {prefactor * body.value, prefactor * (body.est_abs_error + tail)};
}

VerificationReport phi2_pv_check(int n_r, int m, std::span<const double> x_samples, double tolerance) {
  VerificationReport rep;
  rep.subject_label = hyper_label(n_r, m);
  rep.check_name = "phi2_pv";
  rep.passed = true;
  std::ostringstream details;
  for (double x : x_samples) {
    try {
      const QuadratureValue pv = phi2_pv_oracle(n_r, m, x);
      const double closed = phi2_closed_form(n_r, m, x);
      const double rel = std::fabs(pv.value - closed) / std::fabs(closed);
      rep.residual_norm = std::max(rep.residual_norm, rel);
      if (!(rel <= tolerance)) {
        rep.passed = false;
        details << "x=" << x << " rel=" << rel << "; ";
      }
    } catch (const QuadratureFailure& e) {
      rep.passed = false;
      details << "x=" << x << " " << e.what() << "; ";
    }
  }
  rep.details = details.str();
  return rep;
}

VerificationReport pole_split_identity_check(int n_r, int m, std::span<const double> x_samples) {
  VerificationReport rep;
  rep.subject_label = hyper_label(n_r, m);
  rep.check_name = "pole_split_identity";
  rep.passed = true;
  const std::vector<double> f1 = to_doubles(hyp1f1_terminating(n_r, m));
  std::ostringstream details;
  for (double x : x_samples) {
    try {
      const QuadratureValue split = pole_free_part(n_r, m, x);
      const double rhs = split.value + horner(f1, x) * ei_one_neg(x).value;
      const QuadratureValue pv = phi2_pv_oracle(n_r, m, x);
      const double rel = std::fabs(rhs - pv.value) / std::fabs(pv.value);
      rep.residual_norm = std::max(rep.residual_norm, rel);
      if (!(rel <= 1e-8)) {
        rep.passed = false;
        details << "x=" << x << " rel=" << rel << "; ";
      }
    } catch (const QuadratureFailure& e) {
      rep.passed = false;
      details << "x=" << x << " " << e.what() << "; ";
    }
  }
  rep.details = details.str();
  return rep;
}

QuadratureValue first_integral_quadrature(int power, double x) {
  if (power < 1) throw std::invalid_argument("power must be >= 1");
  const std::vector<double> mono = [&] {
    std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
    c.back() = 1.0;
    return c;
  }();
  // Direct difference quotient away from the removable point; near it, the
  // exact binomial expansion of (s^N - x^N)/(s - x) in h = s - x.
  const std::vector<double> t = taylor_shift(mono, x);
  const double xn = std::pow(x, power);
  const double near = 1e-2 * std::max(1.0, x);
  auto integrand = [&](double s) {
    const double h = s - x;
    const double q = std::fabs(h) > near ? (std::pow(s, power) - xn) / h : horner(std::span(t).subspan(1), h);
    return std::exp(-s) * q;
  };
  const double l = upper_limit(0, power, x);
  QuadratureValue out = integrate(integrand, 0.0, std::min(x, l));
  const QuadratureValue right = integrate(integrand, std::min(x, l), l);
  out.value += right.value;
  out.est_abs_error += right.est_abs_error + tail_bound(std::pow(l, power) + xn, power, l, x);
  return out;
}

VerificationReport first_integral_closed_form_check(int n_r, int m) {
  if (n_r < 0 || m < 1) throw std::invalid_argument("need n_r >= 0 and m >= 1");
  VerificationReport rep;
  rep.subject_label = hyper_label(n_r, m);
  rep.check_name = "first_integral_closed_form";
  rep.passed = true;
  std::ostringstream details;
  for (int k = 0; k <= n_r; ++k) {
    const int power = m + k;
    for (double x : {0.5, 1.0, 2.0}) {
      double closed = 0.0;
      for (int j = 0; j < power; ++j) {
        closed += factorial(static_cast<unsigned>(power - 1 - j)).get_d() * std::pow(x, j);
      }
      const QuadratureValue quad = first_integral_quadrature(power, x);
      const double rel = std::fabs(quad.value - closed) / std::fabs(closed);
      rep.residual_norm = std::max(rep.residual_norm, rel);
      if (quad.est_abs_error > 1e-6 * std::fabs(closed)) {
        throw QuadratureFailure("first integral quadrature error estimate too large at N=" + std::to_string(power));
      }
      if (!(rel <= 1e-8)) {
        rep.passed = false;
        details << "N=" << power << " x=" << x << " rel=" << rel << "; ";
      }
    }
  }
  rep.details = details.str();
  return rep;
}

VerificationReport p2_equivalence_check(int n_r, int m) {
  VerificationReport rep;
  rep.subject_label = hyper_label(n_r, m);
  rep.check_name = "p2_equivalence";
  rep.exact = true;
  const RatPoly a = p2_doublesum(n_r, m);
  const RatPoly diff = a - p2_simplified(n_r, m);
  rep.residual_norm = max_abs_coefficient(diff);
  std::ostringstream details;
  if (!diff.is_zero()) details << "forms differ by " << diff.to_string() << "; ";
  for (const auto& c : a.coefficients()) {
    if (c.get_den() != 1) {
      details << "non-integer coefficient " << to_string(c) << "; ";
      break;
    }
  }
  if (a.lowest_degree() < 0 || a.coeff(n_r + m - 1) != (n_r % 2 == 0 ? 1 : -1)) details << "wrong leading coefficient; ";
  rep.details = details.str();
  rep.passed = rep.details.empty();
  return rep;
}

std::vector<VerificationReport> golden_table_check(std::span<const GoldenEntry> entries) {
  std::vector<VerificationReport> out;
  for (const GoldenEntry& entry : entries) {
    VerificationReport rep;
    rep.check_name = "golden_table";
    rep.exact = true;
    try {
      const QuantumNumbers qn(entry.n, entry.l);
      rep.subject = qn;
      rep.subject_label = subject_label(qn);
      const ExpEiForm r2 = assemble_R2(qn);
      const RatPoly dp = r2.q_plus - entry.q_plus;
      const RatPoly de = r2.q_ei - entry.q_ei;
      const BigRational arg = -2 * r2.kappa;
      rep.residual_norm = std::max(max_abs_coefficient(dp), max_abs_coefficient(de));
      rep.passed = dp.is_zero() && de.is_zero() && r2.q_minus.is_zero() && arg == entry.ei_arg_scale;
      if (!rep.passed) {
        std::ostringstream d;
        if (!dp.is_zero()) d << "e^{r/n} part differs by " << dp.to_string("r") << "; ";
        if (!de.is_zero()) d << "Ei part differs by " << de.to_string("r") << "; ";
        if (arg != entry.ei_arg_scale) d << "Ei argument scale " << to_string(arg) << " vs " << to_string(entry.ei_arg_scale);
        rep.details = d.str();
      }
    } catch (const InvalidQuantumNumbers& e) {
      rep.subject_label = "n=" + std::to_string(entry.n) + ",l=" + std::to_string(entry.l);
      rep.details = e.what();
    }
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<VerificationReport> golden_table_check() {
  const auto table = golden_table();
  return golden_table_check(table);
}

}  // namespace coulomb
