#include "coulomb/closedform.hpp"

#include <stdexcept>
#include <string>

#include "coulomb/errors.hpp"

namespace coulomb {

namespace {

void require_compatible(const ExpEiForm& a, const ExpEiForm& b) {
  if (a.variable != b.variable || a.kappa != b.kappa) {
    throw std::invalid_argument("ExpEiForm operands use different variables or kappa");
  }
}

void require_indices(int n_r, int m, int min_m) {
  if (n_r < 0 || m < min_m) {
    throw std::invalid_argument("polynomial indices out of range: n_r=" + std::to_string(n_r) +
                                " m=" + std::to_string(m));
  }
}

BigRational rational_power(const BigRational& base, int k) {
  BigRational out = 1;
  const BigRational step = k >= 0 ? base : BigRational(1 / base);
  for (int i = 0; i < std::abs(k); ++i) out *= step;
  return out;
}

// p(x) with x = 2 kappa r, times (2 kappa r)^shift, as a Laurent polynomial in r.
RatPoly to_r_variable(const RatPoly& p_of_x, const BigRational& kappa, int shift) {
  const BigRational two_kappa = 2 * kappa;
  return (p_of_x.rescaled(two_kappa) * rational_power(two_kappa, shift)).shifted(shift);
}

}  // namespace

QuantumNumbers::QuantumNumbers(int n, int l) : n_(n), l_(l) {
  if (n < 1 || l < 0 || l > n - 1) {
    throw InvalidQuantumNumbers("invalid quantum numbers (n=" + std::to_string(n) + ", l=" +
                                std::to_string(l) + "): need n >= 1 and 0 <= l <= n-1");
  }
  kappa_ = make_rational(1, n);
}

BigRational energy(const QuantumNumbers& qn) {
  return make_rational(-1, BigInt(2) * qn.n() * qn.n());
}

ExpEiForm& ExpEiForm::operator+=(const ExpEiForm& rhs) {
  require_compatible(*this, rhs);
  q_plus += rhs.q_plus;
  q_minus += rhs.q_minus;
  q_ei += rhs.q_ei;
  return *this;
}

ExpEiForm& ExpEiForm::operator-=(const ExpEiForm& rhs) {
  require_compatible(*this, rhs);
  q_plus -= rhs.q_plus;
  q_minus -= rhs.q_minus;
  q_ei -= rhs.q_ei;
  return *this;
}

ExpEiForm& ExpEiForm::operator*=(const RatPoly& factor) {
  q_plus *= factor;
  q_minus *= factor;
  q_ei *= factor;
  return *this;
}

ExpEiForm& ExpEiForm::operator*=(const BigRational& factor) {
  q_plus *= factor;
  q_minus *= factor;
  q_ei *= factor;
  return *this;
}

ExpEiForm derivative(const ExpEiForm& f) {
  ExpEiForm out;
  out.kappa = f.kappa;
  out.variable = f.variable;
  out.q_plus = f.q_plus.derivative() + f.kappa * f.q_plus - f.q_ei.shifted(-1);
  out.q_minus = f.q_minus.derivative() - f.kappa * f.q_minus;
  out.q_ei = f.q_ei.derivative() - f.kappa * f.q_ei;
  return out;
}

RatPoly laguerre_L1(int n_r, int m) {
  require_indices(n_r, m, 0);
  std::vector<BigRational> c(static_cast<std::size_t>(n_r) + 1);
  const BigInt top = factorial(static_cast<unsigned>(n_r + m));
  for (int j = 0; j <= n_r; ++j) {
    BigInt den = factorial(static_cast<unsigned>(n_r - j)) * factorial(static_cast<unsigned>(m + j)) *
                 factorial(static_cast<unsigned>(j));
    c[static_cast<std::size_t>(j)] = make_rational(j % 2 == 0 ? top : BigInt(-top), den);
  }
  return RatPoly(0, std::move(c));
}

RatPoly hyp1f1_terminating(int n_r, int m) {
  require_indices(n_r, m, 0);
  std::vector<BigRational> c(static_cast<std::size_t>(n_r) + 1);
  for (int k = 0; k <= n_r; ++k) {
    const auto uk = static_cast<unsigned>(k);
    c[uk] = make_rational(pochhammer(-n_r, uk), pochhammer(m + 1, uk) * factorial(uk));
  }
  return RatPoly(0, std::move(c));
}

RatPoly p2_doublesum(int n_r, int m) {
  require_indices(n_r, m, 1);
  const BigRational prefactor =
      make_rational(factorial(static_cast<unsigned>(n_r + m)), factorial(static_cast<unsigned>(m)));
  std::vector<BigRational> c(static_cast<std::size_t>(n_r + m));
  for (int k = 0; k <= n_r; ++k) {
    const auto uk = static_cast<unsigned>(k);
    const BigRational outer = make_rational(pochhammer(-n_r, uk), pochhammer(m + 1, uk) * factorial(uk));
    if (outer == 0) continue;
    for (int j = 0; j <= m + k - 1; ++j) {
      c[static_cast<std::size_t>(j)] += outer * factorial(static_cast<unsigned>(m + k - 1 - j));
    }
  }
  for (auto& v : c) v *= prefactor;
  return RatPoly(0, std::move(c));
}

RatPoly p2_simplified(int n_r, int m) {
  require_indices(n_r, m, 1);
  const auto fac = [](int k) { return factorial(static_cast<unsigned>(k)); };
  std::vector<BigRational> c(static_cast<std::size_t>(n_r + m));

  // Powers x^0 .. x^{m-1}: (n_r+p)! (m-p-1)! / p!, all positive.
  for (int p = 0; p < m; ++p) {
    c[static_cast<std::size_t>(p)] = make_rational(fac(n_r + p) * fac(m - p - 1), fac(p));
  }

  // Powers x^{m+p}, p = 0 .. n_r-1 (empty when n_r = 0):
  //   -(n_r+m)!/(m+p)! * (-1)^p/p! * sum_{k=m+p+1}^{n_r+m} (1/k) prod_{j=1}^{p} (n_r+m+j-k)
  const BigInt top = fac(n_r + m);
  for (int p = 0; p < n_r; ++p) {
    BigRational tail = 0;
    for (int k = m + p + 1; k <= n_r + m; ++k) {
      BigInt product = 1;
      for (int j = 1; j <= p; ++j) product *= n_r + m + j - k;
      tail += make_rational(product, k);
    }
    BigRational term = make_rational(top, fac(m + p) * fac(p)) * tail;
    if (p % 2 == 1) term = -term;
    c[static_cast<std::size_t>(m + p)] = -term;
  }
  return RatPoly(0, std::move(c));
}

ExpEiForm assemble_R1(const QuantumNumbers& qn) {
  ExpEiForm f;
  f.kappa = qn.kappa();
  f.q_minus = to_r_variable(laguerre_L1(qn.n_r(), qn.m()), qn.kappa(), qn.l());
  return f;
}

ExpEiForm assemble_R2(const QuantumNumbers& qn) {
  ExpEiForm f;
  f.kappa = qn.kappa();
  const BigRational inv_nr_fact = make_rational(1, factorial(static_cast<unsigned>(qn.n_r())));
  f.q_plus = to_r_variable(p2_doublesum(qn.n_r(), qn.m()), qn.kappa(), -qn.l() - 1) * inv_nr_fact;
  f.q_ei = to_r_variable(laguerre_L1(qn.n_r(), qn.m()), qn.kappa(), qn.l());
  return f;
}

std::vector<TableEntry> paper_units_table(int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  std::vector<TableEntry> out;
  for (int n = 1; n <= n_max; ++n) {
    for (int l = 0; l < n; ++l) {
      QuantumNumbers qn(n, l);
      out.push_back({qn, assemble_R1(qn), assemble_R2(qn)});
    }
  }
  return out;
}

}  // namespace coulomb
