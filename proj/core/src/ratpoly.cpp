#include "coulomb/ratpoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "coulomb/errors.hpp"

namespace coulomb {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ZeroDenominator("rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

BigRational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string num_text(text.substr(0, slash));
  const std::string den_text = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  auto valid = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!valid(num_text, true) || !valid(den_text, false)) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  const std::string num_clean = num_text[0] == '+' ? num_text.substr(1) : num_text;
  return make_rational(BigInt(num_clean), BigInt(den_text));
}

std::string to_string(const BigRational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

BigInt factorial(unsigned k) {
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), k);
  return result;
}

BigInt pochhammer(long a, unsigned k) {
  BigInt result = 1;
  for (unsigned i = 0; i < k; ++i) {
    result *= a + static_cast<long>(i);
    if (result == 0) break;
  }
  return result;
}

RatPoly::RatPoly(BigRational constant) : coeffs_{std::move(constant)} { normalize(); }

RatPoly::RatPoly(int lowest_degree, std::vector<BigRational> coefficients)
    : lowest_(lowest_degree), coeffs_(std::move(coefficients)) {
  normalize();
}

RatPoly RatPoly::monomial(BigRational coefficient, int power) {
  return RatPoly(power, {std::move(coefficient)});
}

void RatPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const BigRational& c) { return c != 0; });
  lowest_ += static_cast<int>(first - coeffs_.begin());
  coeffs_.erase(coeffs_.begin(), first);
  if (coeffs_.empty()) lowest_ = 0;
}

BigRational RatPoly::coeff(int power) const {
  if (is_zero() || power < lowest_ || power > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(power - lowest_)];
}

RatPoly RatPoly::derivative() const {
  std::vector<BigRational> out;
  out.reserve(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out.push_back(coeffs_[i] * (lowest_ + static_cast<int>(i)));
  }
  return RatPoly(lowest_ - 1, std::move(out));
}

BigRational RatPoly::evaluate(const BigRational& x) const {
  if (is_zero()) return 0;
  // Nonnegative powers by Horner in x, negative powers by Horner in 1/x.
  BigRational positive = 0;
  for (int k = degree(); k >= 0; --k) positive = positive * x + coeff(k);
  if (lowest_ >= 0) return positive;
  if (x == 0) throw ZeroDenominator("Laurent polynomial with negative powers evaluated at 0");
  const BigRational inv = 1 / x;
  BigRational negative = 0;
  for (int k = lowest_; k <= -1; ++k) negative = (negative + coeff(k)) * inv;
  return positive + negative;
}

RatPoly RatPoly::rescaled(const BigRational& scale) const {
  if (is_zero()) return {};
  if (scale == 0) {
    if (lowest_ < 0) throw ZeroDenominator("Laurent polynomial rescaled by 0");
    return RatPoly(coeff(0));
  }
  std::vector<BigRational> out(coeffs_.size());
  BigRational factor = 1;
  const BigRational step = lowest_ >= 0 ? scale : 1 / scale;
  for (int k = 0; k < std::abs(lowest_); ++k) factor *= step;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i] = coeffs_[i] * factor;
    factor *= scale;
  }
  return RatPoly(lowest_, std::move(out));
}

RatPoly RatPoly::shifted(int k) const {
  RatPoly out = *this;
  if (!out.is_zero()) out.lowest_ += k;
  return out;
}

RatPoly& RatPoly::operator+=(const RatPoly& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  const int lo = std::min(lowest_, rhs.lowest_);
  const int hi = std::max(degree(), rhs.degree());
  std::vector<BigRational> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[static_cast<std::size_t>(lowest_ - lo) + i] = coeffs_[i];
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
    out[static_cast<std::size_t>(rhs.lowest_ - lo) + i] += rhs.coeffs_[i];
  }
  lowest_ = lo;
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& rhs) { return *this += -rhs; }

RatPoly operator*(const RatPoly& lhs, const RatPoly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<BigRational> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  }
  return RatPoly(lhs.lowest_ + rhs.lowest_, std::move(out));
}

RatPoly& RatPoly::operator*=(const RatPoly& rhs) { return *this = *this * rhs; }

RatPoly& RatPoly::operator*=(const BigRational& scalar) {
  if (scalar == 0) return *this = RatPoly{};
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

RatPoly RatPoly::operator-() const {
  RatPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool operator==(const RatPoly& lhs, const RatPoly& rhs) {
  return lhs.lowest_ == rhs.lowest_ && lhs.coeffs_ == rhs.coeffs_;
}

std::string RatPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const BigRational& c = coeffs_[i];
    if (c == 0) continue;
    const int power = lowest_ + static_cast<int>(i);
    const bool negative = c < 0;
    const BigRational magnitude = negative ? BigRational(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const bool unit = magnitude == 1;
    if (!unit || power == 0) out += coulomb::to_string(magnitude);
    if (power != 0) {
      if (!unit) out += "*";
      out += var;
      if (power != 1) out += "^" + std::to_string(power);
    }
  }
  return out;
}

}  // namespace coulomb
