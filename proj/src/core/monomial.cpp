#include "sigmapi/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sigmapi/errors.hpp"

namespace sigmapi {

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::BadExponent, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

namespace {

Rational add(Rational a, Rational b, int sign) {
  const std::int64_t g = std::gcd(a.den, b.den);
  std::int64_t lhs = 0, rhs = 0, num = 0, den = 0;
  const bool overflow = __builtin_mul_overflow(a.num, b.den / g, &lhs) ||
                        __builtin_mul_overflow(sign * b.num, a.den / g, &rhs) ||
                        __builtin_add_overflow(lhs, rhs, &num) ||
                        __builtin_mul_overflow(a.den / g, b.den, &den);
  if (overflow) throw Error(ErrorCode::BadExponent, "rational exponent overflow");
  return Rational::make(num, den);
}

}  // namespace

Rational operator+(Rational a, Rational b) { return add(a, b, 1); }
Rational operator-(Rational a, Rational b) { return add(a, b, -1); }

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.rational_ && b.rational_) return Exponent(*a.rational_ + *b.rational_);
  return Exponent::decimal(a.value_ + b.value_);
}

Exponent operator-(const Exponent& a, const Exponent& b) {
  if (a.rational_ && b.rational_) return Exponent(*a.rational_ - *b.rational_);
  return Exponent::decimal(a.value_ - b.value_);
}

double real_power(double base, const Exponent& p) {
  const double v = p.value();
  if (v == 0.0) return 1.0;
  if (base == 0.0) {
    if (v < 0.0) throw DomainError(ErrorCode::DomainViolation, "zero base with negative exponent");
    return 0.0;
  }
  if (base > 0.0) return std::pow(base, v);
  const auto& r = p.rational();
  if (!r || !r->odd_denominator())
    throw DomainError(ErrorCode::DomainViolation,
                      "negative base with irrational or even-denominator exponent");
  if (r->den == 1) return std::pow(base, v);
  double mag = std::pow(-base, v);
  return (r->num % 2 != 0) ? -mag : mag;
}

Monomial::Monomial(std::initializer_list<Factor> factors) : factors_(factors) { canonicalize(); }

Monomial::Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) { canonicalize(); }

Monomial Monomial::variable(std::size_t index, Exponent p) { return Monomial({{index, p}}); }

void Monomial::canonicalize() {
  std::stable_sort(factors_.begin(), factors_.end(),
                   [](const Factor& a, const Factor& b) { return a.first < b.first; });
  std::vector<Factor> merged;
  for (auto& f : factors_) {
    if (!merged.empty() && merged.back().first == f.first)
      merged.back().second = merged.back().second + f.second;
    else
      merged.push_back(f);
  }
  std::erase_if(merged, [](const Factor& f) { return f.second.is_zero(); });
  factors_ = std::move(merged);
}

std::size_t Monomial::max_index() const { return factors_.back().first; }

Exponent Monomial::exponent(std::size_t index) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), index,
                             [](const Factor& f, std::size_t i) { return f.first < i; });
  if (it != factors_.end() && it->first == index) return it->second;
  return Exponent{};
}

Monomial& Monomial::multiply(std::size_t index, const Exponent& p) {
  factors_.emplace_back(index, p);
  canonicalize();
  return *this;
}

Monomial& Monomial::multiply(const Monomial& other) {
  factors_.insert(factors_.end(), other.factors_.begin(), other.factors_.end());
  canonicalize();
  return *this;
}

Monomial Monomial::inverse() const {
  Monomial out = *this;
  for (auto& f : out.factors_) f.second = Exponent{} - f.second;
  return out;
}

double Monomial::eval(std::span<const double> x) const {
  double r = 1.0;
  for (const auto& [j, p] : factors_) {
    if (j >= x.size()) throw Error(ErrorCode::InvalidArgument, "monomial index out of range");
    r *= real_power(x[j], p);
  }
  return r;
}

Monomial Monomial::renumbered(std::span<const std::size_t> map) const {
  std::vector<Factor> out;
  out.reserve(factors_.size());
  for (const auto& [j, p] : factors_) out.emplace_back(map[j], p);
  return Monomial(std::move(out));
}

}  // namespace sigmapi
