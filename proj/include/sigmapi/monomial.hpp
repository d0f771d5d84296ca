#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sigmapi {

/// Reduced fraction num/den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool odd_denominator() const { return den % 2 != 0; }

  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational operator+(Rational a, Rational b);
Rational operator-(Rational a, Rational b);

/// A real exponent. When the exponent was supplied in exact rational form the
/// fraction is kept: only then can the domain of x^p be decided beyond the
/// conservative "irrational" classification.
class Exponent {
 public:
  Exponent() = default;
  Exponent(Rational r) : value_(r.value()), rational_(r) {}  // NOLINT(implicit)
  static Exponent integer(std::int64_t n) { return Exponent(Rational{n, 1}); }
  static Exponent decimal(double v) {
    Exponent e;
    e.value_ = v;
    e.rational_.reset();
    return e;
  }

  double value() const { return value_; }
  const std::optional<Rational>& rational() const { return rational_; }
  bool is_exact() const { return rational_.has_value(); }
  bool is_zero() const { return value_ == 0.0; }

  friend Exponent operator+(const Exponent& a, const Exponent& b);
  friend Exponent operator-(const Exponent& a, const Exponent& b);
  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double value_ = 0.0;
  std::optional<Rational> rational_ = Rational{0, 1};
};

/// x^p under the real-power rules of the four exponent cases. Throws
/// DomainError(DomainViolation) when the power is undefined at `base`.
double real_power(double base, const Exponent& p);

/// Product of powers prod_j x_j^{p_j}. Indices are 0-based. Stored sparse and
/// sorted; indices with a zero exponent are never stored, so the empty
/// monomial is the constant 1.
class Monomial {
 public:
  using Factor = std::pair<std::size_t, Exponent>;

  Monomial() = default;
  Monomial(std::initializer_list<Factor> factors);
  explicit Monomial(std::vector<Factor> factors);

  static Monomial variable(std::size_t index, Exponent p = Exponent::integer(1));

  std::span<const Factor> factors() const { return factors_; }
  bool is_constant() const { return factors_.empty(); }
  std::size_t max_index() const;  // requires !is_constant()

  /// Exponent on x_index (exact 0 when absent).
  Exponent exponent(std::size_t index) const;

  /// Multiplies by x_index^p (p may cancel an existing factor).
  Monomial& multiply(std::size_t index, const Exponent& p);
  Monomial& multiply(const Monomial& other);

  /// Inverse monomial (all exponents negated).
  Monomial inverse() const;

  double eval(std::span<const double> x) const;

  /// Relabels indices through `map` (old index -> new index).
  Monomial renumbered(std::span<const std::size_t> map) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  void canonicalize();

  std::vector<Factor> factors_;
};

}  // namespace sigmapi
