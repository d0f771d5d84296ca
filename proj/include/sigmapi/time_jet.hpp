#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace sigmapi {

/// Polynomial c_0 + c_1 (t - center) + ... + c_M (t - center)^M in time.
///
/// An exact jet is the whole function. A truncated jet (exact() == false)
/// only knows the first M+1 Taylor coefficients; arithmetic on truncated jets
/// keeps the smallest known order and differentiating past it raises
/// NumericError(OrderBudget).
class TimeJet {
 public:
  static constexpr int kUnbounded = std::numeric_limits<int>::max();

  TimeJet() = default;
  explicit TimeJet(std::vector<double> coeffs, double center = 0.0, bool exact = true);

  static TimeJet constant(double c, double center = 0.0) { return TimeJet({c}, center); }
  static TimeJet zero() { return TimeJet(); }

  double center() const { return center_; }
  std::span<const double> coeffs() const { return coeffs_; }
  bool exact() const { return exact_; }

  double coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

  /// Highest derivative order that is known: unbounded for exact jets.
  int known_order() const;

  double operator()(double t) const;

  /// All stored coefficients are exactly zero.
  bool is_zero() const;
  /// No time dependence.
  bool is_constant() const;

  TimeJet derivative() const;

  /// Same function expanded around another center. Exact jets only, unless
  /// the center is unchanged.
  TimeJet shifted(double new_center) const;

  TimeJet& operator+=(const TimeJet& other);
  TimeJet& operator*=(double s);

  friend TimeJet operator+(TimeJet a, const TimeJet& b) { return a += b; }
  friend TimeJet operator-(const TimeJet& a) { return a * -1.0; }
  friend TimeJet operator-(TimeJet a, const TimeJet& b) { return a += -b; }
  friend TimeJet operator*(TimeJet a, double s) { return a *= s; }
  friend TimeJet operator*(double s, TimeJet a) { return a *= s; }
  friend TimeJet operator*(const TimeJet& a, const TimeJet& b);

  /// Equality of the represented data: trailing zeros of exact jets are
  /// insignificant, everything else must match bit for bit.
  friend bool operator==(const TimeJet& a, const TimeJet& b);

 private:
  void align_center(const TimeJet& other, TimeJet& rhs_copy) const;

  std::vector<double> coeffs_;
  double center_ = 0.0;
  bool exact_ = true;
};

}  // namespace sigmapi
