#include "sigmapi/time_jet.hpp"

#include <algorithm>

#include "sigmapi/errors.hpp"

namespace sigmapi {

TimeJet::TimeJet(std::vector<double> coeffs, double center, bool exact)
    : coeffs_(std::move(coeffs)), center_(center), exact_(exact) {
  if (!exact_ && coeffs_.empty())
    throw Error(ErrorCode::InvalidArgument, "a truncated jet needs at least one coefficient");
}

int TimeJet::known_order() const {
  return exact_ ? kUnbounded : static_cast<int>(coeffs_.size()) - 1;
}

double TimeJet::operator()(double t) const {
  const double h = t - center_;
  double r = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * h + *it;
  return r;
}

bool TimeJet::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

bool TimeJet::is_constant() const {
  if (!exact_) return false;
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0.0) return false;
  return true;
}

TimeJet TimeJet::derivative() const {
  if (!exact_ && coeffs_.size() <= 1)
    throw NumericError(ErrorCode::OrderBudget,
                       "truncated coefficient jet exhausted: supply more Taylor terms");
  std::vector<double> d;
  if (coeffs_.size() > 1) {
    d.resize(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  }
  return TimeJet(std::move(d), center_, exact_);
}

TimeJet TimeJet::shifted(double new_center) const {
  if (new_center == center_) return *this;
  if (!exact_)
    throw NumericError(ErrorCode::MixedCenters, "a truncated jet cannot be re-centered");
  // Horner-style synthetic division: repeated Taylor shift by h.
  std::vector<double> b = coeffs_;
  const double h = new_center - center_;
  const std::size_t n = b.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k > i; --k) b[k - 1] += h * b[k];
  return TimeJet(std::move(b), new_center, true);
}

void TimeJet::align_center(const TimeJet& other, TimeJet& rhs_copy) const {
  if (other.center_ == center_ || other.is_constant()) {
    rhs_copy = other;
    rhs_copy.center_ = center_;
    return;
  }
  rhs_copy = other.shifted(center_);
}

namespace {

std::size_t truncated_size(std::size_t natural, int order) {
  if (order == TimeJet::kUnbounded) return natural;
  return std::min(natural, static_cast<std::size_t>(order) + 1);
}

}  // namespace

TimeJet& TimeJet::operator+=(const TimeJet& other) {
  if (other.exact_ && other.is_zero()) return *this;
  if (exact_ && is_zero()) {
    *this = other;
    return *this;
  }
  TimeJet rhs;
  if (is_constant() && other.center_ != center_) {
    // a constant can move to any center for free
    TimeJet moved = other;
    moved.coeffs_.resize(std::max(moved.coeffs_.size(), std::size_t{1}), 0.0);
    moved.coeffs_[0] += coeffs_.empty() ? 0.0 : coeffs_[0];
    *this = std::move(moved);
    return *this;
  }
  align_center(other, rhs);
  const int order = std::min(known_order(), rhs.known_order());
  const std::size_t size =
      truncated_size(std::max(coeffs_.size(), rhs.coeffs_.size()), order);
  coeffs_.resize(size, 0.0);
  for (std::size_t k = 0; k < size && k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  exact_ = exact_ && rhs.exact_;
  return *this;
}

TimeJet& TimeJet::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

TimeJet operator*(const TimeJet& a, const TimeJet& b) {
  if ((a.exact_ && a.is_zero()) || (b.exact_ && b.is_zero())) return TimeJet();
  if (a.is_constant()) {
    TimeJet r = b;
    return r *= a.coeffs_[0];
  }
  if (b.is_constant()) {
    TimeJet r = a;
    return r *= b.coeffs_[0];
  }
  TimeJet rhs;
  a.align_center(b, rhs);
  const int order = std::min(a.known_order(), rhs.known_order());
  const std::size_t size = truncated_size(a.coeffs_.size() + rhs.coeffs_.size() - 1, order);
  std::vector<double> out(size, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size() && i < size; ++i) {
    if (a.coeffs_[i] == 0.0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size() && i + j < size; ++j)
      out[i + j] += a.coeffs_[i] * rhs.coeffs_[j];
  }
  return TimeJet(std::move(out), a.center_, a.exact_ && rhs.exact_);
}

bool operator==(const TimeJet& a, const TimeJet& b) {
  if (a.exact_ != b.exact_) return false;
  if (!a.exact_) return a.center_ == b.center_ && a.coeffs_ == b.coeffs_;
  auto trimmed = [](const std::vector<double>& c) {
    std::size_t n = c.size();
    while (n > 0 && c[n - 1] == 0.0) --n;
    return n;
  };
  const std::size_t na = trimmed(a.coeffs_), nb = trimmed(b.coeffs_);
  if (na != nb) return false;
  if (na > 1 && a.center_ != b.center_) return false;
  for (std::size_t k = 0; k < na; ++k)
    if (a.coeffs_[k] != b.coeffs_[k]) return false;
  return true;
}

}  // namespace sigmapi
