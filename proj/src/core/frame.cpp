#include "sigmapi/frame.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "sigmapi/errors.hpp"

namespace sigmapi {

QuadraticFrame::QuadraticFrame(std::size_t dim, std::vector<TimeJet> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_)
    throw Error(ErrorCode::InvalidArgument, "frame entries do not form a square matrix");
}

QuadraticFrame QuadraticFrame::constant(const std::vector<std::vector<double>>& rows) {
  QuadraticFrame f(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw Error(ErrorCode::InvalidArgument, "frame rows must be square");
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (rows[i][j] != 0.0) f(i, j) = TimeJet::constant(rows[i][j]);
  }
  return f;
}

bool QuadraticFrame::is_stationary() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const TimeJet& v) { return v.is_zero() || v.is_constant(); });
}

bool QuadraticFrame::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const TimeJet& v) { return v.is_zero(); });
}

std::vector<double> QuadraticFrame::values_at(double t) const {
  std::vector<double> out(entries_.size());
  for (std::size_t k = 0; k < entries_.size(); ++k) out[k] = entries_[k](t);
  return out;
}

std::uint64_t QuadraticFrame::fingerprint() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(dim_);
  for (const auto& e : entries_) {
    auto c = e.coeffs();
    std::size_t n = c.size();
    if (e.exact())
      while (n > 0 && c[n - 1] == 0.0) --n;
    mix(n);
    mix(e.exact());
    if (n > 1) mix(std::bit_cast<std::uint64_t>(e.center()));
    for (std::size_t k = 0; k < n; ++k) mix(std::bit_cast<std::uint64_t>(c[k] + 0.0));
  }
  return h;
}

}  // namespace sigmapi
