#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sigmapi/time_jet.hpp"

namespace sigmapi {

/// Coefficient matrix V of a Driver-type ODE x_i' = (v_i' x) x_i.
class QuadraticFrame {
 public:
  QuadraticFrame() = default;
  /// dim x dim zero frame.
  explicit QuadraticFrame(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
  /// Row-major entries; throws InvalidArgument unless entries.size() == dim^2.
  QuadraticFrame(std::size_t dim, std::vector<TimeJet> entries);

  static QuadraticFrame constant(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const { return dim_; }
  const TimeJet& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  TimeJet& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  std::span<const TimeJet> entries() const { return entries_; }

  bool is_stationary() const;
  bool is_zero() const;

  /// v_{i,j}(t)
  std::vector<double> values_at(double t) const;

  /// Stable 64-bit FNV-1a digest of the entries, used to tag series results.
  std::uint64_t fingerprint() const;

  friend bool operator==(const QuadraticFrame&, const QuadraticFrame&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<TimeJet> entries_;
};

}  // namespace sigmapi
