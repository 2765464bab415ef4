#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "masstransport/rational.hpp"

namespace mtp {

using Index = std::int64_t;

/// S_lo..S_hi anchored at S_0 = 0 with S_k - S_{k-1} = X_k, where
/// increments[i] holds X_{lo+1+i}.
template <typename T>
std::vector<T> anchored_sums(Index lo, Index hi, std::span<const T> increments) {
  if (lo > 0 || hi < 0 || hi - lo < 1) {
    throw std::invalid_argument("window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "] must satisfy lo <= 0 <= hi and hi - lo >= 1");
  }
  if (increments.size() != static_cast<std::size_t>(hi - lo)) {
    throw std::invalid_argument("window needs exactly hi - lo increments");
  }
  std::vector<T> sums(static_cast<std::size_t>(hi - lo + 1));
  const auto zero = static_cast<std::size_t>(-lo);
  sums[zero] = T(0);
  for (std::size_t i = zero + 1; i < sums.size(); ++i) sums[i] = sums[i - 1] + increments[i - 1];
  for (std::size_t i = zero; i-- > 0;) sums[i] = sums[i + 1] - increments[i];
  return sums;
}

/// One realized stretch X_{lo+1}..X_hi of a two-sided sequence together with
/// its partial sums S_lo..S_hi.
template <typename T>
class BasicPathWindow {
 public:
  using value_type = T;

  BasicPathWindow(Index lo, Index hi, std::vector<T> increments)
      : lo_(lo), hi_(hi), increments_(std::move(increments)) {
    sums_ = anchored_sums<T>(lo_, hi_, increments_);
  }

  Index lo() const noexcept { return lo_; }
  Index hi() const noexcept { return hi_; }

  /// X_k for lo < k <= hi.
  const T& x(Index k) const {
    if (k <= lo_ || k > hi_) throw std::out_of_range("increment index " + std::to_string(k) + " outside window");
    return increments_[static_cast<std::size_t>(k - lo_ - 1)];
  }

  /// S_k for lo <= k <= hi.
  const T& s(Index k) const {
    if (k < lo_ || k > hi_) throw std::out_of_range("sum index " + std::to_string(k) + " outside window");
    return sums_[static_cast<std::size_t>(k - lo_)];
  }

  std::span<const T> increments() const noexcept { return increments_; }
  std::span<const T> sums() const noexcept { return sums_; }

  friend bool operator==(const BasicPathWindow& a, const BasicPathWindow& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.increments_ == b.increments_;
  }

 private:
  Index lo_;
  Index hi_;
  std::vector<T> increments_;
  std::vector<T> sums_;
};

using PathWindow = BasicPathWindow<double>;
using ExactWindow = BasicPathWindow<Rational>;

/// Exact image of a floating-point window.
ExactWindow to_exact(const PathWindow& window);

}  // namespace mtp
