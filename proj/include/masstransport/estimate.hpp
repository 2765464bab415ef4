#pragma once

#include <cstdint>
#include <span>

namespace mtp {

/// Two-sided 99% normal quantile.
inline constexpr double kDefaultZ = 2.576;

/// Monte Carlo mean with a normal-approximation interval.
struct EstimateCI {
  double mean = 0.0;
  double std_error = 0.0;  // sample stddev / sqrt(trials)
  std::uint64_t trials = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  bool overlaps(const EstimateCI& other) const noexcept {
    return ci_low <= other.ci_high && other.ci_low <= ci_high;
  }
};

/// Pairwise sum; the result depends only on the order of `values`.
double pairwise_sum(std::span<const double> values);

/// Throws std::invalid_argument for fewer than two samples.
EstimateCI summarize(std::span<const double> samples, double z = kDefaultZ);

}  // namespace mtp
