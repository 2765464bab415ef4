#include "masstransport/estimate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mtp {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const auto half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

EstimateCI summarize(std::span<const double> samples, double z) {
  if (samples.size() < 2) throw std::invalid_argument("need at least two trials for an interval");
  const auto n = static_cast<double>(samples.size());
  const double mean = pairwise_sum(samples) / n;
  std::vector<double> squares(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double d = samples[i] - mean;
    squares[i] = d * d;
  }
  const double variance = pairwise_sum(squares) / (n - 1.0);
  const double se = std::sqrt(variance / n);
  return EstimateCI{mean, se, samples.size(), mean - z * se, mean + z * se};
}

}  // namespace mtp
