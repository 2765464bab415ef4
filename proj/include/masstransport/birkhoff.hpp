#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "masstransport/estimate.hpp"
#include "masstransport/process.hpp"
#include "masstransport/verify.hpp"

namespace mtp {

/// E[X_1 | invariant sigma-field] for the supported kinds. Every kind except
/// Mixture is ergodic and has one component; a Mixture's invariant events are
/// generated by the component label.
struct ComponentMean {
  std::size_t id = 0;
  Rational weight;
  double mean = 0.0;
};

struct ConditionalMeanSpec {
  std::vector<ComponentMean> components;
};

ConditionalMeanSpec conditional_mean(const Process& process);

/// 1, 2, 4, ... up to n_max, with n_max appended when it is not a power of two.
std::vector<Index> geometric_grid(Index n_max);

struct TrajectoryRow {
  std::uint64_t trial = 0;
  std::size_t component = 0;
  double target = 0.0;           // mean of the drawn component
  std::vector<double> averages;  // S_n / n on the grid
  double terminal_deviation = 0.0;
};

struct TrajectoryReport {
  std::vector<Index> grid;
  std::vector<TrajectoryRow> rows;

  /// Share of trials with terminal deviation above `tolerance`.
  double fraction_deviating(double tolerance) const;
};

TrajectoryRow trajectory(const Process& process, Index n_max, std::uint64_t seed, std::uint64_t trial);

/// Trials 0..trials-1 of trajectory().
TrajectoryReport trajectories(const Process& process, Index n_max, const McOptions& options);

enum class Tail { Lower, Upper };

/// Cutoff used when none is given: max(64, n_max / 16). A fixed cutoff would
/// make the estimate grow with n_max instead of shrinking toward 0.
Index default_cutoff(Index n_max);

struct AEpsilonOptions {
  double epsilon = 0.1;
  Index n_max = Index{1} << 14;
  std::optional<Index> cutoff;  // smallest n tested; default_cutoff(n_max) when empty
  Tail tail = Tail::Lower;
};

/// Finite-horizon stand-in for P(liminf S_n/n < -epsilon) on the centered
/// process: the share of trials with min_{cutoff<=n<=n_max} (S_n/n - mean)
/// < -epsilon. Tail::Upper tests max (S_n/n - mean) > epsilon instead.
EstimateCI estimate_a_epsilon(const Process& process, const AEpsilonOptions& a_options,
                              const McOptions& options);

}  // namespace mtp
