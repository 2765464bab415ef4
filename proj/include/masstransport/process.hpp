#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "masstransport/path_window.hpp"
#include "masstransport/process_spec.hpp"
#include "masstransport/rational.hpp"

namespace mtp {

/// A validated stationary-process generator. Immutable after construction and
/// safe to share between threads.
class Process {
 public:
  /// Validates `spec`; throws InvalidSpec or NoStationaryDistribution.
  static Process make(ProcessSpec spec);

  const ProcessSpec& spec() const noexcept { return spec_; }
  ProcessKind kind() const noexcept { return spec_.kind(); }

  /// True when every increment takes finitely many values.
  bool finite_support() const noexcept { return finite_support_; }
  /// finite_support() and every payoff/coefficient carries an exact value.
  bool exact_capable() const noexcept { return exact_capable_; }

  /// E[X_1].
  double mean() const noexcept { return mean_; }
  const std::optional<Rational>& exact_mean() const noexcept { return exact_mean_; }

  /// Cached stationary law (MarkovChain only).
  std::span<const Rational> stationary() const noexcept { return stationary_; }

  /// Mixture elements, or the innovation process of a MovingAverage.
  std::span<const Process> children() const noexcept { return children_; }

  // Sampling tables, derived from the exact probabilities.
  std::span<const double> cdf() const noexcept { return cdf_; }
  std::span<const std::vector<double>> row_cdfs() const noexcept { return row_cdfs_; }

 private:
  friend class ProcessBuilder;
  Process() = default;

  ProcessSpec spec_;
  bool finite_support_ = false;
  bool exact_capable_ = false;
  double mean_ = 0.0;
  std::optional<Rational> exact_mean_;
  std::vector<Rational> stationary_;
  std::vector<Process> children_;
  std::vector<double> cdf_;  // IidDiscrete probabilities, Markov initial law, Mixture weights
  std::vector<std::vector<double>> row_cdfs_;
};

inline Process make_process(ProcessSpec spec) { return Process::make(std::move(spec)); }

/// Exact pi with pi P = pi and sum(pi) = 1. Throws InvalidSpec when the
/// matrix is not square row-stochastic, NoStationaryDistribution when the
/// solution is not unique.
std::vector<Rational> stationary_distribution(const TransitionMatrix& matrix);

/// Window [lo, hi] of the two-sided stationary sequence for (seed, trial).
/// Growing hi with the same (seed, trial) leaves the shared prefix unchanged.
PathWindow sample_window(const Process& process, Index lo, Index hi, std::uint64_t seed,
                         std::uint64_t trial);

/// Mixture element drawn for (seed, trial); 0 for non-mixture processes.
std::size_t sampled_component(const Process& process, std::uint64_t seed, std::uint64_t trial);

inline constexpr std::uint64_t kDefaultAtomCap = std::uint64_t{1} << 20;

struct ExactAtom {
  ExactWindow window;
  Rational probability;
};

/// Full law of a finite window as (path, probability) atoms.
struct ExactDistribution {
  Index lo = 0;
  Index hi = 0;
  std::vector<ExactAtom> atoms;
};

/// Number of positive-probability paths of length `length`, saturating at
/// UINT64_MAX. Throws UnsupportedProcess for continuous support.
std::uint64_t atom_count(const Process& process, Index length);

/// Enumerates the window law exactly. Throws UnsupportedProcess unless the
/// process is exact_capable(), ExplosionCap when the atom count exceeds `cap`.
ExactDistribution exact_window_distribution(const Process& process, Index lo, Index hi,
                                            std::uint64_t cap = kDefaultAtomCap);

}  // namespace mtp
