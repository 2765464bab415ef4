#include "masstransport/birkhoff.hpp"

#include <cmath>
#include <stdexcept>

#include "masstransport/errors.hpp"
#include "masstransport/parallel.hpp"
#include "masstransport/rng.hpp"

namespace mtp {

namespace {

enum SeedTag : std::uint64_t { kTrajectory = 11, kAEpsilon = 12 };

double component_mean(const Process& process, std::size_t component) {
  if (process.kind() == ProcessKind::Mixture) return process.children()[component].mean();
  return process.mean();
}

}  // namespace

ConditionalMeanSpec conditional_mean(const Process& process) {
  ConditionalMeanSpec out;
  if (process.kind() != ProcessKind::Mixture) {
    out.components.push_back({0, Rational(1), process.mean()});
    return out;
  }
  const auto& mix = std::get<MixtureSpec>(process.spec().body);
  for (std::size_t i = 0; i < mix.components.size(); ++i) {
    out.components.push_back({i, mix.components[i].weight, process.children()[i].mean()});
  }
  return out;
}

std::vector<Index> geometric_grid(Index n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  std::vector<Index> grid;
  for (Index n = 1; n <= n_max; n *= 2) grid.push_back(n);
  if (grid.back() != n_max) grid.push_back(n_max);
  return grid;
}

double TrajectoryReport::fraction_deviating(double tolerance) const {
  if (rows.empty()) return 0.0;
  std::size_t count = 0;
  for (const auto& r : rows) count += r.terminal_deviation > tolerance ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(rows.size());
}

TrajectoryRow trajectory(const Process& process, Index n_max, std::uint64_t seed, std::uint64_t trial) {
  const auto grid = geometric_grid(n_max);
  const auto w = sample_window(process, 0, n_max, seed, trial);
  TrajectoryRow row;
  row.trial = trial;
  row.component = sampled_component(process, seed, trial);
  row.target = component_mean(process, row.component);
  row.averages.reserve(grid.size());
  for (Index n : grid) row.averages.push_back(w.s(n) / static_cast<double>(n));
  row.terminal_deviation = std::abs(row.averages.back() - row.target);
  return row;
}

TrajectoryReport trajectories(const Process& process, Index n_max, const McOptions& options) {
  TrajectoryReport report;
  report.grid = geometric_grid(n_max);
  report.rows.resize(options.trials);
  const auto seed = derive_seed(options.seed, kTrajectory);
  parallel_for(report.rows.size(), options.threads,
               [&](std::size_t t) { report.rows[t] = trajectory(process, n_max, seed, t); });
  return report;
}

Index default_cutoff(Index n_max) { return std::max<Index>(64, n_max / 16); }

EstimateCI estimate_a_epsilon(const Process& process, const AEpsilonOptions& a, const McOptions& options) {
  if (!(a.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (a.n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  const Index first = std::max<Index>(1, std::min(a.cutoff.value_or(default_cutoff(a.n_max)), a.n_max));
  const auto seed = derive_seed(options.seed, kAEpsilon);

  std::vector<double> hits(options.trials);
  if (options.trials < 2) throw std::invalid_argument("Monte Carlo needs at least two trials");
  parallel_for(hits.size(), options.threads, [&](std::size_t t) {
    const auto w = sample_window(process, 0, a.n_max, seed, t);
    const double mean = component_mean(process, sampled_component(process, seed, t));
    bool hit = false;
    for (Index n = first; n <= a.n_max && !hit; ++n) {
      const double centered = w.s(n) / static_cast<double>(n) - mean;
      hit = a.tail == Tail::Lower ? centered < -a.epsilon : centered > a.epsilon;
    }
    hits[t] = hit ? 1.0 : 0.0;
  });
  return summarize(hits, options.z);
}

}  // namespace mtp
