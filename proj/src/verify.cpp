#include "masstransport/verify.hpp"

#include <cmath>
#include <string>

#include "masstransport/errors.hpp"
#include "masstransport/parallel.hpp"
#include "masstransport/rng.hpp"
#include "masstransport/transport.hpp"

namespace mtp {

namespace {

// Labels for derive_seed so each sub-experiment draws independent windows.
enum SeedTag : std::uint64_t { kIdentityLhs = 1, kIdentityRhs = 2, kMaximal = 3, kSurvival = 4 };

void require_exact_horizon(Index n, const ExactOptions& options) {
  if (n < 1) throw std::invalid_argument("horizon must be positive");
  if (n > options.horizon_cap) {
    throw ExplosionCap("horizon " + std::to_string(n) + " exceeds the exact-mode cap " +
                       std::to_string(options.horizon_cap));
  }
}

void require_trials(const McOptions& options) {
  if (options.trials < 2) throw std::invalid_argument("Monte Carlo needs at least two trials");
}

/// Runs `per_trial(trial)` for every trial and summarizes in trial order.
template <typename F>
EstimateCI monte_carlo(const McOptions& options, F&& per_trial) {
  require_trials(options);
  std::vector<double> samples(options.trials);
  parallel_for(samples.size(), options.threads, [&](std::size_t t) { samples[t] = per_trial(t); });
  return summarize(samples, options.z);
}

template <typename T>
bool ruined_by(const BasicPathWindow<T>& w) {
  return first_nonpositive(w).has_value();
}

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "mc"; }

bool IdentityReport::all_pass() const {
  for (const auto& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

IdentityPair exact_identity(const Process& process, Index n, const ExactOptions& options) {
  require_exact_horizon(n, options);
  IdentityPair out{Rational(0), Rational(0)};
  for (const auto& atom : exact_window_distribution(process, 0, n, options.atom_cap).atoms) {
    out.lhs += atom.probability * mass_row(atom.window, 0).at(n);
  }
  for (const auto& atom : exact_window_distribution(process, -n, 0, options.atom_cap).atoms) {
    out.rhs += atom.probability * mass_row(atom.window, -n).at(0);
  }
  return out;
}

IdentityReport exact_identity_report(const Process& process, Index horizon, const ExactOptions& options) {
  require_exact_horizon(horizon, options);
  IdentityReport report;
  for (Index n = 1; n <= horizon; ++n) {
    auto pair = exact_identity(process, n, options);
    IdentityEntry e;
    e.n = n;
    e.mode = Mode::Exact;
    e.pass = pair.lhs == pair.rhs;
    e.exact_lhs = std::move(pair.lhs);
    e.exact_rhs = std::move(pair.rhs);
    report.entries.push_back(std::move(e));
  }
  return report;
}

IdentityReport mc_identity(const Process& process, Index horizon, const McOptions& options) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  require_trials(options);
  IdentityReport report;
  for (Index n = 1; n <= horizon; ++n) {
    const auto lhs_seed = derive_seed(options.seed, kIdentityLhs, static_cast<std::uint64_t>(n));
    const auto rhs_seed = derive_seed(options.seed, kIdentityRhs, static_cast<std::uint64_t>(n));
    IdentityEntry e;
    e.n = n;
    e.mode = Mode::MonteCarlo;
    e.mc_lhs = monte_carlo(options, [&](std::uint64_t t) {
      return mass_row(sample_window(process, 0, n, lhs_seed, t), 0).at(n);
    });
    e.mc_rhs = monte_carlo(options, [&](std::uint64_t t) {
      return mass_row(sample_window(process, -n, 0, rhs_seed, t), -n).at(0);
    });
    e.pass = e.mc_lhs->overlaps(*e.mc_rhs);
    report.entries.push_back(std::move(e));
  }
  return report;
}

Rational exact_maximal_ergodic(const Process& process, Index horizon, const ExactOptions& options) {
  require_exact_horizon(horizon, options);
  Rational total = 0;
  for (const auto& atom : exact_window_distribution(process, 0, horizon, options.atom_cap).atoms) {
    if (ruined_by(atom.window)) total += atom.probability * atom.window.x(1);
  }
  return total;
}

EstimateCI mc_maximal_ergodic(const Process& process, Index horizon, const McOptions& options) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  const auto seed = derive_seed(options.seed, kMaximal, static_cast<std::uint64_t>(horizon));
  return monte_carlo(options, [&](std::uint64_t t) {
    const auto w = sample_window(process, 0, horizon, seed, t);
    return ruined_by(w) ? w.x(1) : 0.0;
  });
}

Rational exact_survival(const Process& process, Index horizon, const ExactOptions& options) {
  require_exact_horizon(horizon, options);
  Rational total = 0;
  for (const auto& atom : exact_window_distribution(process, 0, horizon, options.atom_cap).atoms) {
    if (!ruined_by(atom.window)) total += atom.probability;
  }
  return total;
}

EstimateCI mc_survival(const Process& process, Index horizon, const McOptions& options) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  const auto seed = derive_seed(options.seed, kSurvival, static_cast<std::uint64_t>(horizon));
  return monte_carlo(options, [&](std::uint64_t t) {
    return ruined_by(sample_window(process, 0, horizon, seed, t)) ? 0.0 : 1.0;
  });
}

std::optional<double> survival_tail_bound(const Process& process, Index horizon) {
  if (process.kind() != ProcessKind::IidDiscrete || !(process.mean() > 0.0)) return std::nullopt;
  const auto& s = std::get<IidDiscreteSpec>(process.spec().body);
  bool can_fall = false;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (s.probabilities[i] > 0 && s.values[i].value <= 0.0) can_fall = true;
  }
  if (!can_fall) return 0.0;

  // E[exp(-tX)] is convex in t with negative slope at 0; golden-section search
  // on an interval that brackets the minimum.
  const auto mgf = [&](double t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      acc += to_double(s.probabilities[i]) * std::exp(-t * s.values[i].value);
    }
    return acc;
  };
  double hi = 1.0;
  while (mgf(2.0 * hi) < mgf(hi) && hi < 1e6) hi *= 2.0;
  double a = 0.0;
  double b = 2.0 * hi;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 200; ++i) {
    const double c = b - ratio * (b - a);
    const double d = a + ratio * (b - a);
    if (mgf(c) < mgf(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  const double rho = mgf(0.5 * (a + b));
  if (!(rho < 1.0)) return std::nullopt;
  return std::pow(rho, static_cast<double>(horizon + 1)) / (1.0 - rho);
}

}  // namespace mtp
