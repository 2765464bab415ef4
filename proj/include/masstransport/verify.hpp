#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "masstransport/estimate.hpp"
#include "masstransport/process.hpp"
#include "masstransport/rational.hpp"

namespace mtp {

enum class Mode { Exact, MonteCarlo };

std::string_view to_string(Mode mode);

struct ExactOptions {
  Index horizon_cap = 8;
  std::uint64_t atom_cap = kDefaultAtomCap;
};

struct McOptions {
  std::uint64_t seed = 0;
  std::uint64_t trials = 100000;
  double z = kDefaultZ;
  unsigned threads = 0;  // 0: MTP_THREADS or hardware concurrency
};

/// One term of the transport identity, E[M(0, n)] against E[M(-n, 0)].
struct IdentityEntry {
  Index n = 0;
  Mode mode = Mode::Exact;
  std::optional<Rational> exact_lhs;
  std::optional<Rational> exact_rhs;
  std::optional<EstimateCI> mc_lhs;
  std::optional<EstimateCI> mc_rhs;
  bool pass = false;  // exact: lhs == rhs; mc: intervals overlap
};

struct IdentityReport {
  std::vector<IdentityEntry> entries;

  bool all_pass() const;
};

struct IdentityPair {
  Rational lhs;
  Rational rhs;
};

/// (E[M(0, n)], E[M(-n, 0)]) by enumerating windows [0, n] and [-n, 0].
IdentityPair exact_identity(const Process& process, Index n, const ExactOptions& options = {});

IdentityReport exact_identity_report(const Process& process, Index horizon, const ExactOptions& options = {});

/// Per-n Monte Carlo estimates of both sides from independent windows.
IdentityReport mc_identity(const Process& process, Index horizon, const McOptions& options);

/// E[X_1; min_{1<=n<=N} S_n <= 0], exactly.
Rational exact_maximal_ergodic(const Process& process, Index horizon, const ExactOptions& options = {});

EstimateCI mc_maximal_ergodic(const Process& process, Index horizon, const McOptions& options);

/// P(S_n > 0 for all 1 <= n <= N), exactly.
Rational exact_survival(const Process& process, Index horizon, const ExactOptions& options = {});

/// Monte Carlo P(S_n > 0 for all 1 <= n <= N). Overestimates the
/// infinite-horizon probability by P(survive to N, ruined later).
EstimateCI mc_survival(const Process& process, Index horizon, const McOptions& options);

/// Upper bound on the truncation bias of mc_survival for i.i.d. discrete
/// processes with positive mean: sum_{n>N} P(S_n <= 0) <= rho^(N+1) / (1 - rho)
/// with rho = min_{t>=0} E[exp(-t X)]. Empty for other processes.
std::optional<double> survival_tail_bound(const Process& process, Index horizon);

}  // namespace mtp
