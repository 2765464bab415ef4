#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "masstransport/estimate.hpp"
#include "masstransport/path_window.hpp"

namespace mtp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Terminal-average tolerance and the share of trials allowed to exceed it.
inline constexpr double kBirkhoffTolerance = 0.05;
inline constexpr double kBirkhoffMaxDeviating = 0.02;
/// Largest acceptable A_epsilon surrogate estimate.
inline constexpr double kAEpsilonMax = 0.01;
/// One-sided sign checks allow the mean this many standard errors above 0.
inline constexpr double kSignSigmas = 3.0;

struct RunConfig {
  std::string subcommand;
  std::string spec_path;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> trials;
  std::optional<Index> horizon;
  Index n_max = Index{1} << 14;
  std::string mode;  // exact | mc | both; empty picks exact when possible
  std::string format = "csv";
  std::string out_path;
  unsigned threads = 0;
  double epsilon = 0.1;
  std::optional<Index> lo;
  std::optional<Index> hi;
  double z = kDefaultZ;
  Index horizon_cap = 8;
  std::optional<Index> cutoff;
};

/// Entry point behind the executable. `args[0]` is the program name.
/// Returns 0 when every check passes, 1 when one fails, 2 on usage or spec
/// errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtp::cli
