#pragma once

// Records, ladder epochs and the mass function M(n, m) on a single window.
//
// All quantities are relative to the window [lo, hi]; nothing beyond hi or
// before lo is visible. M(n, m) restricted to m <= k depends only on
// X_{n+1}..X_k, so per-index values are exact once the window covers them.
//
// Ties: a record after n uses the non-strict running minimum, a ladder epoch
// before 0 uses the strict one.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "masstransport/path_window.hpp"

namespace mtp {

/// Default tolerance for comparing derived floating-point quantities.
inline constexpr double kTolerance = 1e-9;

struct RecordList {
  Index sender = 0;
  std::vector<Index> records;  // n_0 = sender + 1 < n_1 < ...
};

struct LadderList {
  std::vector<Index> epochs;  // m_0 = -1 > m_1 > ...
};

/// Sparse m -> M(n, m). Zero entries are omitted.
template <typename T>
struct MassRow {
  Index sender = 0;
  std::map<Index, T> entries;

  T total() const {
    T sum(0);
    for (const auto& [m, mass] : entries) sum += mass;
    return sum;
  }

  /// M(sender, m), zero when absent.
  T at(Index m) const {
    const auto it = entries.find(m);
    return it == entries.end() ? T(0) : it->second;
  }
};

template <typename T>
using MassMap = std::map<Index, T>;

namespace detail {

inline void require_sender(Index lo, Index hi, Index n) {
  if (n < lo || n >= hi) {
    throw std::out_of_range("sender " + std::to_string(n) + " outside [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + ")");
  }
}

template <typename T>
const T& larger(const T& a, const T& b) {
  return a < b ? b : a;
}

}  // namespace detail

template <typename T>
std::vector<T> partial_sums(const BasicPathWindow<T>& window) {
  return {window.sums().begin(), window.sums().end()};
}

/// All m in (n, hi] with S_m <= min{S_{n+1}, ..., S_m}.
template <typename T>
RecordList records_after(const BasicPathWindow<T>& w, Index n) {
  detail::require_sender(w.lo(), w.hi(), n);
  RecordList out{n, {n + 1}};
  const T* running_min = &w.s(n + 1);
  for (Index m = n + 2; m <= w.hi(); ++m) {
    if (!(*running_min < w.s(m))) {
      out.records.push_back(m);
      running_min = &w.s(m);
    }
  }
  return out;
}

/// M(n, n_j) = max{S_{n_{j-1}}, S_n} - max{S_{n_j}, S_n} for j >= 1 when
/// X_{n+1} > 0; the row is empty otherwise.
template <typename T>
MassRow<T> mass_row(const BasicPathWindow<T>& w, Index n) {
  detail::require_sender(w.lo(), w.hi(), n);
  MassRow<T> row{n, {}};
  if (!(w.x(n + 1) > T(0))) return row;

  const T& base = w.s(n);
  const auto rec = records_after(w, n);
  for (std::size_t j = 1; j < rec.records.size(); ++j) {
    T mass = detail::larger(w.s(rec.records[j - 1]), base) - detail::larger(w.s(rec.records[j]), base);
    if (mass != T(0)) row.entries.emplace(rec.records[j], std::move(mass));
  }
  return row;
}

/// Closed form of the row total: S_{n+1} - max{min_{n<k<=hi} S_k, S_n}, or 0
/// when X_{n+1} <= 0.
template <typename T>
T total_sent(const BasicPathWindow<T>& w, Index n) {
  detail::require_sender(w.lo(), w.hi(), n);
  if (!(w.x(n + 1) > T(0))) return T(0);
  const auto sums = w.sums();
  const auto first = sums.begin() + (n + 1 - w.lo());
  const T& lowest = *std::min_element(first, sums.end());
  return w.s(n + 1) - detail::larger(lowest, w.s(n));
}

/// m_0 = -1 followed by each m < -1 with S_m < min{S_{m+1}, ..., S_{-1}}.
template <typename T>
LadderList ladder_epochs_before_zero(const BasicPathWindow<T>& w) {
  if (w.lo() > -1) throw std::out_of_range("ladder epochs need lo <= -1");
  LadderList out{{-1}};
  const T* running_min = &w.s(-1);
  for (Index m = -2; m >= w.lo(); --m) {
    if (w.s(m) < *running_min) {
      out.epochs.push_back(m);
      running_min = &w.s(m);
    }
  }
  return out;
}

/// m -> M(m, 0) for m < 0 from the ladder epochs:
/// M(m_j, 0) = max{S_{m_{j-1}}, 0} - max{S_{m_j}, 0}; empty when X_0 > 0.
template <typename T>
MassMap<T> mass_received_at_zero(const BasicPathWindow<T>& w) {
  if (w.lo() > -1) throw std::out_of_range("received mass needs lo <= -1");
  MassMap<T> out;
  if (w.x(0) > T(0)) return out;
  const T zero(0);
  const auto ladder = ladder_epochs_before_zero(w);
  for (std::size_t j = 1; j < ladder.epochs.size(); ++j) {
    T mass = detail::larger(w.s(ladder.epochs[j - 1]), zero) - detail::larger(w.s(ladder.epochs[j]), zero);
    if (mass != zero) out.emplace(ladder.epochs[j], std::move(mass));
  }
  return out;
}

/// Received total in closed form: -X_0 - max{min_{lo<=m<=-1} S_m, 0} when
/// X_0 <= 0, else 0.
template <typename T>
T total_received_at_zero(const BasicPathWindow<T>& w) {
  if (w.lo() > -1) throw std::out_of_range("received mass needs lo <= -1");
  if (w.x(0) > T(0)) return T(0);
  const auto sums = w.sums();
  const T& lowest = *std::min_element(sums.begin(), sums.begin() + (-1 - w.lo() + 1));
  return T(-w.x(0)) - detail::larger(lowest, T(0));
}

/// Least n in [1, hi] with S_n <= 0.
template <typename T>
std::optional<Index> first_nonpositive(const BasicPathWindow<T>& w) {
  if (w.hi() < 1) throw std::out_of_range("first_nonpositive needs hi >= 1");
  for (Index n = 1; n <= w.hi(); ++n) {
    if (!(w.s(n) > T(0))) return n;
  }
  return std::nullopt;
}

}  // namespace mtp
