#pragma once

// Brute-force reference implementations used only by the tests. They follow
// the definitions literally (explicit minima over ranges, explicit product
// laws) and share no code with the library's transport or enumeration paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "masstransport/rational.hpp"

namespace oracle {

using mtp::Rational;

/// Partial sums with S_0 = 0 for increments x[0..] = X_{lo+1}..X_hi.
template <typename T>
std::map<std::int64_t, T> sums(std::int64_t lo, const std::vector<T>& x) {
  std::map<std::int64_t, T> s;
  const std::int64_t hi = lo + static_cast<std::int64_t>(x.size());
  s[0] = T(0);
  for (std::int64_t k = 1; k <= hi; ++k) s[k] = s[k - 1] + x[static_cast<std::size_t>(k - lo - 1)];
  for (std::int64_t k = -1; k >= lo; --k) s[k] = s[k + 1] - x[static_cast<std::size_t>(k + 1 - lo - 1)];
  return s;
}

template <typename T>
bool is_record(const std::map<std::int64_t, T>& s, std::int64_t n, std::int64_t m) {
  if (m <= n) return false;
  T lowest = s.at(n + 1);
  for (std::int64_t k = n + 1; k <= m; ++k) lowest = std::min(lowest, s.at(k));
  return s.at(m) == lowest;
}

/// M(n, m) from the definition; `hi` bounds the visible records.
template <typename T>
T mass(const std::map<std::int64_t, T>& s, std::int64_t hi, std::int64_t n, std::int64_t m) {
  if (!(s.at(n + 1) - s.at(n) > T(0))) return T(0);
  std::vector<std::int64_t> recs;
  for (std::int64_t k = n + 1; k <= hi; ++k) {
    if (is_record(s, n, k)) recs.push_back(k);
  }
  for (std::size_t j = 1; j < recs.size(); ++j) {
    if (recs[j] == m) return std::max(s.at(recs[j - 1]), s.at(n)) - std::max(s.at(recs[j]), s.at(n));
  }
  return T(0);
}

/// Visits every sequence of `length` i.i.d. draws with its probability.
inline void iid_paths(const std::vector<Rational>& values, const std::vector<Rational>& probs, std::size_t length,
                      const std::function<void(const std::vector<Rational>&, const Rational&)>& visit) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < length; ++i) total *= values.size();
  std::vector<Rational> x(length);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    Rational p = 1;
    for (std::size_t i = 0; i < length; ++i) {
      x[i] = values[c % values.size()];
      p *= probs[c % values.size()];
      c /= values.size();
    }
    visit(x, p);
  }
}

}  // namespace oracle
