#include <string>

#include "masstransport/errors.hpp"
#include "masstransport/process.hpp"

namespace mtp {

std::vector<Rational> stationary_distribution(const TransitionMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw InvalidSpec("/transition: empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      throw InvalidSpec("/transition/" + std::to_string(i) + ": matrix is not square");
    }
    Rational total = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix[i][j] < 0) {
        throw InvalidSpec("/transition/" + std::to_string(i) + "/" + std::to_string(j) +
                          ": negative transition probability");
      }
      total += matrix[i][j];
    }
    if (total != 1) {
      throw InvalidSpec("/transition/" + std::to_string(i) + ": row sums to " + to_string(total) +
                        ", not 1");
    }
  }

  // Augmented system [(P^T - I); 1 ... 1 | 0 ... 0 1], (n + 1) x (n + 1).
  std::vector<std::vector<Rational>> a(n + 1, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = matrix[j][i];
    a[i][i] -= 1;
  }
  for (std::size_t j = 0; j < n; ++j) a[n][j] = 1;
  a[n][n] = 1;

  std::size_t row = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = row;
    while (pivot <= n && a[pivot][col] == 0) ++pivot;
    if (pivot > n) {
      throw NoStationaryDistribution("stationary distribution is not unique (rank deficiency at state " +
                                     std::to_string(col) + ")");
    }
    std::swap(a[row], a[pivot]);
    const Rational inv = 1 / a[row][col];
    for (std::size_t j = col; j <= n; ++j) a[row][j] *= inv;
    for (std::size_t r = 0; r <= n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t j = col; j <= n; ++j) a[r][j] -= factor * a[row][j];
    }
    ++row;
  }
  // The leftover row must read 0 = 0 for a consistent system.
  if (a[n][n] != 0) throw NoStationaryDistribution("stationary system is inconsistent");

  std::vector<Rational> pi(n);
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = a[i][n];
    if (pi[i] <= 0) {
      throw NoStationaryDistribution("stationary distribution is not strictly positive at state " +
                                     std::to_string(i));
    }
  }
  return pi;
}

}  // namespace mtp
