#include <functional>
#include <limits>
#include <string>

#include "masstransport/errors.hpp"
#include "masstransport/process.hpp"

namespace mtp {

namespace {

constexpr auto kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t positive_count(const std::vector<Rational>& probabilities) {
  std::uint64_t n = 0;
  for (const auto& p : probabilities) n += p > 0 ? 1 : 0;
  return n;
}

std::uint64_t power(std::uint64_t base, Index exponent) {
  std::uint64_t out = 1;
  for (Index i = 0; i < exponent; ++i) out = saturating_mul(out, base);
  return out;
}

/// Every sequence of `length` i.i.d. draws, with its probability.
void enumerate_iid(const IidDiscreteSpec& s, std::size_t length,
                   const std::function<void(const std::vector<Rational>&, const Rational&)>& visit) {
  std::vector<Rational> values(length);
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t pos, const Rational& prob) {
    if (pos == length) {
      visit(values, prob);
      return;
    }
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (s.probabilities[i] == 0) continue;
      values[pos] = *s.values[i].exact;
      rec(pos + 1, Rational(prob * s.probabilities[i]));
    }
  };
  rec(0, Rational(1));
}

void enumerate(const Process& process, Index lo, Index hi, const Rational& scale, std::vector<ExactAtom>& atoms) {
  const auto length = static_cast<std::size_t>(hi - lo);
  switch (process.kind()) {
    case ProcessKind::IidDiscrete: {
      const auto& s = std::get<IidDiscreteSpec>(process.spec().body);
      enumerate_iid(s, length, [&](const std::vector<Rational>& xs, const Rational& p) {
        atoms.push_back({ExactWindow(lo, hi, xs), Rational(scale * p)});
      });
      return;
    }

    case ProcessKind::MarkovChain: {
      const auto& m = std::get<MarkovChainSpec>(process.spec().body);
      const auto pi = process.stationary();
      std::vector<Rational> xs(length);
      std::function<void(std::size_t, std::size_t, const Rational&)> rec =
          [&](std::size_t pos, std::size_t state, const Rational& prob) {
            xs[pos] = *m.payoffs[state].exact;
            if (pos + 1 == length) {
              atoms.push_back({ExactWindow(lo, hi, xs), Rational(scale * prob)});
              return;
            }
            for (std::size_t next = 0; next < m.transition.size(); ++next) {
              if (m.transition[state][next] == 0) continue;
              rec(pos + 1, next, Rational(prob * m.transition[state][next]));
            }
          };
      for (std::size_t s = 0; s < pi.size(); ++s) rec(0, s, pi[s]);
      return;
    }

    case ProcessKind::MovingAverage: {
      const auto& ma = std::get<MovingAverageSpec>(process.spec().body);
      const auto& inner = std::get<IidDiscreteSpec>(ma.innovation);
      const std::size_t q = ma.coefficients.size() - 1;
      std::vector<Rational> xs(length);
      enumerate_iid(inner, length + q, [&](const std::vector<Rational>& eps, const Rational& p) {
        for (std::size_t k = 0; k < length; ++k) {
          Rational x = 0;
          for (std::size_t i = 0; i <= q; ++i) x += *ma.coefficients[i].exact * eps[k + q - i];
          xs[k] = x;
        }
        atoms.push_back({ExactWindow(lo, hi, xs), Rational(scale * p)});
      });
      return;
    }

    case ProcessKind::Mixture: {
      const auto& mix = std::get<MixtureSpec>(process.spec().body);
      for (std::size_t c = 0; c < mix.components.size(); ++c) {
        const auto& w = mix.components[c].weight;
        if (w == 0) continue;
        enumerate(process.children()[c], lo, hi, Rational(scale * w), atoms);
      }
      return;
    }

    case ProcessKind::IidGaussian:
    case ProcessKind::Rotation:
      break;
  }
  throw UnsupportedProcess(std::string(to_string(process.kind())) + " has continuous support");
}

}  // namespace

std::uint64_t atom_count(const Process& process, Index length) {
  switch (process.kind()) {
    case ProcessKind::IidDiscrete:
      return power(positive_count(std::get<IidDiscreteSpec>(process.spec().body).probabilities), length);

    case ProcessKind::MarkovChain: {
      const auto& m = std::get<MarkovChainSpec>(process.spec().body);
      const auto n = m.transition.size();
      std::vector<std::uint64_t> paths(n, 1);
      for (Index step = 1; step < length; ++step) {
        std::vector<std::uint64_t> next(n, 0);
        for (std::size_t s = 0; s < n; ++s) {
          for (std::size_t t = 0; t < n; ++t) {
            if (m.transition[s][t] > 0) next[t] = saturating_add(next[t], paths[s]);
          }
        }
        paths = std::move(next);
      }
      std::uint64_t total = 0;
      for (auto p : paths) total = saturating_add(total, p);
      return total;
    }

    case ProcessKind::MovingAverage: {
      const auto& ma = std::get<MovingAverageSpec>(process.spec().body);
      if (const auto* inner = std::get_if<IidDiscreteSpec>(&ma.innovation)) {
        return power(positive_count(inner->probabilities), length + static_cast<Index>(ma.coefficients.size()) - 1);
      }
      break;
    }

    case ProcessKind::Mixture: {
      const auto& mix = std::get<MixtureSpec>(process.spec().body);
      std::uint64_t total = 0;
      for (std::size_t c = 0; c < mix.components.size(); ++c) {
        if (mix.components[c].weight == 0) continue;
        total = saturating_add(total, atom_count(process.children()[c], length));
      }
      return total;
    }

    case ProcessKind::IidGaussian:
    case ProcessKind::Rotation:
      break;
  }
  throw UnsupportedProcess(std::string(to_string(process.kind())) + " has continuous support");
}

ExactDistribution exact_window_distribution(const Process& process, Index lo, Index hi, std::uint64_t cap) {
  if (lo > 0 || hi < 0 || hi - lo < 1) {
    throw std::invalid_argument("exact_window_distribution: need lo <= 0 <= hi and hi - lo >= 1");
  }
  if (!process.finite_support()) {
    throw UnsupportedProcess("exact enumeration needs finite support; " +
                             std::string(to_string(process.kind())) + " is continuous");
  }
  if (!process.exact_capable()) {
    throw UnsupportedProcess("exact enumeration needs payoffs declared as integers or \"p/q\" rationals");
  }
  const auto count = atom_count(process, hi - lo);
  if (count > cap) {
    throw ExplosionCap("window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] has " +
                       (count == kSaturated ? std::string("more than 2^64") : std::to_string(count)) +
                       " atoms, cap is " + std::to_string(cap));
  }
  ExactDistribution out{lo, hi, {}};
  out.atoms.reserve(static_cast<std::size_t>(count));
  enumerate(process, lo, hi, Rational(1), out.atoms);
  return out;
}

ExactWindow to_exact(const PathWindow& window) {
  std::vector<Rational> xs;
  xs.reserve(window.increments().size());
  for (double x : window.increments()) xs.push_back(rational_from_double(x));
  return ExactWindow(window.lo(), window.hi(), std::move(xs));
}

}  // namespace mtp
