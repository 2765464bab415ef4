#include <algorithm>
#include <cmath>

#include "masstransport/process.hpp"
#include "masstransport/rng.hpp"

namespace mtp {

namespace {

std::size_t pick(std::span<const double> cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), std::ssize(cdf) - 1));
}

/// One i.i.d. draw at `index` for IidDiscrete or IidGaussian.
double draw_iid(const Process& process, const CounterRng& rng, Index index) {
  if (process.kind() == ProcessKind::IidGaussian) {
    const auto& g = std::get<IidGaussianSpec>(process.spec().body);
    return g.mean + g.stddev * rng.normal(Stream::Draw, index);
  }
  const auto& d = std::get<IidDiscreteSpec>(process.spec().body);
  return d.values[pick(process.cdf(), rng.uniform(Stream::Draw, index))].value;
}

double fractional(double x) { return x - std::floor(x); }

/// Writes X_{lo+1}..X_hi into `out`.
void fill(const Process& process, Index lo, Index hi, const CounterRng& rng, std::span<double> out) {
  switch (process.kind()) {
    case ProcessKind::IidDiscrete:
    case ProcessKind::IidGaussian:
      for (Index k = lo + 1; k <= hi; ++k) out[static_cast<std::size_t>(k - lo - 1)] = draw_iid(process, rng, k);
      return;

    case ProcessKind::MarkovChain: {
      const auto& m = std::get<MarkovChainSpec>(process.spec().body);
      const auto rows = process.row_cdfs();
      std::size_t state = pick(process.cdf(), rng.uniform(Stream::State, lo + 1));
      out[0] = m.payoffs[state].value;
      for (Index k = lo + 2; k <= hi; ++k) {
        state = pick(rows[state], rng.uniform(Stream::State, k));
        out[static_cast<std::size_t>(k - lo - 1)] = m.payoffs[state].value;
      }
      return;
    }

    case ProcessKind::MovingAverage: {
      const auto& ma = std::get<MovingAverageSpec>(process.spec().body);
      const Process& innovation = process.children().front();
      const auto q = static_cast<Index>(ma.coefficients.size()) - 1;
      // eps[j] holds the innovation at index lo + 1 - q + j.
      std::vector<double> eps(static_cast<std::size_t>(hi - lo + q));
      for (std::size_t j = 0; j < eps.size(); ++j) {
        eps[j] = draw_iid(innovation, rng, lo + 1 - q + static_cast<Index>(j));
      }
      for (Index k = lo + 1; k <= hi; ++k) {
        double x = 0.0;
        for (Index i = 0; i <= q; ++i) {
          x += ma.coefficients[static_cast<std::size_t>(i)].value * eps[static_cast<std::size_t>(k - i - lo - 1 + q)];
        }
        out[static_cast<std::size_t>(k - lo - 1)] = x;
      }
      return;
    }

    case ProcessKind::Rotation: {
      const auto& r = std::get<RotationSpec>(process.spec().body);
      const double theta = rng.uniform(Stream::Phase, 0);
      for (Index k = lo + 1; k <= hi; ++k) {
        const double phase = fractional(theta + fractional(static_cast<double>(k) * r.alpha));
        const auto it = std::upper_bound(r.pieces.begin(), r.pieces.end(), phase,
                                         [](double v, const RotationPiece& p) { return v < p.breakpoint; });
        out[static_cast<std::size_t>(k - lo - 1)] = std::prev(it)->value;
      }
      return;
    }

    case ProcessKind::Mixture: {
      const auto c = pick(process.cdf(), rng.uniform(Stream::Component, 0));
      fill(process.children()[c], lo, hi, rng, out);
      return;
    }
  }
}

}  // namespace

PathWindow sample_window(const Process& process, Index lo, Index hi, std::uint64_t seed, std::uint64_t trial) {
  if (lo > 0 || hi < 0 || hi - lo < 1) {
    throw std::invalid_argument("sample_window: need lo <= 0 <= hi and hi - lo >= 1");
  }
  std::vector<double> increments(static_cast<std::size_t>(hi - lo));
  fill(process, lo, hi, CounterRng(seed, trial), increments);
  return PathWindow(lo, hi, std::move(increments));
}

std::size_t sampled_component(const Process& process, std::uint64_t seed, std::uint64_t trial) {
  if (process.kind() != ProcessKind::Mixture) return 0;
  return pick(process.cdf(), CounterRng(seed, trial).uniform(Stream::Component, 0));
}

}  // namespace mtp
