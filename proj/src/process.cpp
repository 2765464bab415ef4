#include <algorithm>
#include <cmath>
#include <string>

#include "masstransport/errors.hpp"
#include "masstransport/process.hpp"

namespace mtp {

namespace {

std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void check_law(const std::vector<Rational>& probabilities, const std::string& path) {
  if (probabilities.empty()) throw InvalidSpec(path + ": empty probability list");
  Rational total = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] < 0) throw InvalidSpec(at(path, i) + ": negative probability");
    total += probabilities[i];
  }
  if (total != 1) throw InvalidSpec(path + ": probabilities sum to " + to_string(total) + ", not 1");
}

void check_finite(const Number& n, const std::string& path) {
  if (!std::isfinite(n.value)) throw InvalidSpec(path + ": value is not finite");
}

std::vector<double> cumulative(const std::vector<Rational>& probabilities) {
  std::vector<double> cdf;
  cdf.reserve(probabilities.size());
  Rational running = 0;
  for (const auto& p : probabilities) {
    running += p;
    cdf.push_back(to_double(running));
  }
  return cdf;
}

bool all_exact(const std::vector<Number>& numbers) {
  return std::all_of(numbers.begin(), numbers.end(), [](const Number& n) { return n.is_exact(); });
}

}  // namespace

class ProcessBuilder {
 public:
  static Process build(ProcessSpec spec, const std::string& path) {
    Process p;
    p.spec_ = std::move(spec);
    std::visit([&](const auto& body) { fill(p, body, path); }, p.spec_.body);
    return p;
  }

 private:
  static void fill(Process& p, const IidDiscreteSpec& s, const std::string& path) {
    if (s.values.size() != s.probabilities.size()) {
      throw InvalidSpec(path + ": values and probabilities differ in length");
    }
    check_law(s.probabilities, path + "/probabilities");
    for (std::size_t i = 0; i < s.values.size(); ++i) check_finite(s.values[i], at(path + "/values", i));

    p.finite_support_ = true;
    p.exact_capable_ = all_exact(s.values);
    p.cdf_ = cumulative(s.probabilities);
    double mean = 0.0;
    Rational exact = 0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      mean += to_double(s.probabilities[i]) * s.values[i].value;
      if (p.exact_capable_) exact += s.probabilities[i] * *s.values[i].exact;
    }
    if (p.exact_capable_) {
      p.exact_mean_ = exact;
      p.mean_ = to_double(exact);
    } else {
      p.mean_ = mean;
    }
  }

  static void fill(Process& p, const IidGaussianSpec& s, const std::string& path) {
    if (!std::isfinite(s.mean)) throw InvalidSpec(path + "/mean: not finite");
    if (!std::isfinite(s.stddev) || s.stddev < 0) throw InvalidSpec(path + "/stddev: must be finite and >= 0");
    p.mean_ = s.mean;
  }

  static void fill(Process& p, const MarkovChainSpec& s, const std::string& path) {
    if (s.payoffs.size() != s.transition.size()) {
      throw InvalidSpec(path + "/payoffs: expected one payoff per state");
    }
    for (std::size_t i = 0; i < s.payoffs.size(); ++i) check_finite(s.payoffs[i], at(path + "/payoffs", i));
    try {
      p.stationary_ = stationary_distribution(s.transition);
    } catch (const InvalidSpec& e) {
      throw InvalidSpec(path + e.what());
    }

    p.finite_support_ = true;
    p.exact_capable_ = all_exact(s.payoffs);
    p.cdf_ = cumulative(p.stationary_);
    for (const auto& row : s.transition) p.row_cdfs_.push_back(cumulative(row));
    double mean = 0.0;
    Rational exact = 0;
    for (std::size_t i = 0; i < s.payoffs.size(); ++i) {
      mean += to_double(p.stationary_[i]) * s.payoffs[i].value;
      if (p.exact_capable_) exact += p.stationary_[i] * *s.payoffs[i].exact;
    }
    if (p.exact_capable_) {
      p.exact_mean_ = exact;
      p.mean_ = to_double(exact);
    } else {
      p.mean_ = mean;
    }
  }

  static void fill(Process& p, const MovingAverageSpec& s, const std::string& path) {
    if (s.coefficients.empty()) throw InvalidSpec(path + "/coefficients: empty coefficient list");
    for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
      check_finite(s.coefficients[i], at(path + "/coefficients", i));
    }
    const auto innovation =
        std::visit([](const auto& inner) { return ProcessSpec{inner}; }, s.innovation);
    p.children_.push_back(build(innovation, path + "/innovation"));
    const Process& inner = p.children_.front();

    p.finite_support_ = inner.finite_support_;
    p.exact_capable_ = inner.exact_capable_ && all_exact(s.coefficients);
    double total = 0.0;
    Rational exact_total = 0;
    for (const auto& c : s.coefficients) {
      total += c.value;
      if (p.exact_capable_) exact_total += *c.exact;
    }
    if (p.exact_capable_) {
      p.exact_mean_ = Rational(exact_total * *inner.exact_mean_);
      p.mean_ = to_double(*p.exact_mean_);
    } else {
      p.mean_ = total * inner.mean_;
    }
  }

  static void fill(Process& p, const RotationSpec& s, const std::string& path) {
    if (!(s.alpha > 0.0 && s.alpha < 1.0)) throw InvalidSpec(path + "/alpha: must lie in (0, 1)");
    if (s.pieces.empty()) throw InvalidSpec(path + "/pieces: empty payoff table");
    if (s.pieces.front().breakpoint != 0.0) throw InvalidSpec(path + "/pieces/0: first breakpoint must be 0");
    for (std::size_t i = 0; i < s.pieces.size(); ++i) {
      const auto& piece = s.pieces[i];
      if (!std::isfinite(piece.value)) throw InvalidSpec(at(path + "/pieces", i) + ": value is not finite");
      if (!(piece.breakpoint >= 0.0 && piece.breakpoint < 1.0)) {
        throw InvalidSpec(at(path + "/pieces", i) + ": breakpoint outside [0, 1)");
      }
      if (i > 0 && !(piece.breakpoint > s.pieces[i - 1].breakpoint)) {
        throw InvalidSpec(at(path + "/pieces", i) + ": breakpoints must be strictly increasing");
      }
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < s.pieces.size(); ++i) {
      const double end = i + 1 < s.pieces.size() ? s.pieces[i + 1].breakpoint : 1.0;
      mean += (end - s.pieces[i].breakpoint) * s.pieces[i].value;
    }
    p.mean_ = mean;
  }

  static void fill(Process& p, const MixtureSpec& s, const std::string& path) {
    if (s.components.empty()) throw InvalidSpec(path + "/components: empty mixture");
    std::vector<Rational> weights;
    for (std::size_t i = 0; i < s.components.size(); ++i) {
      const auto& c = s.components[i];
      const auto here = at(path + "/components", i);
      if (c.process.kind() == ProcessKind::Mixture) {
        throw InvalidSpec(here + "/process: nested mixtures are not supported");
      }
      weights.push_back(c.weight);
      p.children_.push_back(build(c.process, here + "/process"));
    }
    try {
      check_law(weights, path + "/components");
    } catch (const InvalidSpec& e) {
      throw InvalidSpec(std::string(e.what()) + " (weights)");
    }
    p.cdf_ = cumulative(weights);

    p.finite_support_ = true;
    p.exact_capable_ = true;
    double mean = 0.0;
    Rational exact = 0;
    for (std::size_t i = 0; i < p.children_.size(); ++i) {
      const auto& child = p.children_[i];
      p.finite_support_ = p.finite_support_ && child.finite_support_;
      p.exact_capable_ = p.exact_capable_ && child.exact_capable_;
      mean += to_double(weights[i]) * child.mean_;
      if (child.exact_mean_) exact += weights[i] * *child.exact_mean_;
    }
    if (p.exact_capable_) {
      p.exact_mean_ = exact;
      p.mean_ = to_double(exact);
    } else {
      p.mean_ = mean;
    }
  }
};

Process Process::make(ProcessSpec spec) { return ProcessBuilder::build(std::move(spec), ""); }

}  // namespace mtp
