#pragma once

#include <cmath>
#include <string_view>
#include <variant>
#include <vector>

#include "masstransport/rational.hpp"

namespace mtp {

enum class ProcessKind { IidDiscrete, IidGaussian, MarkovChain, MovingAverage, Rotation, Mixture };

std::string_view to_string(ProcessKind kind);

struct IidDiscreteSpec {
  std::vector<Number> values;
  std::vector<Rational> probabilities;

  friend bool operator==(const IidDiscreteSpec&, const IidDiscreteSpec&) = default;
};

struct IidGaussianSpec {
  double mean = 0.0;
  double stddev = 1.0;

  friend bool operator==(const IidGaussianSpec&, const IidGaussianSpec&) = default;
};

using TransitionMatrix = std::vector<std::vector<Rational>>;

struct MarkovChainSpec {
  TransitionMatrix transition;
  std::vector<Number> payoffs;  // f(state)

  friend bool operator==(const MarkovChainSpec&, const MarkovChainSpec&) = default;
};

using InnovationSpec = std::variant<IidDiscreteSpec, IidGaussianSpec>;

/// X_k = sum_i coefficients[i] * innovation_{k-i}.
struct MovingAverageSpec {
  std::vector<Number> coefficients;
  InnovationSpec innovation;

  friend bool operator==(const MovingAverageSpec&, const MovingAverageSpec&) = default;
};

/// Golden-ratio conjugate, (sqrt(5) - 1) / 2, as the nearest double.
inline const double kDefaultRotationAngle = (std::sqrt(5.0) - 1.0) / 2.0;

/// Payoff `value` on [breakpoint, next breakpoint); the last piece runs to 1.
struct RotationPiece {
  double breakpoint = 0.0;
  double value = 0.0;

  friend bool operator==(const RotationPiece&, const RotationPiece&) = default;
};

/// X_n = f(theta + n * alpha mod 1) with theta uniform on [0, 1).
struct RotationSpec {
  double alpha = kDefaultRotationAngle;
  std::vector<RotationPiece> pieces;

  friend bool operator==(const RotationSpec&, const RotationSpec&) = default;
};

struct MixtureComponent;

struct MixtureSpec {
  std::vector<MixtureComponent> components;

  friend bool operator==(const MixtureSpec&, const MixtureSpec&);
};

struct ProcessSpec {
  std::variant<IidDiscreteSpec, IidGaussianSpec, MarkovChainSpec, MovingAverageSpec,
               RotationSpec, MixtureSpec>
      body;

  ProcessKind kind() const noexcept { return static_cast<ProcessKind>(body.index()); }

  friend bool operator==(const ProcessSpec&, const ProcessSpec&) = default;
};

struct MixtureComponent {
  Rational weight;
  ProcessSpec process;

  friend bool operator==(const MixtureComponent&, const MixtureComponent&) = default;
};

inline bool operator==(const MixtureSpec& a, const MixtureSpec& b) {
  return a.components == b.components;
}

/// X identically equal to `value`.
ProcessSpec constant_spec(const Number& value);

/// The spec of -X, sampled pathwise as the negation of X for every kind
/// except IidGaussian (which is only negated in law).
ProcessSpec negated(const ProcessSpec& spec);

}  // namespace mtp
