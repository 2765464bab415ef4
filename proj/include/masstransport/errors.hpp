#pragma once

#include <stdexcept>
#include <string>

namespace mtp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed process description: bad probabilities, non-stochastic rows,
/// unordered breakpoints and the like. The message starts with the JSON-style
/// path of the offending field when one is known.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class NoStationaryDistribution : public Error {
 public:
  using Error::Error;
};

/// Requested an exact computation on a process with continuous support or
/// payoffs that were not declared as rationals.
class UnsupportedProcess : public Error {
 public:
  using Error::Error;
};

class ExplosionCap : public Error {
 public:
  using Error::Error;
};

/// Schema-level failure while reading a process-spec document.
class SpecParseError : public Error {
 public:
  SpecParseError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace mtp
