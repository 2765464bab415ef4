#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mtp {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or "p" (optional sign on p). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Exact value of a finite double.
Rational rational_from_double(double x);

/// A real-valued parameter. Payoffs and coefficients are simulated as
/// doubles; when declared as integers or "p/q" strings they also carry the
/// exact value used by enumeration.
struct Number {
  double value = 0.0;
  std::optional<Rational> exact;

  static Number from_rational(const Rational& r);
  static Number from_double(double x);

  bool is_exact() const noexcept { return exact.has_value(); }

  friend bool operator==(const Number& a, const Number& b) {
    return a.value == b.value && a.exact == b.exact;
  }
};

Number operator-(const Number& n);

}  // namespace mtp
