#include "masstransport/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace mtp {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

boost::multiprecision::cpp_int parse_integer(std::string_view s) {
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const boost::multiprecision::cpp_int v{std::string(s)};
  return negative ? boost::multiprecision::cpp_int(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) return Rational(parse_integer(num));

  const auto den = text.substr(slash + 1);
  if (den.empty() || den.front() == '-' || den.front() == '+' || !is_integer_literal(den)) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  const auto d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(num), d);
}

std::string to_string(const Rational& r) {
  const auto& num = boost::multiprecision::numerator(r);
  const auto& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  // mantissa * 2^53 is an exact integer.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational r(scaled);
  exponent -= 53;
  boost::multiprecision::cpp_int power = 1;
  power <<= std::abs(exponent);
  if (exponent >= 0) {
    r *= Rational(power);
  } else {
    r /= Rational(power);
  }
  return r;
}

Number Number::from_rational(const Rational& r) { return Number{to_double(r), r}; }

Number Number::from_double(double x) { return Number{x, std::nullopt}; }

Number operator-(const Number& n) {
  Number out{-n.value, std::nullopt};
  if (n.exact) out.exact = Rational(-*n.exact);
  return out;
}

}  // namespace mtp
