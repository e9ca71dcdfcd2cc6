#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "fpl/errors.hpp"

namespace fpl {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. boost::rational keeps values reduced with a
/// positive denominator, which is the canonical form required here.
using Rational = boost::rational<BigInt>;

inline double to_double(const Rational& r) {
  return r.numerator().convert_to<double>() /
         r.denominator().convert_to<double>();
}

inline Rational rational_abs(const Rational& r) { return r < Rational(0) ? -r : r; }

inline BigInt pow10(unsigned k) {
  BigInt p = 1;
  for (unsigned i = 0; i < k; ++i) p *= 10;
  return p;
}

/// Parses "p/q", an optionally signed decimal ("-2.5", "1e-3"), or a plain
/// integer into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&](const char* what) -> Rational {
    throw InvalidInput(std::string("bad rational literal '") +
                       std::string(text) + "': " + what);
  };
  if (text.empty()) return fail("empty");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string num(text.substr(0, slash));
    std::string den(text.substr(slash + 1));
    if (num.empty() || den.empty()) return fail("missing numerator or denominator");
    try {
      BigInt p(num), q(den);
      if (q == 0) return fail("zero denominator");
      return Rational(p, q);
    } catch (const std::exception&) {
      return fail("non-integer fraction part");
    }
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  BigInt mantissa = 0;
  long exponent = 0;
  bool any_digit = false;
  for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
    mantissa = mantissa * 10 + (text[i] - '0');
    any_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
      mantissa = mantissa * 10 + (text[i] - '0');
      --exponent;
      any_digit = true;
    }
  }
  if (!any_digit) return fail("no digits");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_neg = text[i] == '-';
      ++i;
    }
    if (i == text.size()) return fail("empty exponent");
    long e = 0;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
      e = e * 10 + (text[i] - '0');
      if (e > 100000) return fail("exponent too large");
    }
    exponent += exp_neg ? -e : e;
  }
  if (i != text.size()) return fail("trailing characters");

  Rational value(mantissa, BigInt(1));
  if (exponent > 0)
    value *= Rational(pow10(static_cast<unsigned>(exponent)), BigInt(1));
  else if (exponent < 0)
    value /= Rational(pow10(static_cast<unsigned>(-exponent)), BigInt(1));
  return negative ? -value : value;
}

/// Formats a rational canonically: a plain integer when the denominator is
/// one, the exact finite decimal when the denominator is 2^a * 5^b, and
/// "p/q" otherwise.
inline std::string format_rational(const Rational& r) {
  BigInt p = r.numerator();
  BigInt q = r.denominator();
  if (q == 1) return p.str();

  BigInt rest = q;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return p.str() + "/" + q.str();

  unsigned digits = twos > fives ? twos : fives;
  BigInt scaled = p * (pow10(digits) / q);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (negative ? "-" : "") + s;
}

/// Exact square root when both numerator and denominator are perfect
/// squares; empty otherwise.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < Rational(0)) return std::nullopt;
  if (r == Rational(0)) return Rational(0);
  BigInt p = boost::multiprecision::sqrt(r.numerator());
  BigInt q = boost::multiprecision::sqrt(r.denominator());
  if (p * p != r.numerator() || q * q != r.denominator()) return std::nullopt;
  return Rational(p, q);
}

}  // namespace fpl
