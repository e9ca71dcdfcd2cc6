#pragma once

#include <cmath>
#include <concepts>
#include <string>
#include <type_traits>

#include "fpl/rational.hpp"

namespace fpl {

/// The two arithmetic modes: exact rationals or binary doubles. Mode is a
/// compile-time property of every value-carrying type, so mixing modes
/// within one space is a type error rather than a runtime one.
template <typename S>
concept ScalarMode = std::same_as<S, double> || std::same_as<S, Rational>;

template <ScalarMode S>
inline constexpr bool kExactMode = std::same_as<S, Rational>;

inline double to_double(double x) { return x; }

template <ScalarMode S>
S scalar_from_string(std::string_view text) {
  if constexpr (kExactMode<S>) {
    return parse_rational(text);
  } else {
    std::size_t pos = 0;
    double v = std::stod(std::string(text), &pos);
    if (pos != text.size()) {
      // Allow the fraction form in float mode too.
      if (text[pos] == '/') {
        double q = std::stod(std::string(text.substr(pos + 1)));
        if (q == 0.0) throw InvalidInput("zero denominator in fraction literal");
        return v / q;
      }
      throw InvalidInput("bad numeric literal '" + std::string(text) + "'");
    }
    return v;
  }
}

template <ScalarMode S>
S scalar_from_int(long v) {
  if constexpr (kExactMode<S>) return Rational(BigInt(v), BigInt(1));
  else return static_cast<double>(v);
}

template <ScalarMode S>
S scalar_ratio(long p, long q) {
  if constexpr (kExactMode<S>) return Rational(BigInt(p), BigInt(q));
  else return static_cast<double>(p) / static_cast<double>(q);
}

/// Default class tolerance: zero in exact mode, 1e-9 in float mode.
template <ScalarMode S>
S default_tol() {
  if constexpr (kExactMode<S>) return Rational(0);
  else return 1e-9;
}

inline double scalar_abs(double x) { return std::fabs(x); }
inline Rational scalar_abs(const Rational& x) { return rational_abs(x); }

inline std::string scalar_to_string(const Rational& x) { return format_rational(x); }
inline std::string scalar_to_string(double x) { return std::to_string(x); }

/// Class feasibility at a threshold: strict inequality in exact mode, a
/// tol-backed margin in float mode. This is the boundary rule every
/// certificate shares.
template <ScalarMode S>
bool strictly_below(const S& value, const S& threshold, const S& tol) {
  if constexpr (kExactMode<S>) {
    (void)tol;
    return value < threshold;
  } else {
    return value <= threshold - tol;
  }
}

}  // namespace fpl
