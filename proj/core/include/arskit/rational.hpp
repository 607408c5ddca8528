#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace arskit {

using Rational = mpq_class;

/// Parses an integer, a fraction "p/q" or a decimal such as "-0.25" or "1.5e-3" exactly.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Record of a floating value replaced by a nearby rational.
struct SnapRecord {
  double input = 0.0;
  Rational snapped;
  double error = 0.0;
};

/// Best rational approximation with denominator at most max_den (continued fractions).
Rational snap_to_rational(double value, long max_den = 1'000'000);

}  // namespace arskit
