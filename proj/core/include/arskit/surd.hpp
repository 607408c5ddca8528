#pragma once

#include "arskit/rational.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace arskit {

/**
 * @brief Exact real number a + b*sqrt(r) with rational a, b and rational r >= 0.
 *
 * Arithmetic between two surds with incompatible radicals (sqrt(r1/r2) irrational)
 * throws std::domain_error.
 */
class Surd {
 public:
  Surd() = default;
  Surd(int v) : a_(v) {}
  Surd(long v) : a_(v) {}
  Surd(const Rational& a) : a_(a) {}
  Surd(const Rational& a, const Rational& b, const Rational& radicand);

  /// Square root of a nonnegative rational; throws std::domain_error for r < 0.
  static Surd sqrt(const Rational& r);
  static Surd parse(std::string_view text);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  /// Radicand; 0 when the value is rational.
  const Rational& radicand() const { return r_; }

  bool is_rational() const { return b_ == 0; }
  /// Throws std::domain_error if irrational.
  Rational to_rational() const;
  double to_double() const;
  int sign() const;
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  Surd operator-() const;
  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  Surd& operator/=(const Surd& o);

  friend Surd operator+(Surd l, const Surd& r) { return l += r; }
  friend Surd operator-(Surd l, const Surd& r) { return l -= r; }
  friend Surd operator*(Surd l, const Surd& r) { return l *= r; }
  friend Surd operator/(Surd l, const Surd& r) { return l /= r; }
  friend bool operator==(const Surd& l, const Surd& r) { return (l - r).is_zero(); }
  friend bool operator!=(const Surd& l, const Surd& r) { return !(l == r); }
  friend bool operator<(const Surd& l, const Surd& r) { return (l - r).sign() < 0; }
  friend bool operator>(const Surd& l, const Surd& r) { return r < l; }
  friend bool operator<=(const Surd& l, const Surd& r) { return !(r < l); }
  friend bool operator>=(const Surd& l, const Surd& r) { return !(l < r); }

  /// Text such as "3", "-1/2", "sqrt(2)", "1/2-3/2*sqrt(5)".
  std::string str() const;

 private:
  void normalize();
  /// Expresses o's irrational part over this radicand; returns its coefficient.
  Rational aligned_coefficient(const Surd& o) const;
  const Rational& common_radicand(const Surd& o) const;

  Rational a_;
  Rational b_;
  Rational r_;
};

Surd abs(const Surd& s);
double to_double(const Surd& s);
inline double to_double(double v) { return v; }
std::ostream& operator<<(std::ostream& os, const Surd& s);

}  // namespace arskit
