#include "arskit/rational.hpp"

#include <cmath>
#include <regex>
#include <stdexcept>

namespace arskit {

namespace {

const std::regex kFraction(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
const std::regex kDecimal(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");

mpz_class pow10(unsigned long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, kFraction)) {
    mpz_class num(m[1].str());
    mpz_class den(m[2].str());
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(s, m, kDecimal)) {
    const std::string int_part = m[2].str();
    const std::string frac_part = m[3].matched ? m[3].str() : "";
    if (int_part.empty() && frac_part.empty()) {
      throw std::invalid_argument("malformed number '" + s + "'");
    }
    mpz_class digits(int_part + frac_part == "" ? "0" : int_part + frac_part);
    long exponent = -static_cast<long>(frac_part.size());
    if (m[4].matched) {
      const long e = std::stol(m[4].str());
      if (e > 4000 || e < -4000) throw std::invalid_argument("exponent out of range in '" + s + "'");
      exponent += e;
    }
    Rational q = exponent >= 0 ? Rational(digits * pow10(static_cast<unsigned long>(exponent)))
                               : Rational(digits, pow10(static_cast<unsigned long>(-exponent)));
    q.canonicalize();
    if (m[1].str() == "-") q = -q;
    return q;
  }
  throw std::invalid_argument("malformed number '" + s + "'");
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational snap_to_rational(double value, long max_den) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot snap a non-finite value");
  if (max_den < 1) throw std::invalid_argument("max_den must be positive");
  // Convergents p/q of the continued fraction of the exact binary value.
  const Rational x(value);
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = x;
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    const mpz_class q2 = a * q1 + q0;
    if (q2 > max_den) {
      // Best semiconvergent within the bound.
      const mpz_class k = (max_den - q0) / q1;
      const Rational semi(p0 + k * p1, q0 + k * q1);
      const Rational conv(p1, q1);
      Rational ds = semi - x, dc = conv - x;
      return abs(ds) < abs(dc) ? Rational(semi) : Rational(conv);
    }
    const mpz_class p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  Rational r(p1, q1);
  r.canonicalize();
  return r;
}

}  // namespace arskit
