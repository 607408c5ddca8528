#include "arskit/surd.hpp"

#include <cmath>
#include <ostream>
#include <regex>
#include <stdexcept>

namespace arskit {

namespace {

bool perfect_square(const mpz_class& z) { return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0; }

mpz_class isqrt(const mpz_class& z) {
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), z.get_mpz_t());
  return s;
}

/// sqrt(q) if q is the square of a rational.
bool rational_sqrt(const Rational& q, Rational& out) {
  if (q < 0) return false;
  if (!perfect_square(q.get_num()) || !perfect_square(q.get_den())) return false;
  out = Rational(isqrt(q.get_num()), isqrt(q.get_den()));
  out.canonicalize();
  return true;
}

}  // namespace

Surd::Surd(const Rational& a, const Rational& b, const Rational& radicand) : a_(a), b_(b), r_(radicand) {
  if (r_ < 0) throw std::domain_error("negative radicand");
  normalize();
}

void Surd::normalize() {
  if (b_ == 0 || r_ == 0) {
    b_ = 0;
    r_ = 0;
    return;
  }
  // sqrt(p/q) = sqrt(p*q)/q, then pull square factors out of the integer radicand.
  mpz_class rad = r_.get_num() * r_.get_den();
  Rational coef = b_ / Rational(r_.get_den());
  for (unsigned long f = 2; f < 2000 && f * f <= rad; ++f) {
    const unsigned long sq = f * f;
    while (mpz_divisible_ui_p(rad.get_mpz_t(), sq) != 0) {
      rad /= sq;
      coef *= f;
    }
  }
  if (perfect_square(rad)) {
    a_ += coef * Rational(isqrt(rad));
    b_ = 0;
    r_ = 0;
    return;
  }
  b_ = coef;
  b_.canonicalize();
  r_ = Rational(rad);
}

Surd Surd::sqrt(const Rational& r) {
  if (r < 0) throw std::domain_error("square root of a negative rational");
  return Surd(Rational(0), Rational(1), r);
}

Rational Surd::to_rational() const {
  if (!is_rational()) throw std::domain_error("irrational value " + str());
  return a_;
}

double Surd::to_double() const {
  if (b_ == 0) return a_.get_d();
  return a_.get_d() + b_.get_d() * std::sqrt(r_.get_d());
}

int Surd::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 r.
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * r_;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

const Rational& Surd::common_radicand(const Surd& o) const { return b_ != 0 ? r_ : o.r_; }

Rational Surd::aligned_coefficient(const Surd& o) const {
  if (o.b_ == 0) return Rational(0);
  if (b_ == 0 || o.r_ == r_) return o.b_;
  // sqrt(r2) = (sqrt(r1*r2)/r1) * sqrt(r1) when r1*r2 is a rational square.
  Rational k;
  if (!rational_sqrt(r_ * o.r_, k)) {
    throw std::domain_error("incompatible radicals sqrt(" + r_.get_str() + ") and sqrt(" + o.r_.get_str() + ")");
  }
  return o.b_ * k / r_;
}

Surd Surd::operator-() const {
  Surd s = *this;
  s.a_ = -s.a_;
  s.b_ = -s.b_;
  return s;
}

Surd& Surd::operator+=(const Surd& o) {
  const Rational ob = aligned_coefficient(o);
  const Rational r = common_radicand(o);
  a_ += o.a_;
  b_ += ob;
  r_ = r;
  normalize();
  return *this;
}

Surd& Surd::operator-=(const Surd& o) { return *this += -o; }

Surd& Surd::operator*=(const Surd& o) {
  const Rational ob = aligned_coefficient(o);
  const Rational r = common_radicand(o);
  const Rational na = a_ * o.a_ + b_ * ob * r;
  const Rational nb = a_ * ob + b_ * o.a_;
  a_ = na;
  b_ = nb;
  r_ = r;
  normalize();
  return *this;
}

Surd& Surd::operator/=(const Surd& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  const Rational ob = aligned_coefficient(o);
  const Rational r = common_radicand(o);
  // (a + b s)/(c + d s) = (a + b s)(c - d s)/(c^2 - d^2 r)
  const Rational den = o.a_ * o.a_ - ob * ob * r;
  const Rational na = (a_ * o.a_ - b_ * ob * r) / den;
  const Rational nb = (b_ * o.a_ - a_ * ob) / den;
  a_ = na;
  b_ = nb;
  r_ = r;
  normalize();
  return *this;
}

std::string Surd::str() const {
  if (b_ == 0) return a_.get_str();
  std::string out;
  if (a_ != 0) out = a_.get_str();
  Rational mag = b_;
  if (b_ < 0) {
    out += "-";
    mag = -b_;
  } else if (a_ != 0) {
    out += "+";
  }
  if (mag != 1) out += mag.get_str() + "*";
  out += "sqrt(" + r_.get_str() + ")";
  return out;
}

Surd Surd::parse(std::string_view text) {
  static const std::regex kForm(
      R"(^\s*(?:([+-]?\d+(?:/\d+)?)\s*)?(?:([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(\d+(?:/\d+)?)\s*\))?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, kForm) || (!m[1].matched && !m[4].matched)) {
    return Surd(parse_rational(s));
  }
  Rational a = m[1].matched ? parse_rational(m[1].str()) : Rational(0);
  if (!m[4].matched) return Surd(a);
  if (m[1].matched && !m[2].matched) throw std::invalid_argument("malformed surd '" + s + "'");
  Rational b = m[3].matched ? parse_rational(m[3].str()) : Rational(1);
  if (m[2].matched && m[2].str() == "-") b = -b;
  return Surd(a, b, parse_rational(m[4].str()));
}

Surd abs(const Surd& s) { return s.sign() < 0 ? -s : s; }

double to_double(const Surd& s) { return s.to_double(); }

std::ostream& operator<<(std::ostream& os, const Surd& s) { return os << s.str(); }

}  // namespace arskit
