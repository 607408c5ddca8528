#pragma once

#include "arskit/metric.hpp"
#include "arskit/tables.hpp"

#include <random>
#include <vector>

namespace arskit::test {

inline Surd q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return Surd(r);
}

inline ExactMat col(std::initializer_list<long> v) {
  std::vector<Surd> out;
  for (long x : v) out.push_back(q(x));
  return ExactMat::column(out);
}

inline Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

/// heis3 derivation [[a,b,0],[c,d,0],[e,f,a+d]].
inline ExactMat heis_D(const Surd& a, const Surd& b, const Surd& c, const Surd& d, const Surd& e, const Surd& f) {
  ExactMat D(3, 3);
  D(0, 0) = a;
  D(0, 1) = b;
  D(1, 0) = c;
  D(1, 1) = d;
  D(2, 0) = e;
  D(2, 1) = f;
  D(2, 2) = a + d;
  return D;
}

inline ExactMat aff2_D(const Surd& a, const Surd& b) {
  ExactMat D(2, 2);
  D(1, 0) = a;
  D(1, 1) = b;
  return D;
}

inline ARSSpec heis_xy(const ExactMat& D) { return ARSSpec::create(GroupTag::heis3, D, {col({1, 0, 0}), col({0, 1, 0})}); }
inline ARSSpec heis_xz(const ExactMat& D) { return ARSSpec::create(GroupTag::heis3, D, {col({1, 0, 0}), col({0, 0, 1})}); }

inline ARSSpec nonsub_row_spec(const NonsubRow& row) { return heis_xy(nonsub_derivation(row)); }

/// Rational in [-m, m] on the grid 1/den.
inline Surd random_rational(std::mt19937& rng, int m, int den) {
  std::uniform_int_distribution<int> dist(-m * den, m * den);
  return q(dist(rng), den);
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace arskit::test
