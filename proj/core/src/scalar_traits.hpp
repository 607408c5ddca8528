#pragma once

#include "arskit/exact_matrix.hpp"

#include <cmath>

// Scalar policy shared by the exact (Surd) and floating (double) code paths.

namespace arskit::detail {

template <class T>
using Mx = ExactMatrix<T>;

template <class T>
struct Num;

template <>
struct Num<Surd> {
  static constexpr bool exact = true;
  static bool zero(const Surd& v) { return v.is_zero(); }
  static int sign(const Surd& v) { return v.sign(); }
  static Surd sqrt(const Surd& v) { return Surd::sqrt(v.to_rational()); }
  static Surd abs(const Surd& v) { return arskit::abs(v); }
};

template <>
struct Num<double> {
  static constexpr bool exact = false;
  static constexpr double tol = 1e-9;
  static bool zero(double v) { return std::abs(v) <= tol; }
  static int sign(double v) { return zero(v) ? 0 : (v > 0 ? 1 : -1); }
  static double sqrt(double v) { return std::sqrt(v); }
  static double abs(double v) { return std::abs(v); }
};

template <class T>
bool zero(const T& v) {
  return Num<T>::zero(v);
}
template <class T>
int sign(const T& v) {
  return Num<T>::sign(v);
}
/// Sign with zero counted as +1.
template <class T>
int sign1(const T& v) {
  return sign(v) < 0 ? -1 : 1;
}

inline Mx<double> to_mx(const Mat& m) {
  Mx<double> out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline Mx<double> to_mx(const ExactMat& m) {
  return m.map([](const Surd& v) { return v.to_double(); });
}

inline Mat to_eigen(const Mx<double>& m) {
  Mat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace arskit::detail
