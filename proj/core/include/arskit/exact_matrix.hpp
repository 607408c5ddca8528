#pragma once

#include "arskit/surd.hpp"

#include <Eigen/Dense>

#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <string>
#include <vector>

namespace arskit {

/**
 * @brief Small dense matrix over an exact field (Rational or Surd).
 *
 * Sized for the 2x2 and 3x3 problems of this library; algorithms are cofactor or
 * Gauss-Jordan based and make exact zero tests.
 */
template <class T>
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols), T(0)) {}
  ExactMatrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static ExactMatrix zero(int rows, int cols) { return ExactMatrix(rows, cols); }
  static ExactMatrix identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static ExactMatrix column(const std::vector<T>& v) {
    ExactMatrix m(static_cast<int>(v.size()), 1);
    for (int i = 0; i < m.rows_; ++i) m(i) = v[static_cast<size_t>(i)];
    return m;
  }
  static ExactMatrix diagonal(const std::vector<T>& v) {
    const int n = static_cast<int>(v.size());
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = v[static_cast<size_t>(i)];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_ * cols_; }

  T& operator()(int i, int j) { return data_[static_cast<size_t>(i * cols_ + j)]; }
  const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i * cols_ + j)]; }
  /// Linear access, intended for column vectors.
  T& operator()(int i) { return data_[static_cast<size_t>(i)]; }
  const T& operator()(int i) const { return data_[static_cast<size_t>(i)]; }

  ExactMatrix col(int j) const {
    ExactMatrix c(rows_, 1);
    for (int i = 0; i < rows_; ++i) c(i) = (*this)(i, j);
    return c;
  }
  void set_col(int j, const ExactMatrix& c) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = c(i);
  }
  ExactMatrix block(int r0, int c0, int nr, int nc) const {
    ExactMatrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  ExactMatrix transpose() const {
    ExactMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!(v == T(0))) return false;
    return true;
  }

  ExactMatrix operator-() const {
    ExactMatrix r = *this;
    for (auto& v : r.data_) v = -v;
    return r;
  }
  ExactMatrix& operator+=(const ExactMatrix& o) {
    check_same(o);
    for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ExactMatrix& operator-=(const ExactMatrix& o) {
    check_same(o);
    for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ExactMatrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend ExactMatrix operator+(ExactMatrix l, const ExactMatrix& r) { return l += r; }
  friend ExactMatrix operator-(ExactMatrix l, const ExactMatrix& r) { return l -= r; }
  friend ExactMatrix operator*(ExactMatrix l, const T& s) { return l *= s; }
  friend ExactMatrix operator*(const T& s, ExactMatrix r) { return r *= s; }
  friend ExactMatrix operator*(const ExactMatrix& l, const ExactMatrix& r) {
    if (l.cols_ != r.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    ExactMatrix p(l.rows_, r.cols_);
    for (int i = 0; i < l.rows_; ++i)
      for (int j = 0; j < r.cols_; ++j) {
        T acc(0);
        for (int k = 0; k < l.cols_; ++k) acc += l(i, k) * r(k, j);
        p(i, j) = acc;
      }
    return p;
  }
  friend bool operator==(const ExactMatrix& l, const ExactMatrix& r) {
    if (l.rows_ != r.rows_ || l.cols_ != r.cols_) return false;
    for (size_t k = 0; k < l.data_.size(); ++k)
      if (!(l.data_[k] == r.data_[k])) return false;
    return true;
  }
  friend bool operator!=(const ExactMatrix& l, const ExactMatrix& r) { return !(l == r); }

  T determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    if (rows_ == 0) return T(1);
    if (rows_ == 1) return data_[0];
    if (rows_ == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
    T det(0);
    for (int j = 0; j < cols_; ++j) {
      if ((*this)(0, j) == T(0)) continue;
      const T term = (*this)(0, j) * minor(0, j).determinant();
      if (j % 2 == 0) {
        det += term;
      } else {
        det -= term;
      }
    }
    return det;
  }

  /// Gauss-Jordan inverse; throws std::domain_error if singular.
  ExactMatrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
    const int n = rows_;
    ExactMatrix a = *this;
    ExactMatrix inv = identity(n);
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (!(a(r, c) == T(0))) {
          piv = r;
          break;
        }
      if (piv < 0) throw std::domain_error("singular matrix");
      a.swap_rows(c, piv);
      inv.swap_rows(c, piv);
      const T p = a(c, c);
      for (int j = 0; j < n; ++j) {
        a(c, j) /= p;
        inv(c, j) /= p;
      }
      for (int r = 0; r < n; ++r) {
        if (r == c || a(r, c) == T(0)) continue;
        const T f = a(r, c);
        for (int j = 0; j < n; ++j) {
          a(r, j) -= f * a(c, j);
          inv(r, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

  /// Reduced row echelon form; pivot columns are appended to pivots if given.
  ExactMatrix rref(std::vector<int>* pivots = nullptr) const {
    ExactMatrix a = *this;
    int row = 0;
    for (int c = 0; c < cols_ && row < rows_; ++c) {
      int piv = -1;
      for (int r = row; r < rows_; ++r)
        if (!(a(r, c) == T(0))) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      a.swap_rows(row, piv);
      const T p = a(row, c);
      for (int j = 0; j < cols_; ++j) a(row, j) /= p;
      for (int r = 0; r < rows_; ++r) {
        if (r == row || a(r, c) == T(0)) continue;
        const T f = a(r, c);
        for (int j = 0; j < cols_; ++j) a(r, j) -= f * a(row, j);
      }
      if (pivots) pivots->push_back(c);
      ++row;
    }
    return a;
  }

  int rank() const {
    std::vector<int> piv;
    rref(&piv);
    return static_cast<int>(piv.size());
  }

  /// Basis of the right null space, one column per free variable.
  ExactMatrix nullspace() const {
    std::vector<int> piv;
    const ExactMatrix r = rref(&piv);
    std::vector<int> free_cols;
    for (int c = 0; c < cols_; ++c) {
      bool is_piv = false;
      for (int p : piv) is_piv = is_piv || p == c;
      if (!is_piv) free_cols.push_back(c);
    }
    ExactMatrix basis(cols_, static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
      const int fc = free_cols[k];
      basis(fc, static_cast<int>(k)) = T(1);
      for (size_t i = 0; i < piv.size(); ++i) basis(piv[i], static_cast<int>(k)) = -r(static_cast<int>(i), fc);
    }
    return basis;
  }

  template <class F>
  auto map(F f) const {
    using U = decltype(f(std::declval<const T&>()));
    ExactMatrix<U> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += i == 0 ? "[" : ",[";
      for (int j = 0; j < cols_; ++j) {
        if (j) s += ",";
        s += to_text((*this)(i, j));
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  static std::string to_text(const Surd& v) { return v.str(); }
  static std::string to_text(const Rational& v) { return v.get_str(); }

  void check_same(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix dimension mismatch");
  }
  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  ExactMatrix minor(int r, int c) const {
    ExactMatrix m(rows_ - 1, cols_ - 1);
    for (int i = 0, mi = 0; i < rows_; ++i) {
      if (i == r) continue;
      for (int j = 0, mj = 0; j < cols_; ++j) {
        if (j == c) continue;
        m(mi, mj++) = (*this)(i, j);
      }
      ++mi;
    }
    return m;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using ExactMat = ExactMatrix<Surd>;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

inline Mat to_double(const ExactMat& m) {
  Mat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

inline Vec to_double_vec(const ExactMat& v) {
  Vec out(v.size());
  for (int i = 0; i < v.size(); ++i) out(i) = v(i).to_double();
  return out;
}

inline ExactMat from_rational(const ExactMatrix<Rational>& m) {
  return m.map([](const Rational& q) { return Surd(q); });
}

}  // namespace arskit
