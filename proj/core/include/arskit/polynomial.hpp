#pragma once

#include "arskit/surd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <utility>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace arskit {

inline bool is_zero_value(const Surd& v) { return v.is_zero(); }
inline bool is_zero_value(double v) { return v == 0.0; }

/**
 * @brief Sparse polynomial in up to three variables (x, y, z).
 */
template <class T>
class Polynomial {
 public:
  using Exponent = std::array<int, 3>;

  explicit Polynomial(int nvars = 3) : nvars_(nvars) {
    if (nvars < 1 || nvars > 3) throw std::invalid_argument("polynomials have 1 to 3 variables");
  }

  static Polynomial constant(int nvars, const T& c) {
    Polynomial p(nvars);
    p.add_term({0, 0, 0}, c);
    return p;
  }
  static Polynomial variable(int nvars, int i) {
    Polynomial p(nvars);
    Exponent e{0, 0, 0};
    e[static_cast<size_t>(i)] = 1;
    p.add_term(e, T(1));
    return p;
  }

  int nvars() const { return nvars_; }
  const std::map<Exponent, T>& terms() const { return terms_; }

  T coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? T(0) : it->second;
  }

  void add_term(const Exponent& e, const T& c) {
    if (is_zero_value(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (is_zero_value(it->second)) terms_.erase(it);
  }

  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
  }

  /// Largest exponent of one variable.
  int degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
    return d;
  }

  Polynomial operator-() const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    if (is_zero_value(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial l, const Polynomial& r) { return l += r; }
  friend Polynomial operator-(Polynomial l, const Polynomial& r) { return l -= r; }
  friend Polynomial operator*(Polynomial l, const T& s) { return l *= s; }
  friend Polynomial operator*(const T& s, Polynomial r) { return r *= s; }
  friend Polynomial operator*(const Polynomial& l, const Polynomial& r) {
    Polynomial p(std::max(l.nvars_, r.nvars_));
    for (const auto& [e1, c1] : l.terms_)
      for (const auto& [e2, c2] : r.terms_) p.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
    return p;
  }
  friend bool operator==(const Polynomial& l, const Polynomial& r) { return (l - r).is_zero(); }
  friend bool operator!=(const Polynomial& l, const Polynomial& r) { return !(l == r); }

  Polynomial derivative(int var) const {
    Polynomial d(nvars_);
    for (const auto& [e, c] : terms_) {
      const int k = e[static_cast<size_t>(var)];
      if (k == 0) continue;
      Exponent f = e;
      f[static_cast<size_t>(var)] = k - 1;
      d.add_term(f, c * T(k));
    }
    return d;
  }

  /// Exact division by one variable; throws std::domain_error if a term lacks it.
  Polynomial divide_by_variable(int var) const {
    Polynomial q(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[static_cast<size_t>(var)] == 0) throw std::domain_error("polynomial not divisible by variable");
      Exponent f = e;
      f[static_cast<size_t>(var)] -= 1;
      q.add_term(f, c);
    }
    return q;
  }

  bool divisible_by_variable(int var) const {
    for (const auto& [e, c] : terms_)
      if (e[static_cast<size_t>(var)] == 0) return false;
    return !terms_.empty();
  }

  /// Substitutes values for the variables; x must hold nvars entries.
  template <class V>
  T eval_exact(const V& x) const {
    T acc(0);
    for (const auto& [e, c] : terms_) {
      T term = c;
      for (int v = 0; v < nvars_; ++v)
        for (int k = 0; k < e[static_cast<size_t>(v)]; ++k) term *= x[static_cast<size_t>(v)];
      acc += term;
    }
    return acc;
  }

  template <class V>
  double eval(const V& x) const {
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
      double term = to_double(c);
      for (int v = 0; v < nvars_; ++v) {
        const int k = e[static_cast<size_t>(v)];
        if (k > 0) term *= k == 1 ? x[v] : std::pow(x[v], k);
      }
      acc += term;
    }
    return acc;
  }

  Polynomial<double> to_double_poly() const {
    Polynomial<double> p(nvars_);
    for (const auto& [e, c] : terms_) p.add_term(e, to_double(c));
    return p;
  }

  /// Terms ordered by total degree, then x before y before z.
  std::vector<std::pair<Exponent, T>> ordered_terms() const {
    std::vector<std::pair<Exponent, T>> items(terms_.begin(), terms_.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      const int da = a.first[0] + a.first[1] + a.first[2];
      const int db = b.first[0] + b.first[1] + b.first[2];
      if (da != db) return da < db;
      return a.first > b.first;
    });
    return items;
  }

  /// Coefficient of the first term in ordered_terms(); zero for the zero polynomial.
  T leading_coefficient() const {
    if (terms_.empty()) return T(0);
    return ordered_terms().front().second;
  }

  /// Human-readable form, e.g. "x+y+3*z-2*x*y" or "x^2" for the default variable names.
  std::string str(const std::array<const char*, 3>& names = {"x", "y", "z"}) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : ordered_terms()) {
      std::string mono;
      for (int v = 0; v < 3; ++v) {
        const int k = e[static_cast<size_t>(v)];
        if (k == 0) continue;
        mono += std::string(mono.empty() ? "" : "*") + names[static_cast<size_t>(v)];
        if (k > 1) mono += "^" + std::to_string(k);
      }
      std::string coef = coefficient_text(c);
      const bool negative = !coef.empty() && coef[0] == '-' && coef.find_first_of("+-", 1) == std::string::npos;
      if (negative) coef = coef.substr(1);
      if (coef.find_first_of("+-", 1) != std::string::npos) coef = "(" + coef + ")";
      std::string piece;
      if (mono.empty()) {
        piece = coef;
      } else if (coef == "1") {
        piece = mono;
      } else {
        piece = coef + "*" + mono;
      }
      if (out.empty()) {
        out = negative ? "-" + piece : piece;
      } else {
        out += (negative ? "-" : "+") + piece;
      }
    }
    return out;
  }

 private:
  static std::string coefficient_text(const Surd& c) { return c.str(); }
  static std::string coefficient_text(double c) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", c);
    return buf;
  }

  int nvars_;
  std::map<Exponent, T> terms_;
};

using ExactPoly = Polynomial<Surd>;

}  // namespace arskit
