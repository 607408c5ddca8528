#include "arskit/algebra.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace arskit {

int dimension(GroupTag group) { return group == GroupTag::aff2 ? 2 : 3; }

std::string_view to_string(GroupTag group) { return group == GroupTag::aff2 ? "aff2" : "heis3"; }

GroupTag parse_group_tag(std::string_view text) {
  if (text == "aff2") return GroupTag::aff2;
  if (text == "heis3") return GroupTag::heis3;
  throw std::invalid_argument("unknown group '" + std::string(text) + "' (expected aff2 or heis3)");
}

LieAlgebraModel::LieAlgebraModel(GroupTag tag, int dim, std::vector<std::string> labels)
    : tag_(tag), dim_(dim), labels_(std::move(labels)), c_(static_cast<size_t>(dim * dim * dim), 0) {
  auto set = [&](int k, int i, int j, int v) {
    c_[static_cast<size_t>((k * dim_ + i) * dim_ + j)] = v;
    c_[static_cast<size_t>((k * dim_ + j) * dim_ + i)] = -v;
  };
  if (tag == GroupTag::aff2) {
    set(1, 0, 1, 1);  // [X,Y] = Y
  } else {
    set(2, 0, 1, 1);  // [X,Y] = Z
  }
}

const LieAlgebraModel& LieAlgebraModel::get(GroupTag group) {
  static const LieAlgebraModel aff2(GroupTag::aff2, 2, {"X", "Y"});
  static const LieAlgebraModel heis3(GroupTag::heis3, 3, {"X", "Y", "Z"});
  return group == GroupTag::aff2 ? aff2 : heis3;
}

int LieAlgebraModel::structure_constant(int k, int i, int j) const {
  if (k < 0 || i < 0 || j < 0 || k >= dim_ || i >= dim_ || j >= dim_) {
    throw std::out_of_range("structure constant index");
  }
  return c_[static_cast<size_t>((k * dim_ + i) * dim_ + j)];
}

namespace {

template <class V>
void check_len(const LieAlgebraModel& m, const V& v) {
  if (static_cast<int>(v.size()) != m.dim()) {
    throw std::invalid_argument("vector length " + std::to_string(v.size()) + " does not match algebra dimension " +
                                std::to_string(m.dim()));
  }
}

}  // namespace

Vec LieAlgebraModel::bracket(const Vec& u, const Vec& v) const {
  check_len(*this, u);
  check_len(*this, v);
  Vec w = Vec::Zero(dim_);
  for (int k = 0; k < dim_; ++k)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        const int c = structure_constant(k, i, j);
        if (c != 0) w(k) += c * u(i) * v(j);
      }
  return w;
}

ExactMat LieAlgebraModel::bracket(const ExactMat& u, const ExactMat& v) const {
  check_len(*this, std::vector<int>(static_cast<size_t>(u.size())));
  check_len(*this, std::vector<int>(static_cast<size_t>(v.size())));
  ExactMat w(dim_, 1);
  for (int k = 0; k < dim_; ++k)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        const int c = structure_constant(k, i, j);
        if (c != 0) w(k) += Surd(c) * u(i) * v(j);
      }
  return w;
}

Mat LieAlgebraModel::ad(const Vec& v) const {
  check_len(*this, v);
  Mat a = Mat::Zero(dim_, dim_);
  for (int k = 0; k < dim_; ++k)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) a(k, j) += structure_constant(k, i, j) * v(i);
  return a;
}

ExactMat LieAlgebraModel::ad(const ExactMat& v) const {
  check_len(*this, std::vector<int>(static_cast<size_t>(v.size())));
  ExactMat a(dim_, dim_);
  for (int k = 0; k < dim_; ++k)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        const int c = structure_constant(k, i, j);
        if (c != 0) a(k, j) += Surd(c) * v(i);
      }
  return a;
}

namespace {

void check_square(const LieAlgebraModel& m, int rows, int cols, const char* what) {
  if (rows != m.dim() || cols != m.dim()) {
    throw std::invalid_argument(std::string(what) + " must be " + std::to_string(m.dim()) + "x" +
                                std::to_string(m.dim()));
  }
}

Vec basis(int n, int i) {
  Vec e = Vec::Zero(n);
  e(i) = 1.0;
  return e;
}

ExactMat exact_basis(int n, int i) {
  ExactMat e(n, 1);
  e(i) = Surd(1);
  return e;
}

}  // namespace

double derivation_residual(const LieAlgebraModel& model, const Mat& D) {
  check_square(model, static_cast<int>(D.rows()), static_cast<int>(D.cols()), "derivation");
  const int n = model.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vec u = basis(n, i), v = basis(n, j);
      const Vec lhs = D * model.bracket(u, v);
      const Vec rhs = model.bracket(D * u, v) + model.bracket(u, D * v);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

bool is_derivation(const LieAlgebraModel& model, const Mat& D, double tol) {
  const double scale = std::max(1.0, D.cwiseAbs().maxCoeff());
  return derivation_residual(model, D) <= tol * scale;
}

bool is_derivation(const LieAlgebraModel& model, const ExactMat& D) {
  check_square(model, D.rows(), D.cols(), "derivation");
  const int n = model.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const ExactMat u = exact_basis(n, i), v = exact_basis(n, j);
      const ExactMat lhs = D * model.bracket(u, v);
      const ExactMat rhs = model.bracket(D * u, v) + model.bracket(u, D * v);
      if (lhs != rhs) return false;
    }
  return true;
}

double automorphism_residual(const LieAlgebraModel& model, const Mat& P) {
  check_square(model, static_cast<int>(P.rows()), static_cast<int>(P.cols()), "automorphism");
  const int n = model.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vec u = basis(n, i), v = basis(n, j);
      worst = std::max(worst, (P * model.bracket(u, v) - model.bracket(P * u, P * v)).cwiseAbs().maxCoeff());
    }
  return worst;
}

bool is_automorphism(const LieAlgebraModel& model, const Mat& P, double tol) {
  const double scale = std::max(1.0, P.cwiseAbs().maxCoeff());
  if (std::abs(P.determinant()) <= tol * std::pow(scale, model.dim())) return false;
  return automorphism_residual(model, P) <= tol * scale * scale;
}

bool is_automorphism(const LieAlgebraModel& model, const ExactMat& P) {
  check_square(model, P.rows(), P.cols(), "automorphism");
  if (P.determinant().is_zero()) return false;
  const int n = model.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const ExactMat u = exact_basis(n, i), v = exact_basis(n, j);
      if (P * model.bracket(u, v) != model.bracket(P * u, P * v)) return false;
    }
  return true;
}

namespace {

template <class M>
M zero_matrix(int n) {
  if constexpr (std::is_same_v<M, Mat>) {
    return Mat::Zero(n, n);
  } else {
    return M(n, n);
  }
}

template <class M, class S>
M build_derivation(GroupTag group, const std::vector<S>& p) {
  if (group == GroupTag::aff2) {
    if (p.size() != 2) throw std::invalid_argument("aff2 derivations take 2 parameters (a, b)");
    M D = zero_matrix<M>(2);
    D(1, 0) = p[0];
    D(1, 1) = p[1];
    return D;
  }
  if (p.size() != 6) throw std::invalid_argument("heis3 derivations take 6 parameters (a, b, c, d, e, f)");
  M D = zero_matrix<M>(3);
  D(0, 0) = p[0];
  D(0, 1) = p[1];
  D(1, 0) = p[2];
  D(1, 1) = p[3];
  D(2, 0) = p[4];
  D(2, 1) = p[5];
  D(2, 2) = p[0] + p[3];
  return D;
}

}  // namespace

Mat DerivationSpace::make(const std::vector<double>& values) const {
  return build_derivation<Mat, double>(group, values);
}

ExactMat DerivationSpace::make(const std::vector<Surd>& values) const {
  return build_derivation<ExactMat, Surd>(group, values);
}

std::vector<Surd> DerivationSpace::parameters_of(const ExactMat& D) const {
  if (group == GroupTag::aff2) return {D(1, 0), D(1, 1)};
  return {D(0, 0), D(0, 1), D(1, 0), D(1, 1), D(2, 0), D(2, 1)};
}

DerivationSpace derivation_space(const LieAlgebraModel& model) {
  if (model.tag() == GroupTag::aff2) {
    return {GroupTag::aff2, {"a", "b"}, {{"0", "0"}, {"a", "b"}}};
  }
  return {GroupTag::heis3,
          {"a", "b", "c", "d", "e", "f"},
          {{"a", "b", "0"}, {"c", "d", "0"}, {"e", "f", "a+d"}}};
}

Mat conjugate_derivation(const Mat& P, const Mat& D) {
  if (P.rows() != P.cols() || P.rows() != D.rows() || D.rows() != D.cols()) {
    throw std::invalid_argument("conjugation dimension mismatch");
  }
  Eigen::FullPivLU<Mat> lu(P);
  if (!lu.isInvertible()) throw std::invalid_argument("singular automorphism");
  return P * D * lu.inverse();
}

ExactMat conjugate_derivation(const ExactMat& P, const ExactMat& D) {
  if (P.rows() != P.cols() || P.rows() != D.rows() || D.rows() != D.cols()) {
    throw std::invalid_argument("conjugation dimension mismatch");
  }
  if (P.determinant().is_zero()) throw std::invalid_argument("singular automorphism");
  return P * D * P.inverse();
}

Mat exp_tD(const Mat& D, double t) {
  if (D.rows() != D.cols()) throw std::invalid_argument("exp_tD needs a square matrix");
  if (t == 0.0) return Mat::Identity(D.rows(), D.cols());
  const Eigen::MatrixXd M = t * Eigen::MatrixXd(D);
  const Eigen::MatrixXd E = M.exp();
  return Mat(E);
}

std::string_view to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::real_distinct:
      return "real-distinct";
    case SpectrumKind::scalar:
      return "scalar";
    case SpectrumKind::jordan:
      return "jordan";
    case SpectrumKind::complex:
      return "complex";
  }
  return "?";
}

Spectrum2x2 eigen2x2(const Mat& A, double tol) {
  if (A.rows() != 2 || A.cols() != 2) throw std::invalid_argument("eigen2x2 needs a 2x2 matrix");
  const double tr = A.trace();
  const double det = A.determinant();
  const double disc = tr * tr - 4.0 * det;
  const double norm2 = std::max(1e-300, A.squaredNorm());
  Spectrum2x2 s{};
  if (std::abs(disc) < tol * norm2) {
    const double l = tr / 2.0;
    s.l1 = s.l2 = l;
    s.re = l;
    const bool scalar = std::abs(A(0, 1)) <= tol * std::sqrt(norm2) && std::abs(A(1, 0)) <= tol * std::sqrt(norm2) &&
                        std::abs(A(0, 0) - A(1, 1)) <= tol * std::sqrt(norm2);
    s.kind = scalar ? SpectrumKind::scalar : SpectrumKind::jordan;
    return s;
  }
  if (disc > 0) {
    const double r = std::sqrt(disc);
    // Stable quadratic roots.
    const double q = -0.5 * (-tr + (tr >= 0 ? -r : r));
    double x1 = q != 0.0 ? det / q : 0.0;
    double x2 = q;
    if (q == 0.0) {
      x1 = (tr - r) / 2.0;
      x2 = (tr + r) / 2.0;
    }
    s.kind = SpectrumKind::real_distinct;
    s.l1 = std::min(x1, x2);
    s.l2 = std::max(x1, x2);
    return s;
  }
  s.kind = SpectrumKind::complex;
  s.re = tr / 2.0;
  s.im = std::sqrt(-disc) / 2.0;
  s.l1 = s.l2 = s.re;
  return s;
}

ExactSpectrum2x2 eigen2x2(const ExactMat& A) {
  if (A.rows() != 2 || A.cols() != 2) throw std::invalid_argument("eigen2x2 needs a 2x2 matrix");
  const Surd tr = A(0, 0) + A(1, 1);
  const Surd det = A.determinant();
  const Surd disc = tr * tr - Surd(4) * det;
  if (!disc.is_rational()) throw std::domain_error("eigen2x2: discriminant " + disc.str() + " is not rational");
  const Rational dq = disc.to_rational();
  const Surd half(Rational(1, 2));
  ExactSpectrum2x2 s{};
  if (dq == 0) {
    s.l1 = s.l2 = s.re = tr * half;
    const bool scalar = A(0, 1).is_zero() && A(1, 0).is_zero();
    s.kind = scalar ? SpectrumKind::scalar : SpectrumKind::jordan;
    return s;
  }
  if (dq > 0) {
    const Surd r = Surd::sqrt(dq);
    s.kind = SpectrumKind::real_distinct;
    s.l1 = (tr - r) * half;
    s.l2 = (tr + r) * half;
    return s;
  }
  s.kind = SpectrumKind::complex;
  s.re = tr * half;
  s.im = Surd::sqrt(-dq) * half;
  s.l1 = s.l2 = s.re;
  return s;
}

}  // namespace arskit
