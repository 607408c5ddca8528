#pragma once

#include "arskit/exact_matrix.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace arskit {

enum class GroupTag { aff2, heis3 };

/// Default relative tolerance for structural predicates on floating matrices.
inline constexpr double kStructuralTol = 1e-9;

int dimension(GroupTag group);
std::string_view to_string(GroupTag group);
/// Accepts "aff2" or "heis3"; throws std::invalid_argument otherwise.
GroupTag parse_group_tag(std::string_view text);

/**
 * @brief Structure constants of aff(2) ([X,Y]=Y) or heis(3) ([X,Y]=Z).
 */
class LieAlgebraModel {
 public:
  static const LieAlgebraModel& get(GroupTag group);

  GroupTag tag() const { return tag_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  /// c^k_{ij} with [e_i, e_j] = sum_k c^k_{ij} e_k.
  int structure_constant(int k, int i, int j) const;

  Vec bracket(const Vec& u, const Vec& v) const;
  ExactMat bracket(const ExactMat& u, const ExactMat& v) const;
  /// Matrix of w -> [v, w].
  Mat ad(const Vec& v) const;
  ExactMat ad(const ExactMat& v) const;

 private:
  LieAlgebraModel(GroupTag tag, int dim, std::vector<std::string> labels);
  GroupTag tag_;
  int dim_;
  std::vector<std::string> labels_;
  std::vector<int> c_;
};

/// Largest Leibniz defect |D[u,v] - [Du,v] - [u,Dv]| over basis pairs.
double derivation_residual(const LieAlgebraModel& model, const Mat& D);
bool is_derivation(const LieAlgebraModel& model, const Mat& D, double tol = kStructuralTol);
bool is_derivation(const LieAlgebraModel& model, const ExactMat& D);

/// Largest morphism defect |P[u,v] - [Pu,Pv]| over basis pairs.
double automorphism_residual(const LieAlgebraModel& model, const Mat& P);
bool is_automorphism(const LieAlgebraModel& model, const Mat& P, double tol = kStructuralTol);
bool is_automorphism(const LieAlgebraModel& model, const ExactMat& P);

/// Free-parameter description of all derivations of a model.
struct DerivationSpace {
  GroupTag group;
  std::vector<std::string> parameters;
  /// Entry patterns, e.g. {{"0","0"},{"a","b"}}.
  std::vector<std::vector<std::string>> pattern;

  Mat make(const std::vector<double>& values) const;
  ExactMat make(const std::vector<Surd>& values) const;
  /// Reads the parameters back from a derivation matrix.
  std::vector<Surd> parameters_of(const ExactMat& D) const;
};

DerivationSpace derivation_space(const LieAlgebraModel& model);

/// P D P^-1; throws std::invalid_argument for a singular or mismatched P.
Mat conjugate_derivation(const Mat& P, const Mat& D);
ExactMat conjugate_derivation(const ExactMat& P, const ExactMat& D);

/// exp(tD).
Mat exp_tD(const Mat& D, double t);

enum class SpectrumKind { real_distinct, scalar, jordan, complex };
std::string_view to_string(SpectrumKind kind);

/// Eigenstructure of a real 2x2 matrix. Real eigenvalues are ordered l1 < l2;
/// complex pairs are re +- i*im with im > 0.
struct Spectrum2x2 {
  SpectrumKind kind;
  double l1 = 0.0;
  double l2 = 0.0;
  double re = 0.0;
  double im = 0.0;
};

/// A discriminant with |disc| < tol*||A||^2 counts as a repeated eigenvalue.
Spectrum2x2 eigen2x2(const Mat& A, double tol = kStructuralTol);

struct ExactSpectrum2x2 {
  SpectrumKind kind;
  Surd l1;
  Surd l2;
  Surd re;
  Surd im;
};

/// Exact version; requires a rational discriminant, else throws std::domain_error.
ExactSpectrum2x2 eigen2x2(const ExactMat& A);

}  // namespace arskit
