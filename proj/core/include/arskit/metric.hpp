#pragma once

#include "arskit/linfield.hpp"
#include "arskit/polynomial.hpp"

#include <span>
#include <string>
#include <vector>

namespace arskit {

/// Outcome of the structural checks on an ARS definition.
struct Validity {
  bool frame_independent = false;
  bool rank_condition_ok = false;
  bool open_dense_ok = false;
  std::vector<std::string> failures;

  bool valid() const { return frame_independent && rank_condition_ok && open_dense_ok; }
};

/**
 * @brief An ARS: group, derivation of the linear field, and the invariant frame Y_1..Y_{n-1}.
 *
 * Data is held exactly (rationals or quadratic surds) with cached double copies.
 */
class ARSSpec {
 public:
  /// Throws std::invalid_argument on wrong sizes or when D is not a derivation.
  /// Structural failures (rank, open density) are recorded in validity(), not thrown.
  static ARSSpec create(GroupTag group, const ExactMat& D, const std::vector<ExactMat>& frame);
  /// Snaps every entry to a rational with denominator <= max_den and records the snaps.
  static ARSSpec from_doubles(GroupTag group, const Mat& D, const std::vector<Vec>& frame,
                              long max_den = 1'000'000);

  GroupTag group() const { return group_; }
  int dim() const { return dimension(group_); }
  const ExactMat& derivation_exact() const { return D_exact_; }
  const Mat& derivation() const { return D_; }
  const std::vector<ExactMat>& frame_exact() const { return frame_exact_; }
  /// n x (n-1) matrix whose columns are the frame vectors.
  const Mat& frame() const { return frame_; }
  const Validity& validity() const { return validity_; }
  const std::vector<SnapRecord>& snaps() const { return snaps_; }
  const ExactPoly& singular_polynomial() const { return poly_; }
  const Polynomial<double>& singular_polynomial_double() const { return poly_d_; }
  LinearField field() const { return LinearField(group_, D_, 1e-6); }

 private:
  GroupTag group_ = GroupTag::heis3;
  ExactMat D_exact_;
  Mat D_;
  std::vector<ExactMat> frame_exact_;
  Mat frame_;
  Validity validity_;
  std::vector<SnapRecord> snaps_;
  ExactPoly poly_;
  Polynomial<double> poly_d_;
};

Validity validate(const ARSSpec& spec);

/// Columns: field(g), Y_1(g), ..., Y_{n-1}(g).
Mat frame_at(const ARSSpec& spec, const GroupPoint& g);

/// Determinant of the frame as a polynomial; for aff2 the factor -x (nonvanishing on the group) is removed.
ExactPoly singular_poly(const ARSSpec& spec);

/// Tolerances are scaled by the local coordinate magnitude and the coefficient size.
bool in_Z(const ARSSpec& spec, const GroupPoint& g, double tol = 1e-9);
bool in_ZX(const ARSSpec& spec, const GroupPoint& g, double tol = 1e-9);

/// Nonnegative norm value or the distinguished infinite value.
struct NormValue {
  bool infinite = false;
  double value = 0.0;

  static NormValue inf() { return NormValue{true, 0.0}; }
  static NormValue finite(double v) { return NormValue{false, v}; }
  std::string str() const;
};

struct NormSolution {
  NormValue norm;
  /// Minimum-norm coefficients (field, Y_1, ..., Y_{n-1}); meaningful when finite.
  Vec coefficients;
  int rank = 0;
};

NormSolution ars_norm_solve(const ARSSpec& spec, const TangentVector& V);
NormValue ars_norm(const ARSSpec& spec, const TangentVector& V);

/// Left translation by g is an isometry exactly when g lies in Z_X.
bool is_left_translation_isometry(const ARSSpec& spec, const GroupPoint& g, double tol = 1e-9);

/// Group automorphism with differential P at the identity.
GroupPoint apply_automorphism(GroupTag group, const Mat& P, const GroupPoint& g);
/// Differential of that automorphism at g.
Mat automorphism_differential(GroupTag group, const Mat& P, const GroupPoint& g);

struct CandidateReport {
  bool distribution_ok = false;
  bool frame_orthogonal = false;
  /// +1 if P D P^-1 = D', -1 if it equals -D', 0 otherwise.
  int derivation_sign = 0;
  bool norms_ok = false;
  double max_norm_error = 0.0;

  bool accepted() const { return distribution_ok && frame_orthogonal && derivation_sign != 0 && norms_ok; }
};

/// Throws std::invalid_argument if P is not an automorphism or the groups differ.
CandidateReport isometry_candidate_report(const ARSSpec& a, const ARSSpec& b, const Mat& P,
                                          std::span<const GroupPoint> samples, double tol = 1e-9);
bool isometry_candidate_check(const ARSSpec& a, const ARSSpec& b, const Mat& P, std::span<const GroupPoint> samples,
                              double tol = 1e-9);

/// Fixed sample points used when a caller supplies none.
std::vector<GroupPoint> default_samples(GroupTag group);

}  // namespace arskit
