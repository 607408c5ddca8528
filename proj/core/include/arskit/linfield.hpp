#pragma once

#include "arskit/group.hpp"
#include "arskit/polynomial.hpp"

#include <vector>

namespace arskit {

/**
 * @brief Linear vector field determined by a derivation D (D Y = -[field, Y]).
 */
class LinearField {
 public:
  /// Throws std::invalid_argument unless D is a derivation of the group's algebra.
  LinearField(GroupTag group, const Mat& D, double tol = kStructuralTol);

  GroupTag group() const { return group_; }
  const Mat& derivation() const { return D_; }

 private:
  GroupTag group_;
  Mat D_;
};

TangentVector eval_linear(const LinearField& field, const GroupPoint& g);
/// TL_{g^-1} field(g).
Vec F_map(const LinearField& field, const GroupPoint& g);
/// Closed-form flow exp(e^{tD} log g).
GroupPoint flow(const LinearField& field, double t, const GroupPoint& g);
/// RK4 integration of the field with the fixed step |t| / max(64, ceil(|t|/0.01)).
GroupPoint flow_ode(const LinearField& field, double t, const GroupPoint& g);
/// Largest entry of |J_fd - (D + ad(F(g))) TL_{g^-1}| with a central-difference Jacobian J_fd.
double check_TgF(const LinearField& field, const GroupPoint& g, double step);

/// Coordinate components of the field as exact polynomials in (x, y[, z]).
std::vector<ExactPoly> linear_field_polys(GroupTag group, const ExactMat& D);
/// Coordinate components of the left-invariant field with algebra coordinates Y.
std::vector<ExactPoly> invariant_field_polys(GroupTag group, const ExactMat& Y);

}  // namespace arskit
