#pragma once

#include "arskit/algebra.hpp"

#include <initializer_list>

namespace arskit {

/// Point of Aff+(2) as (x, y) with x > 0, or of Heis(3) as (x, y, z).
struct GroupPoint {
  GroupTag group = GroupTag::heis3;
  Vec coords;

  /// Throws std::invalid_argument for a wrong length or an aff2 point with x <= 0.
  static GroupPoint make(GroupTag group, const Vec& coords);
  static GroupPoint make(GroupTag group, std::initializer_list<double> coords);
  static GroupPoint identity(GroupTag group);
};

/// Tangent vector in coordinate components (d/dx, d/dy[, d/dz]).
struct TangentVector {
  GroupPoint base;
  Vec coords;
};

GroupPoint multiply(const GroupPoint& g, const GroupPoint& h);
GroupPoint inverse(const GroupPoint& g);
GroupPoint group_exp(GroupTag group, const Vec& Y);
Vec group_log(const GroupPoint& g);
/// Jacobian of h -> g h.
Mat left_translation_diff(const GroupPoint& g);
/// TL_g Y.
TangentVector invariant_field_at(const Vec& Y, const GroupPoint& g);

/// Exact counterparts used for subgroup closure checks.
struct ExactPoint {
  GroupTag group = GroupTag::heis3;
  ExactMat coords;
};

ExactPoint multiply(const ExactPoint& g, const ExactPoint& h);
ExactPoint inverse(const ExactPoint& g);
ExactMat left_translation_diff(const ExactPoint& g);

}  // namespace arskit
