#include "arskit/group.hpp"

#include <cmath>
#include <stdexcept>

namespace arskit {

GroupPoint GroupPoint::make(GroupTag group, const Vec& coords) {
  if (coords.size() != dimension(group)) {
    throw std::invalid_argument("point of " + std::string(to_string(group)) + " needs " +
                                std::to_string(dimension(group)) + " coordinates");
  }
  if (!coords.allFinite()) throw std::invalid_argument("non-finite coordinates");
  if (group == GroupTag::aff2 && !(coords(0) > 0.0)) {
    throw std::invalid_argument("aff2 points need x > 0");
  }
  return GroupPoint{group, coords};
}

GroupPoint GroupPoint::make(GroupTag group, std::initializer_list<double> coords) {
  Vec v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v(i++) = c;
  return make(group, v);
}

GroupPoint GroupPoint::identity(GroupTag group) {
  Vec e = Vec::Zero(dimension(group));
  if (group == GroupTag::aff2) e(0) = 1.0;
  return GroupPoint{group, e};
}

namespace {

void same_group(GroupTag a, GroupTag b) {
  if (a != b) throw std::invalid_argument("points belong to different groups");
}

}  // namespace

GroupPoint multiply(const GroupPoint& g, const GroupPoint& h) {
  same_group(g.group, h.group);
  const Vec& a = g.coords;
  const Vec& b = h.coords;
  Vec r(a.size());
  if (g.group == GroupTag::aff2) {
    r << a(0) * b(0), a(0) * b(1) + a(1);
  } else {
    r << a(0) + b(0), a(1) + b(1), a(2) + b(2) + a(0) * b(1);
  }
  return GroupPoint{g.group, r};
}

GroupPoint inverse(const GroupPoint& g) {
  const Vec& a = g.coords;
  Vec r(a.size());
  if (g.group == GroupTag::aff2) {
    r << 1.0 / a(0), -a(1) / a(0);
  } else {
    r << -a(0), -a(1), -a(2) + a(0) * a(1);
  }
  return GroupPoint{g.group, r};
}

GroupPoint group_exp(GroupTag group, const Vec& Y) {
  if (Y.size() != dimension(group)) throw std::invalid_argument("algebra vector length mismatch");
  Vec r(Y.size());
  if (group == GroupTag::aff2) {
    const double u = Y(0), v = Y(1);
    const double phi = std::abs(u) < 1e-8 ? 1.0 + u / 2.0 + u * u / 6.0 : std::expm1(u) / u;
    r << std::exp(u), v * phi;
  } else {
    r << Y(0), Y(1), Y(2) + Y(0) * Y(1) / 2.0;
  }
  return GroupPoint{group, r};
}

Vec group_log(const GroupPoint& g) {
  const Vec& a = g.coords;
  Vec r(a.size());
  if (g.group == GroupTag::aff2) {
    if (!(a(0) > 0.0)) throw std::invalid_argument("aff2 points need x > 0");
    const double h = a(0) - 1.0;
    const double u = std::log1p(h);
    // u/(x-1) -> 1 at x = 1
    const double ratio = std::abs(h) < 1e-8 ? 1.0 - h / 2.0 + h * h / 3.0 : u / h;
    r << u, a(1) * ratio;
  } else {
    r << a(0), a(1), a(2) - a(0) * a(1) / 2.0;
  }
  return r;
}

Mat left_translation_diff(const GroupPoint& g) {
  const Vec& a = g.coords;
  if (g.group == GroupTag::aff2) {
    Mat J(2, 2);
    J << a(0), 0.0, 0.0, a(0);
    return J;
  }
  Mat J = Mat::Identity(3, 3);
  J(2, 1) = a(0);
  return J;
}

TangentVector invariant_field_at(const Vec& Y, const GroupPoint& g) {
  if (Y.size() != g.coords.size()) throw std::invalid_argument("algebra vector length mismatch");
  return TangentVector{g, left_translation_diff(g) * Y};
}

ExactPoint multiply(const ExactPoint& g, const ExactPoint& h) {
  same_group(g.group, h.group);
  const ExactMat& a = g.coords;
  const ExactMat& b = h.coords;
  if (g.group == GroupTag::aff2) {
    return ExactPoint{g.group, ExactMat::column({a(0) * b(0), a(0) * b(1) + a(1)})};
  }
  return ExactPoint{g.group, ExactMat::column({a(0) + b(0), a(1) + b(1), a(2) + b(2) + a(0) * b(1)})};
}

ExactPoint inverse(const ExactPoint& g) {
  const ExactMat& a = g.coords;
  if (g.group == GroupTag::aff2) {
    return ExactPoint{g.group, ExactMat::column({Surd(1) / a(0), -a(1) / a(0)})};
  }
  return ExactPoint{g.group, ExactMat::column({-a(0), -a(1), -a(2) + a(0) * a(1)})};
}

ExactMat left_translation_diff(const ExactPoint& g) {
  const ExactMat& a = g.coords;
  if (g.group == GroupTag::aff2) return ExactMat::diagonal({a(0), a(0)});
  ExactMat J = ExactMat::identity(3);
  J(2, 1) = a(0);
  return J;
}

}  // namespace arskit
