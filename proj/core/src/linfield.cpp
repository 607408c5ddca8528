#include "arskit/linfield.hpp"

#include <cmath>
#include <stdexcept>

namespace arskit {

LinearField::LinearField(GroupTag group, const Mat& D, double tol) : group_(group), D_(D) {
  const auto& model = LieAlgebraModel::get(group);
  if (D.rows() != model.dim() || D.cols() != model.dim()) {
    throw std::invalid_argument("derivation must be " + std::to_string(model.dim()) + "x" +
                                std::to_string(model.dim()));
  }
  if (!is_derivation(model, D, tol)) throw std::invalid_argument("matrix is not a derivation");
}

namespace {

Vec field_value(GroupTag group, const Mat& D, const Vec& p) {
  Vec v(p.size());
  if (group == GroupTag::aff2) {
    v << 0.0, D(1, 0) * (p(0) - 1.0) + D(1, 1) * p(1);
    return v;
  }
  const double a = D(0, 0), b = D(0, 1), c = D(1, 0), d = D(1, 1), e = D(2, 0), f = D(2, 1);
  const double x = p(0), y = p(1), z = p(2);
  v << a * x + b * y, c * x + d * y, e * x + f * y + (a + d) * z + 0.5 * c * x * x + 0.5 * b * y * y;
  return v;
}

}  // namespace

TangentVector eval_linear(const LinearField& field, const GroupPoint& g) {
  return TangentVector{g, field_value(field.group(), field.derivation(), g.coords)};
}

Vec F_map(const LinearField& field, const GroupPoint& g) {
  return left_translation_diff(inverse(g)) * field_value(field.group(), field.derivation(), g.coords);
}

GroupPoint flow(const LinearField& field, double t, const GroupPoint& g) {
  if (t == 0.0) return g;
  const Vec Y = group_log(g);
  return group_exp(field.group(), exp_tD(field.derivation(), t) * Y);
}

GroupPoint flow_ode(const LinearField& field, double t, const GroupPoint& g) {
  if (t == 0.0) return g;
  const long n = std::max<long>(64, static_cast<long>(std::ceil(std::abs(t) / 0.01)));
  const double h = t / static_cast<double>(n);
  const GroupTag grp = field.group();
  const Mat& D = field.derivation();
  Vec p = g.coords;
  for (long k = 0; k < n; ++k) {
    const Vec k1 = field_value(grp, D, p);
    const Vec k2 = field_value(grp, D, p + 0.5 * h * k1);
    const Vec k3 = field_value(grp, D, p + 0.5 * h * k2);
    const Vec k4 = field_value(grp, D, p + h * k3);
    p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return GroupPoint{grp, p};
}

double check_TgF(const LinearField& field, const GroupPoint& g, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const auto& model = LieAlgebraModel::get(field.group());
  const int n = model.dim();
  Mat J(n, n);
  for (int j = 0; j < n; ++j) {
    Vec plus = g.coords, minus = g.coords;
    plus(j) += step;
    minus(j) -= step;
    J.col(j) = (F_map(field, GroupPoint{g.group, plus}) - F_map(field, GroupPoint{g.group, minus})) / (2.0 * step);
  }
  const Vec Fg = F_map(field, g);
  const Mat expected = (field.derivation() + model.ad(Fg)) * left_translation_diff(inverse(g));
  return (J - expected).cwiseAbs().maxCoeff();
}

std::vector<ExactPoly> linear_field_polys(GroupTag group, const ExactMat& D) {
  const int n = dimension(group);
  const ExactPoly x = ExactPoly::variable(n, 0), y = ExactPoly::variable(n, 1);
  const ExactPoly one = ExactPoly::constant(n, Surd(1));
  if (group == GroupTag::aff2) {
    return {ExactPoly(n), D(1, 0) * (x - one) + D(1, 1) * y};
  }
  const ExactPoly z = ExactPoly::variable(n, 2);
  const Surd half(Rational(1, 2));
  const Surd &a = D(0, 0), &b = D(0, 1), &c = D(1, 0), &d = D(1, 1), &e = D(2, 0), &f = D(2, 1);
  return {a * x + b * y, c * x + d * y,
          e * x + f * y + (a + d) * z + (half * c) * (x * x) + (half * b) * (y * y)};
}

std::vector<ExactPoly> invariant_field_polys(GroupTag group, const ExactMat& Y) {
  const int n = dimension(group);
  const ExactPoly x = ExactPoly::variable(n, 0);
  if (group == GroupTag::aff2) return {Y(0) * x, Y(1) * x};
  return {ExactPoly::constant(n, Y(0)), ExactPoly::constant(n, Y(1)), ExactPoly::constant(n, Y(2)) + Y(1) * x};
}

}  // namespace arskit
