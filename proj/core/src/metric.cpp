#include "arskit/metric.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace arskit {

namespace {

ExactPoly frame_determinant(GroupTag group, const ExactMat& D, const std::vector<ExactMat>& frame) {
  const int n = dimension(group);
  std::vector<std::vector<ExactPoly>> cols;
  cols.push_back(linear_field_polys(group, D));
  for (const auto& Y : frame) cols.push_back(invariant_field_polys(group, Y));
  auto entry = [&](int i, int j) -> const ExactPoly& { return cols[static_cast<size_t>(j)][static_cast<size_t>(i)]; };
  if (n == 2) {
    ExactPoly det = entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0);
    // The determinant carries the factor -x, which never vanishes on the group.
    if (det.is_zero()) return det;
    return -det.divide_by_variable(0);
  }
  return entry(0, 0) * (entry(1, 1) * entry(2, 2) - entry(1, 2) * entry(2, 1)) -
         entry(0, 1) * (entry(1, 0) * entry(2, 2) - entry(1, 2) * entry(2, 0)) +
         entry(0, 2) * (entry(1, 0) * entry(2, 1) - entry(1, 1) * entry(2, 0));
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

ARSSpec ARSSpec::create(GroupTag group, const ExactMat& D, const std::vector<ExactMat>& frame) {
  const auto& model = LieAlgebraModel::get(group);
  const int n = model.dim();
  if (D.rows() != n || D.cols() != n) {
    throw std::invalid_argument("derivation must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (static_cast<int>(frame.size()) != n - 1) {
    throw std::invalid_argument(std::string(to_string(group)) + " needs " + std::to_string(n - 1) +
                                " frame vector(s)");
  }
  for (const auto& Y : frame) {
    if (Y.size() != n) throw std::invalid_argument("frame vectors need " + std::to_string(n) + " coefficients");
  }
  if (!is_derivation(model, D)) throw std::invalid_argument("matrix is not a derivation");
  ARSSpec s;
  s.group_ = group;
  s.D_exact_ = D;
  s.D_ = to_double(D);
  s.frame_exact_.clear();
  s.frame_ = Mat(n, n - 1);
  for (int i = 0; i < n - 1; ++i) {
    ExactMat Y(n, 1);
    for (int k = 0; k < n; ++k) Y(k) = frame[static_cast<size_t>(i)](k);
    s.frame_exact_.push_back(Y);
    s.frame_.col(i) = to_double_vec(Y);
  }
  s.poly_ = frame_determinant(group, D, s.frame_exact_);
  s.poly_d_ = s.poly_.to_double_poly();
  s.validity_ = validate(s);
  return s;
}

ARSSpec ARSSpec::from_doubles(GroupTag group, const Mat& D, const std::vector<Vec>& frame, long max_den) {
  std::vector<SnapRecord> snaps;
  auto snap = [&](double v) {
    const Rational q = snap_to_rational(v, max_den);
    const double err = std::abs(q.get_d() - v);
    if (err != 0.0) snaps.push_back(SnapRecord{v, q, err});
    return Surd(q);
  };
  ExactMat De(static_cast<int>(D.rows()), static_cast<int>(D.cols()));
  for (int i = 0; i < D.rows(); ++i)
    for (int j = 0; j < D.cols(); ++j) De(i, j) = snap(D(i, j));
  std::vector<ExactMat> fe;
  for (const auto& Y : frame) {
    ExactMat c(static_cast<int>(Y.size()), 1);
    for (int i = 0; i < Y.size(); ++i) c(i) = snap(Y(i));
    fe.push_back(c);
  }
  ARSSpec s = create(group, De, fe);
  s.snaps_ = std::move(snaps);
  return s;
}

Validity validate(const ARSSpec& spec) {
  const auto& model = LieAlgebraModel::get(spec.group());
  const int n = model.dim();
  Validity v;
  const auto& frame = spec.frame_exact();
  ExactMat F(n, n - 1);
  for (int i = 0; i < n - 1; ++i) F.set_col(i, frame[static_cast<size_t>(i)]);
  v.frame_independent = F.rank() == n - 1;
  if (!v.frame_independent) v.failures.push_back("frame vectors are linearly dependent");

  // One step of brackets and derivation images must span the algebra.
  std::vector<ExactMat> gens(frame.begin(), frame.end());
  for (size_t i = 0; i < frame.size(); ++i) {
    gens.push_back(spec.derivation_exact() * frame[i]);
    for (size_t j = i + 1; j < frame.size(); ++j) gens.push_back(model.bracket(frame[i], frame[j]));
  }
  ExactMat G(n, static_cast<int>(gens.size()));
  for (size_t k = 0; k < gens.size(); ++k) G.set_col(static_cast<int>(k), gens[k]);
  v.rank_condition_ok = v.frame_independent && G.rank() == n;
  if (!v.rank_condition_ok) v.failures.push_back("rank condition fails: Delta, [Delta,Delta] and D(Delta) do not span");

  v.open_dense_ok = !spec.singular_polynomial().is_zero();
  if (!v.open_dense_ok) v.failures.push_back("singular polynomial vanishes identically (no Riemannian point)");
  return v;
}

Mat frame_at(const ARSSpec& spec, const GroupPoint& g) {
  if (g.group != spec.group()) throw std::invalid_argument("point and structure belong to different groups");
  const int n = spec.dim();
  Mat F(n, n);
  F.col(0) = eval_linear(spec.field(), g).coords;
  const Mat TL = left_translation_diff(g);
  for (int i = 0; i < n - 1; ++i) F.col(i + 1) = TL * spec.frame().col(i);
  return F;
}

ExactPoly singular_poly(const ARSSpec& spec) { return spec.singular_polynomial(); }

namespace {

double local_scale(const GroupPoint& g) {
  const double m = g.coords.cwiseAbs().maxCoeff();
  return std::max(1.0, m * m);
}

}  // namespace

bool in_Z(const ARSSpec& spec, const GroupPoint& g, double tol) {
  const auto& p = spec.singular_polynomial_double();
  double coef = 1.0;
  for (const auto& [e, c] : p.terms()) coef = std::max(coef, std::abs(c));
  return std::abs(p.eval(g.coords)) <= tol * coef * local_scale(g);
}

bool in_ZX(const ARSSpec& spec, const GroupPoint& g, double tol) {
  const Vec v = eval_linear(spec.field(), g).coords;
  const double coef = std::max(1.0, max_abs(spec.derivation()));
  return v.cwiseAbs().maxCoeff() <= tol * coef * local_scale(g);
}

std::string NormValue::str() const {
  if (infinite) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

NormSolution ars_norm_solve(const ARSSpec& spec, const TangentVector& V) {
  if (V.coords.size() != spec.dim()) throw std::invalid_argument("tangent vector length mismatch");
  const Mat F = frame_at(spec, V.base);
  Eigen::CompleteOrthogonalDecomposition<Mat> cod;
  cod.setThreshold(1e-10);
  cod.compute(F);
  NormSolution out;
  out.rank = static_cast<int>(cod.rank());
  const Vec c = cod.solve(V.coords);
  const double residual = (F * c - V.coords).norm();
  const double scale = std::max({1.0, V.coords.norm(), F.norm() * c.norm()});
  if (residual > 1e-9 * scale) {
    out.norm = NormValue::inf();
    return out;
  }
  out.coefficients = c;
  out.norm = NormValue::finite(c.norm());
  return out;
}

NormValue ars_norm(const ARSSpec& spec, const TangentVector& V) { return ars_norm_solve(spec, V).norm; }

bool is_left_translation_isometry(const ARSSpec& spec, const GroupPoint& g, double tol) {
  return in_ZX(spec, g, tol);
}

GroupPoint apply_automorphism(GroupTag group, const Mat& P, const GroupPoint& g) {
  if (group == GroupTag::aff2) {
    // P = [[1,0],[c,d]] integrates to (x, y) -> (x, c(x-1) + d y).
    Vec r(2);
    r << g.coords(0), P(1, 0) * (g.coords(0) - 1.0) + P(1, 1) * g.coords(1);
    return GroupPoint{group, r};
  }
  return group_exp(group, P * group_log(g));
}

Mat automorphism_differential(GroupTag group, const Mat& P, const GroupPoint& g) {
  const GroupPoint image = apply_automorphism(group, P, g);
  return left_translation_diff(image) * P * left_translation_diff(inverse(g));
}

CandidateReport isometry_candidate_report(const ARSSpec& a, const ARSSpec& b, const Mat& P,
                                          std::span<const GroupPoint> samples, double tol) {
  if (a.group() != b.group()) throw std::invalid_argument("structures live on different groups");
  const auto& model = LieAlgebraModel::get(a.group());
  if (!is_automorphism(model, P, tol)) throw std::invalid_argument("P is not a Lie algebra automorphism");
  CandidateReport rep;
  const int n = a.dim();

  // P maps the frame of a onto an orthonormal frame of b's distribution: P B = B' O, O orthogonal.
  const Mat PB = P * a.frame();
  const Mat& Bp = b.frame();
  const Mat O = Bp.completeOrthogonalDecomposition().solve(PB);
  const double span_res = max_abs(Bp * O - PB);
  rep.distribution_ok = span_res <= tol * std::max(1.0, max_abs(PB));
  const Mat I = Mat::Identity(n - 1, n - 1);
  rep.frame_orthogonal = rep.distribution_ok && max_abs(O.transpose() * O - I) <= 1e3 * tol;

  const Mat C = conjugate_derivation(P, a.derivation());
  const double dscale = std::max(1.0, max_abs(b.derivation()));
  if (max_abs(C - b.derivation()) <= tol * dscale) {
    rep.derivation_sign = 1;
  } else if (max_abs(C + b.derivation()) <= tol * dscale) {
    rep.derivation_sign = -1;
  }

  rep.norms_ok = true;
  for (const auto& h : samples) {
    const Mat dPhi = automorphism_differential(a.group(), P, h);
    const GroupPoint image = apply_automorphism(a.group(), P, h);
    std::vector<Vec> tests;
    for (int i = 0; i < n; ++i) tests.push_back(Vec::Unit(n, i));
    tests.push_back(Vec::Ones(n));
    for (const auto& v : tests) {
      const NormValue na = ars_norm(a, TangentVector{h, v});
      const NormValue nb = ars_norm(b, TangentVector{image, dPhi * v});
      if (na.infinite != nb.infinite) {
        rep.norms_ok = false;
        rep.max_norm_error = std::max(rep.max_norm_error, 1.0);
        continue;
      }
      if (na.infinite) continue;
      const double err = std::abs(na.value - nb.value) / std::max(1.0, na.value);
      rep.max_norm_error = std::max(rep.max_norm_error, err);
      if (err > 1e-7) rep.norms_ok = false;
    }
  }
  return rep;
}

bool isometry_candidate_check(const ARSSpec& a, const ARSSpec& b, const Mat& P, std::span<const GroupPoint> samples,
                              double tol) {
  return isometry_candidate_report(a, b, P, samples, tol).accepted();
}

std::vector<GroupPoint> default_samples(GroupTag group) {
  std::vector<GroupPoint> s;
  if (group == GroupTag::aff2) {
    for (double x : {0.37, 1.3, 2.9})
      for (double y : {-1.7, 0.41, 2.3}) s.push_back(GroupPoint::make(group, {x, y}));
  } else {
    for (double x : {-1.3, 0.7})
      for (double y : {-0.9, 1.6})
        for (double z : {-2.1, 0.55}) s.push_back(GroupPoint::make(group, {x, y, z}));
  }
  return s;
}

}  // namespace arskit
