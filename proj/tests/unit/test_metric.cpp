#include "arskit/metric.hpp"

#include <catch_amalgamated.hpp>

#include "support.hpp"

#include <cmath>

using namespace arskit;
using namespace arskit::test;
using Catch::Approx;

namespace {

GroupPoint H(double x, double y, double z) { return GroupPoint::make(GroupTag::heis3, {x, y, z}); }
GroupPoint A(double x, double y) { return GroupPoint::make(GroupTag::aff2, {x, y}); }

// D1 with l1 = 1, l2 = 0 and e = f = 1.
ARSSpec d1_spec() { return heis_xy(heis_D(q(1), q(0), q(0), q(0), q(1), q(1))); }

ARSSpec aff2_spec(const Surd& alpha, const Surd& beta, const Surd& a, const Surd& b) {
  return ARSSpec::create(GroupTag::aff2, aff2_D(a, b), {ExactMat::column({alpha, beta})});
}

ARSSpec aff2_canonical(long b) { return aff2_spec(q(1), q(0), q(1), q(b)); }

TangentVector at(const GroupPoint& g, const Vec& v) { return TangentVector{g, v}; }

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("validation") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const ExactMat D = heis_D(random_rational(rng, 3, 2), random_rational(rng, 3, 2), random_rational(rng, 3, 2),
                              random_rational(rng, 3, 2), random_rational(rng, 3, 2), random_rational(rng, 3, 2));
    CHECK(heis_xy(D).validity().rank_condition_ok);
  }
  const auto zero = heis_xy(ExactMat::zero(3, 3));
  CHECK(zero.validity().rank_condition_ok);
  CHECK_FALSE(zero.validity().open_dense_ok);
  CHECK_FALSE(zero.validity().valid());
  CHECK_FALSE(zero.validity().failures.empty());
  CHECK(aff2_spec(q(1), q(0), q(1), q(0)).validity().valid());
  // Dependent frame vectors.
  const auto dep = ARSSpec::create(GroupTag::heis3, heis_D(q(1), q(0), q(0), q(0), q(0), q(0)),
                                   {col({1, 0, 0}), col({2, 0, 0})});
  CHECK_FALSE(dep.validity().frame_independent);
  CHECK_THROWS_AS(ARSSpec::create(GroupTag::heis3, ExactMat::identity(3), {col({1, 0, 0}), col({0, 1, 0})}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ARSSpec::create(GroupTag::heis3, ExactMat::zero(3, 3), {col({1, 0, 0})}), std::invalid_argument);
}

TEST_CASE("double input is snapped to rationals") {
  Mat D = Mat::Zero(2, 2);
  D(1, 0) = 0.5;
  D(1, 1) = 0.25;
  const auto s = ARSSpec::from_doubles(GroupTag::aff2, D, {vec({1, 0})});
  CHECK(s.derivation_exact()(1, 0) == q(1, 2));
  CHECK(s.derivation_exact()(1, 1) == q(1, 4));
}

TEST_CASE("frame at a point") {
  const auto a = aff2_canonical(0);
  CHECK(frame_at(a, GroupPoint::identity(GroupTag::aff2)).col(0).isZero(0.0));
  CHECK(frame_at(a, A(2, 0)).isApprox(mat2(0, 2, 1, 0)));
  Mat expected = Mat::Zero(3, 3);
  expected(2, 0) = expected(0, 1) = expected(1, 2) = 1;
  CHECK(frame_at(d1_spec(), H(0, 0, 1)).isApprox(expected));
}

TEST_CASE("singular polynomial") {
  std::mt19937 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    Surd p[6];
    for (auto& v : p) v = random_rational(rng, 3, 4);
    const auto s = heis_xy(heis_D(p[0], p[1], p[2], p[3], p[4], p[5]));
    const auto& poly = s.singular_polynomial();
    for (int k = 0; k < 5; ++k) {
      const Surd x = random_rational(rng, 2, 3), y = random_rational(rng, 2, 3), z = random_rational(rng, 2, 3);
      const Surd half(Rational(1, 2));
      const Surd expected = p[4] * x + p[5] * y + (p[0] + p[3]) * z - half * p[2] * x * x + half * p[1] * y * y -
                            p[3] * x * y;
      const std::vector<Surd> pt{x, y, z};
      // Equal up to a nonzero constant, fixed by the frame determinant sign convention.
      const Surd got = poly.eval_exact(pt);
      CHECK((got == expected || got == -expected));
    }
    CHECK(poly.eval_exact(std::vector<Surd>{q(0), q(0), q(0)}).is_zero());
  }
  for (long alpha : {1, -2, 3})
    for (long beta : {0, 5}) {
      const auto s = aff2_spec(q(alpha), q(beta), q(1), q(2));
      const auto& poly = s.singular_polynomial();
      for (double x : {0.5, 1.0, 3.0})
        for (double y : {-1.0, 0.0, 2.0}) {
          const double expected = alpha * ((x - 1) + 2 * y);
          CHECK(std::abs(std::abs(poly.eval(vec({x, y}))) - std::abs(expected)) <= 1e-12);
        }
      CHECK(poly.eval(vec({1, 0})) == 0.0);
    }
}

TEST_CASE("singular locus membership") {
  const auto s = d1_spec();
  CHECK(in_Z(s, GroupPoint::identity(GroupTag::heis3)));
  CHECK(in_ZX(s, GroupPoint::identity(GroupTag::heis3)));
  CHECK(in_Z(s, H(1, 0, -1)));
  CHECK_FALSE(in_ZX(s, H(1, 0, -1)));
  CHECK(in_ZX(s, H(0, 2, -2)));
  CHECK_FALSE(in_ZX(s, H(0, 2, 2)));
  CHECK_FALSE(in_Z(s, H(0, 2, 2)));
}

TEST_CASE("Z_X is contained in Z and is a subgroup") {
  std::mt19937 rng(79);
  const auto s = d1_spec();
  // Z_X = {(0, y, -y)} for this spec.
  for (int trial = 0; trial < 50; ++trial) {
    const double y1 = uniform(rng, -5, 5), y2 = uniform(rng, -5, 5);
    const auto g = H(0, y1, -y1), h = H(0, y2, -y2);
    REQUIRE(in_ZX(s, g));
    CHECK(in_Z(s, g));
    CHECK(in_ZX(s, multiply(g, h)));
    CHECK(in_ZX(s, inverse(g)));
  }
  const auto a = aff2_canonical(1);
  // y = -(x - 1) for b = 1.
  for (int trial = 0; trial < 50; ++trial) {
    const double x1 = std::exp(uniform(rng, -2, 2)), x2 = std::exp(uniform(rng, -2, 2));
    const auto g = A(x1, 1 - x1), h = A(x2, 1 - x2);
    REQUIRE(in_ZX(a, g));
    CHECK(in_ZX(a, multiply(g, h)));
    CHECK(in_ZX(a, inverse(g)));
  }
}

TEST_CASE("norm values") {
  const auto s = d1_spec();
  const auto g = H(1, 0, -1);
  CHECK(ars_norm(s, at(g, vec({1, 0, 0}))).value == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  const auto inf = ars_norm(s, at(GroupPoint::identity(GroupTag::heis3), vec({0, 0, 1})));
  CHECK(inf.infinite);
  CHECK(inf.str() == "inf");
  const auto r = H(1, 1, 1);
  REQUIRE_FALSE(in_Z(s, r));
  const Mat F = frame_at(s, r);
  for (int k = 0; k < 3; ++k) CHECK(ars_norm(s, at(r, F.col(k))).value == Approx(1.0).epsilon(1e-12));
  CHECK(ars_norm(s, at(r, Vec::Zero(3))).value == 0.0);
}

TEST_CASE("frame is orthonormal at Riemannian points") {
  std::mt19937 rng(83);
  const auto s = heis_xy(heis_D(q(1), q(2), q(-1), q(1, 2), q(1), q(-1)));
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = H(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2));
    if (in_Z(s, g, 1e-3)) continue;
    const Mat F = frame_at(s, g);
    const Vec c = vec({uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)});
    CHECK(ars_norm(s, at(g, F * c)).value == Approx(c.norm()).epsilon(1e-9));
  }
}

TEST_CASE("norm agrees with a brute-force minimization") {
  std::mt19937 rng(89);
  const auto s = d1_spec();
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = H(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
    const Vec V = vec({uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)});
    const auto n = ars_norm(s, at(g, V));
    REQUIRE_FALSE(n.infinite);
    // The grid covers coefficient vectors of norm at most 10.
    if (n.value > 9.5) continue;
    ++checked;
    // Search v on a grid, solve for u by least squares, and keep the smallest coefficient norm.
    const Mat F = frame_at(s, g);
    double best = INFINITY;
    const double step = 1e-3;
    const Eigen::MatrixXd Y = F.rightCols(2);
    const Eigen::VectorXd f0 = F.col(0);
    const double slack = 0.5 * step * (f0 - Y * Y.colPivHouseholderQr().solve(f0)).norm() + 1e-9;
    for (double v = -10; v <= 10; v += step) {
      const Vec rest = V - v * F.col(0);
      const Eigen::VectorXd u = Y.colPivHouseholderQr().solve(Eigen::VectorXd(rest));
      if ((Y * u - rest).norm() > slack) continue;
      best = std::min(best, std::sqrt(v * v + u.squaredNorm()));
    }
    CHECK(std::abs(best - n.value) <= 1e-2);
  }
  CHECK(checked >= 7);
}

TEST_CASE("norm discontinuity on Z minus Z_X") {
  const auto s = d1_spec();
  const Vec V = vec({1, 0, 0});
  const auto g = H(1, 0, -1);
  const double at_g = ars_norm(s, at(g, left_translation_diff(g) * V)).value;
  CHECK(at_g == Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const auto h = H(1, 0, -1 + eps);
    CHECK(ars_norm(s, at(h, left_translation_diff(h) * V)).value == Approx(1.0).epsilon(1e-9));
  }
  // Continuous at a point of Z_X.
  const auto k = H(0, 2, -2);
  const double at_k = ars_norm(s, at(k, left_translation_diff(k) * V)).value;
  for (double eps : {1e-3, 1e-5}) {
    const auto h = H(eps, 2, -2 + eps);
    CHECK(std::abs(ars_norm(s, at(h, left_translation_diff(h) * V)).value - at_k) <= 1e-4);
  }
}

TEST_CASE("left translations by Z_X are isometries") {
  const auto a = aff2_canonical(0);
  CHECK(is_left_translation_isometry(a, A(1, 5)));
  CHECK_FALSE(is_left_translation_isometry(a, A(2, 0)));
  CHECK(is_left_translation_isometry(a, GroupPoint::identity(GroupTag::aff2)));

  std::mt19937 rng(97);
  const auto s = d1_spec();
  for (int trial = 0; trial < 30; ++trial) {
    const double y = uniform(rng, -3, 3);
    const auto g = H(0, y, -y);
    REQUIRE(is_left_translation_isometry(s, g));
    const auto h = H(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2));
    const Vec V = vec({uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)});
    const auto n1 = ars_norm(s, at(h, V));
    const auto n2 = ars_norm(s, at(multiply(g, h), left_translation_diff(g) * V));
    REQUIRE(n1.infinite == n2.infinite);
    if (!n1.infinite) CHECK(n2.value == Approx(n1.value).epsilon(1e-8));
  }
}

TEST_CASE("automorphism lifts") {
  std::mt19937 rng(101);
  Mat P(3, 3);
  P << 2, 1, 0, -1, 1, 0, 0.5, -2, 3;
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = H(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2));
    const auto h = H(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2));
    const auto lhs = apply_automorphism(GroupTag::heis3, P, multiply(g, h));
    const auto rhs = multiply(apply_automorphism(GroupTag::heis3, P, g), apply_automorphism(GroupTag::heis3, P, h));
    CHECK((lhs.coords - rhs.coords).cwiseAbs().maxCoeff() <= 1e-11);
  }
  const auto g = apply_automorphism(GroupTag::aff2, mat2(1, 0, 2, 3), A(2, 1));
  // Phi(x, y) = (x, c(x - 1) + d y).
  CHECK(g.coords.isApprox(vec({2, 5})));
  CHECK(automorphism_differential(GroupTag::aff2, mat2(1, 0, 2, 3), GroupPoint::identity(GroupTag::aff2))
            .isApprox(mat2(1, 0, 2, 3)));
}

TEST_CASE("isometry candidates") {
  const auto a = aff2_canonical(1);
  const auto samples = default_samples(GroupTag::aff2);
  CHECK(isometry_candidate_check(a, a, Mat(Mat::Identity(2, 2)), samples));
  CHECK_FALSE(isometry_candidate_check(a, a, mat2(1, 0, 0, 2), samples));
  CHECK_FALSE(isometry_candidate_check(a, a, mat2(1, 0, 0, -1), samples));
  CHECK_THROWS_AS(isometry_candidate_check(a, a, mat2(2, 0, 0, 1), samples), std::invalid_argument);

  // Subalgebra frame {X, Z} with d = f = 0.
  const auto sub = heis_xz(heis_D(q(0), q(2), q(1), q(0), q(0), q(0)));
  const auto hs = default_samples(GroupTag::heis3);
  for (int eps : {-1, 1})
    for (int epsp : {-1, 1}) {
      Mat P = Mat::Zero(3, 3);
      P.diagonal() << eps, eps * epsp, epsp;
      CHECK(isometry_candidate_check(sub, sub, P, hs));
    }
  Mat P = Mat::Identity(3, 3);
  P(1, 1) = 2;
  P(2, 2) = 2;
  CHECK_FALSE(isometry_candidate_check(sub, sub, P, hs));
}
