#include "arskit/algebra.hpp"

#include <catch_amalgamated.hpp>

#include "support.hpp"

#include <cmath>
#include <numbers>

using namespace arskit;
using namespace arskit::test;
using Catch::Approx;

namespace {

const LieAlgebraModel& aff2() { return LieAlgebraModel::get(GroupTag::aff2); }
const LieAlgebraModel& heis() { return LieAlgebraModel::get(GroupTag::heis3); }

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("brackets of the basis") {
  CHECK(aff2().bracket(vec({1, 0}), vec({0, 1})).isApprox(vec({0, 1})));
  CHECK(heis().bracket(vec({1, 0, 0}), vec({0, 1, 0})).isApprox(vec({0, 0, 1})));
  const Vec u = vec({0.3, -1.2, 2.5});
  CHECK(heis().bracket(u, u).isZero(0.0));
  CHECK_THROWS_AS(heis().bracket(vec({1, 0}), vec({0, 1, 0})), std::invalid_argument);
}

TEST_CASE("structure constants are antisymmetric and satisfy Jacobi") {
  for (GroupTag g : {GroupTag::aff2, GroupTag::heis3}) {
    const auto& m = LieAlgebraModel::get(g);
    const int n = m.dim();
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(m.structure_constant(k, i, j) == -m.structure_constant(k, j, i));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Vec a = Vec::Zero(n), b = Vec::Zero(n), c = Vec::Zero(n);
          a[i] = b[j] = c[k] = 1;
          const Vec jac = m.bracket(a, m.bracket(b, c)) + m.bracket(b, m.bracket(c, a)) + m.bracket(c, m.bracket(a, b));
          CHECK(jac.isZero(0.0));
        }
  }
}

TEST_CASE("derivation predicate") {
  CHECK(is_derivation(aff2(), mat2(0, 0, 1, 1)));
  CHECK_FALSE(is_derivation(aff2(), mat2(1, 0, 0, 0)));
  CHECK(is_derivation(aff2(), Mat::Zero(2, 2)));
  CHECK(is_derivation(heis(), Mat::Zero(3, 3)));
  CHECK(is_derivation(aff2(), aff2_D(q(1), q(1))));
  CHECK_FALSE(is_derivation(heis(), ExactMat::identity(3)));
}

TEST_CASE("derivation space") {
  const auto a = derivation_space(aff2());
  CHECK(a.parameters.size() == 2);
  CHECK(a.pattern == std::vector<std::vector<std::string>>{{"0", "0"}, {"a", "b"}});
  CHECK(a.make(std::vector<double>{0, 0}).isZero(0.0));
  CHECK(is_derivation(aff2(), a.make(std::vector<double>{0, 0})));
  const auto h = derivation_space(heis());
  CHECK(h.parameters.size() == 6);
  CHECK(h.pattern[2][2] == "a+d");
  const ExactMat D = h.make({q(1), q(2), q(3), q(4), q(5), q(6)});
  CHECK(D(2, 2) == q(5));
  CHECK(h.parameters_of(D) == std::vector<Surd>{q(1), q(2), q(3), q(4), q(5), q(6)});
}

TEST_CASE("random derivations satisfy Leibniz") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> p(6);
    for (double& x : p) x = uniform(rng, -5, 5);
    CHECK(derivation_residual(heis(), derivation_space(heis()).make(p)) <= 1e-12);
    CHECK(derivation_residual(aff2(), derivation_space(aff2()).make(std::vector<double>{p[0], p[1]})) <= 1e-12);
  }
}

TEST_CASE("automorphism predicate") {
  CHECK(is_automorphism(heis(), Mat(Mat::Identity(3, 3))));
  // P_{eps eps'} = diag(eps, eps^-1 eps', eps') with eps = eps' = -1.
  Mat P = Mat::Zero(3, 3);
  P.diagonal() << -1, 1, -1;
  CHECK(is_automorphism(heis(), P));
  P.diagonal() << 1, 1, 5;
  CHECK_FALSE(is_automorphism(heis(), P));
  CHECK(is_automorphism(aff2(), mat2(1, 0, 3, -2)));
  CHECK_FALSE(is_automorphism(aff2(), mat2(2, 0, 0, 1)));
  CHECK_FALSE(is_automorphism(aff2(), mat2(1, 0, 0, 0)));
}

TEST_CASE("conjugation of derivations") {
  const ExactMat D = heis_D(q(2), q(3), q(5), q(7), q(11), q(13));
  CHECK(conjugate_derivation(ExactMat::identity(3), D) == D);
  for (int eps : {-1, 1})
    for (int epsp : {-1, 1}) {
      const ExactMat P = ExactMat::diagonal({q(eps), q(eps * epsp), q(epsp)});
      REQUIRE(is_automorphism(heis(), P));
      const ExactMat C = conjugate_derivation(P, D);
      CHECK(is_derivation(heis(), C));
      CHECK(C(0, 1) == q(epsp) * D(0, 1));
      CHECK(C(1, 0) == q(epsp) * D(1, 0));
      CHECK(C(1, 1) == D(1, 1));
      CHECK(C(2, 1) == q(eps) * D(2, 1));
    }
  const ExactMat P = ExactMat{{q(1), q(0)}, {q(-3, 5), q(2, 5)}};
  CHECK(conjugate_derivation(P, aff2_D(q(1), q(1))) == aff2_D(q(1), q(1)));
  CHECK_THROWS_AS(conjugate_derivation(ExactMat::zero(2, 2), aff2_D(q(1), q(1))), std::invalid_argument);
}

TEST_CASE("conjugation keeps derivations") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Mat A(2, 2);
    for (int i = 0; i < 4; ++i) A(i / 2, i % 2) = uniform(rng, -2, 2);
    if (std::abs(A.determinant()) < 0.1) continue;
    Mat P = Mat::Zero(3, 3);
    P.topLeftCorner(2, 2) = A;
    P(2, 0) = uniform(rng, -1, 1);
    P(2, 1) = uniform(rng, -1, 1);
    P(2, 2) = A.determinant();
    REQUIRE(is_automorphism(heis(), P));
    std::vector<double> p(6);
    for (double& x : p) x = uniform(rng, -3, 3);
    CHECK(is_derivation(heis(), conjugate_derivation(P, derivation_space(heis()).make(p))));
  }
}

TEST_CASE("matrix exponential") {
  const Mat D = mat2(0, 0, 1, 0);
  CHECK(exp_tD(D, 0.0).isApprox(Mat(Mat::Identity(2, 2))));
  CHECK(exp_tD(D, 1.0).isApprox(mat2(1, 0, 1, 1), 1e-14));
  CHECK(exp_tD(mat2(0, 0, 0, 1), 1.0).isApprox(mat2(1, 0, 0, std::numbers::e), 1e-14));
}

TEST_CASE("exponential group law") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> p(6);
    for (double& x : p) x = uniform(rng, -0.3, 0.3);
    const Mat D = derivation_space(heis()).make(p);
    const double s = uniform(rng, -10, 10), t = uniform(rng, -10, 10);
    const Mat lhs = exp_tD(D, s) * exp_tD(D, t);
    const Mat rhs = exp_tD(D, s + t);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("2x2 eigenstructure") {
  const auto a = eigen2x2(mat2(1, 0, 0, 2));
  CHECK(a.kind == SpectrumKind::real_distinct);
  CHECK(a.l1 == Approx(1.0));
  CHECK(a.l2 == Approx(2.0));
  const auto b = eigen2x2(mat2(1, 1, 0, 1));
  CHECK(b.kind == SpectrumKind::jordan);
  CHECK(b.l1 == Approx(1.0));
  const auto c = eigen2x2(mat2(0, 1, -1, 0));
  CHECK(c.kind == SpectrumKind::complex);
  CHECK(c.re == Approx(0.0).margin(1e-15));
  CHECK(c.im == Approx(1.0));
  CHECK(eigen2x2(mat2(3, 0, 0, 3)).kind == SpectrumKind::scalar);
  // Near-coincident eigenvalues fall under the tolerance.
  CHECK(eigen2x2(mat2(1, 1, 1e-12, 1)).kind == SpectrumKind::jordan);
}

TEST_CASE("exact 2x2 eigenstructure") {
  const auto a = eigen2x2(ExactMat{{q(1), q(0)}, {q(0), q(2)}});
  CHECK(a.kind == SpectrumKind::real_distinct);
  CHECK(a.l1 == q(1));
  CHECK(a.l2 == q(2));
  const auto b = eigen2x2(ExactMat{{q(0), q(1)}, {q(1), q(0)}});
  CHECK(b.l1 == q(-1));
  const auto c = eigen2x2(ExactMat{{q(0), q(-1)}, {q(1), q(0)}});
  CHECK(c.kind == SpectrumKind::complex);
  CHECK(c.im == q(1));
  const auto d = eigen2x2(ExactMat{{q(0), q(2)}, {q(1), q(0)}});
  CHECK(d.l2 == Surd::sqrt(Rational(2)));
}
