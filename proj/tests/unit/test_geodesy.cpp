#include "arskit/geodesy.hpp"

#include <catch_amalgamated.hpp>

#include "support.hpp"

#include <cmath>

using namespace arskit;
using namespace arskit::test;
using Catch::Approx;

namespace {

ARSSpec d1_1_0() { return heis_xy(heis_D(q(1), q(0), q(0), q(0), q(1), q(1))); }
ARSSpec d1_1_2() { return heis_xy(heis_D(q(1), q(0), q(0), q(2), q(1), q(1))); }
ARSSpec d3_0_1() { return heis_xy(heis_D(q(0), q(-1), q(1), q(0), q(0), q(0))); }

ARSSpec aff2_canonical(long b) {
  return ARSSpec::create(GroupTag::aff2, aff2_D(q(1), q(b)), {ExactMat::column({q(1), q(0)})});
}

CotangentState state(GroupTag g, std::initializer_list<double> x, std::initializer_list<double> l) {
  return CotangentState{GroupPoint::make(g, x), vec(l)};
}

double max_drift(const GeodesicTrace& t) {
  double m = 0;
  for (const auto& s : t.samples) m = std::max(m, std::abs(s.H - t.samples.front().H));
  return m;
}

Eigen::VectorXd endpoint(const ARSSpec& s, const CotangentState& st, double T, int steps) {
  const auto t = geodesic_shoot(s, st, T, steps);
  const auto& last = t.samples.back().state;
  Eigen::VectorXd out(2 * last.point.coords.size());
  out << last.point.coords, last.covector;
  return out;
}

}  // namespace

TEST_CASE("Hamiltonian values") {
  const auto s = d1_1_0();
  CHECK(hamiltonian(s, state(GroupTag::heis3, {1, 2, 3}, {0, 0, 0})) == 0.0);
  CHECK(hamiltonian(s, state(GroupTag::heis3, {0, 0, 1}, {1, 0, 0})) == Approx(0.5));
  CHECK(hamiltonian(s, state(GroupTag::heis3, {0, 0, 1}, {0, 0, 1})) == Approx(0.5));
  // Covector annihilating the whole frame at the identity: only dz, where X(e) = 0.
  CHECK(hamiltonian(s, state(GroupTag::heis3, {0, 0, 0}, {0, 0, 1})) == 0.0);
}

TEST_CASE("symbolic and finite-difference partials agree") {
  std::mt19937 rng(113);
  const auto s = heis_xy(heis_D(q(1), q(2), q(-1), q(1, 2), q(1), q(-1)));
  const NormalHamiltonian H(s);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec g = vec({uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2)});
    const Vec l = vec({uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)});
    Vec dg1, dl1, dg2, dl2;
    H.gradient(g, l, dg1, dl1, Partials::symbolic);
    H.gradient(g, l, dg2, dl2, Partials::finite_difference);
    CHECK((dg1 - dg2).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, dg1.cwiseAbs().maxCoeff()));
    CHECK((dl1 - dl2).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, dl1.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("geodesic traces") {
  const auto s = d1_1_0();
  const auto still = geodesic_shoot(s, state(GroupTag::heis3, {1, 2, 3}, {0, 0, 0}), 1.0, 50);
  REQUIRE(still.samples.size() == 51);
  for (const auto& p : still.samples) CHECK(p.state.point.coords.isApprox(vec({1, 2, 3})));

  const auto t = geodesic_shoot(s, state(GroupTag::heis3, {0, 0, 1}, {1, 0, 0}), 1.0, 1000);
  CHECK(t.samples.front().H == Approx(0.5));
  CHECK(max_drift(t) <= 1e-8);
  for (size_t i = 1; i < t.samples.size(); ++i) CHECK(t.samples[i].t > t.samples[i - 1].t);
  CHECK(t.samples.back().t == Approx(1.0));
  CHECK(t.step == Approx(1e-3));

  CHECK_THROWS_AS(geodesic_shoot(s, state(GroupTag::heis3, {0, 0, 1}, {1, 0, 0}), 1.0, 0), std::invalid_argument);
}

TEST_CASE("aff2 geodesic from the identity") {
  const auto s = aff2_canonical(0);
  // At e the linear field vanishes and Y_1 = d/dx, so the velocity is (1, 0).
  const NormalHamiltonian H(s);
  Vec dg, dl;
  H.gradient(vec({1, 0}), vec({1, 0}), dg, dl);
  CHECK(dl.isApprox(vec({1, 0})));
  const auto t = geodesic_shoot(s, state(GroupTag::aff2, {1, 0}, {1, 0}), 1e-3, 10);
  const Vec v = (t.samples[1].state.point.coords - t.samples[0].state.point.coords) / t.step;
  CHECK((v - vec({1, 0})).cwiseAbs().maxCoeff() <= 1e-3);
}

TEST_CASE("aff2 trajectories leaving the chart are truncated") {
  const auto t = geodesic_shoot(aff2_canonical(0), state(GroupTag::aff2, {1, 0}, {-1000, 0}), 1.0, 10);
  CHECK(t.truncated);
  CHECK(t.samples.size() < 11);
  for (const auto& p : t.samples) CHECK(p.state.point.coords[0] > 0);
}

TEST_CASE("energy drift from random Riemannian starts") {
  std::mt19937 rng(127);
  const auto s = d1_1_2();
  int done = 0;
  while (done < 20) {
    const auto g = GroupPoint::make(GroupTag::heis3, {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)});
    if (in_Z(s, g, 1e-2)) continue;
    const CotangentState st{g, vec({uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)})};
    const auto t = geodesic_shoot(s, st, 1.0, 1000);
    CHECK(max_drift(t) <= 1e-7 * (1 + std::abs(t.samples.front().H)));
    ++done;
  }
}

TEST_CASE("fourth-order convergence") {
  const auto s = d1_1_2();
  const auto st = state(GroupTag::heis3, {0.3, -0.2, 0.5}, {1, 0.5, -0.5});
  const Eigen::VectorXd a = endpoint(s, st, 1.0, 20), b = endpoint(s, st, 1.0, 40), c = endpoint(s, st, 1.0, 80);
  const double ratio = (a - b).norm() / (b - c).norm();
  CHECK(ratio >= 12);
  CHECK(ratio <= 20);
}

TEST_CASE("tangency examples") {
  const auto a = tangency_points(d1_1_2());
  REQUIRE(a.kind == TangencyKind::points);
  REQUIRE(a.points.size() == 1);
  CHECK(a.exact);
  CHECK(a.str() == "(-1,1/2,-1/6)");
  CHECK(a.points[0].isApprox(vec({-1, 0.5, -1.0 / 6})));

  const auto b = tangency_points(d1_1_0());
  CHECK(b.kind == TangencyKind::empty);
  CHECK(b.str() == "no tangency points");

  const auto c = tangency_points(d3_0_1());
  REQUIRE(c.kind == TangencyKind::curves);
  REQUIRE(c.curves.size() == 1);
  CHECK(c.curves[0].is_line());
  CHECK(c.curves[0].base.isZero(0.0));
  CHECK(c.curves[0].direction.isApprox(vec({0, 0, 1})));
  CHECK(c.str() == "(0,0,z)");

  CHECK(tangency_points(nonsub_row_spec(*find_nonsub_row("2.ii.4"))).kind == TangencyKind::all_of_Z);
  CHECK(tangency_points(heis_xz(heis_D(q(0), q(1), q(1), q(0), q(0), q(0)))).kind == TangencyKind::empty);
  CHECK(tangency_points(aff2_canonical(1)).kind == TangencyKind::empty);
}

TEST_CASE("tangency output satisfies the defining equations") {
  for (const auto& row : nonsub_rows()) {
    INFO(row.label);
    const auto s = nonsub_row_spec(row);
    const auto r = tangency_points(s);
    for (const auto& p : r.points) CHECK(tangency_residual(s, p) <= 1e-10);
    for (const auto& c : r.curves)
      for (double t : {-2.0, -0.5, 0.0, 1.0, 3.0}) CHECK(tangency_residual(s, c.at(t)) <= 1e-10);
  }
}

TEST_CASE("tangency is equivariant under automorphisms") {
  std::mt19937 rng(131);
  for (const auto& row : nonsub_rows()) {
    INFO(row.label);
    const auto s = nonsub_row_spec(row);
    const auto r = tangency_points(s);
    Mat A(2, 2);
    do {
      for (int i = 0; i < 4; ++i) A(i / 2, i % 2) = std::round(uniform(rng, -2, 2));
    } while (std::abs(A.determinant()) < 0.5);
    ExactMat P(3, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) P(i, j) = q(static_cast<long>(A(i, j)));
    P(2, 0) = q(1, 2);
    P(2, 1) = q(-1);
    P(2, 2) = P(0, 0) * P(1, 1) - P(0, 1) * P(1, 0);
    std::vector<ExactMat> frame;
    for (const auto& b : s.frame_exact()) frame.push_back(P * b);
    const auto s2 = ARSSpec::create(GroupTag::heis3, conjugate_derivation(P, s.derivation_exact()), frame);
    const auto r2 = tangency_points(s2);
    CHECK(r2.kind == r.kind);
    Mat Pd(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) Pd(i, j) = P(i, j).to_double();
    auto image = [&](const Vec& p) { return apply_automorphism(GroupTag::heis3, Pd, GroupPoint::make(GroupTag::heis3, p)).coords; };
    REQUIRE(r2.points.size() == r.points.size());
    for (const auto& p : r.points) {
      const Vec ip = image(p);
      const bool found = std::any_of(r2.points.begin(), r2.points.end(),
                                     [&](const Vec& p2) { return (p2 - ip).cwiseAbs().maxCoeff() <= 1e-8; });
      CHECK(found);
    }
    for (const auto& c : r.curves)
      for (double t : {-1.0, 0.0, 2.0}) CHECK(tangency_residual(s2, image(c.at(t))) <= 1e-8);
  }
}

TEST_CASE("component counts") {
  const Box box = Box::cube(3, -3, 3);
  const auto a = connected_components(nonsub_row_spec(*find_nonsub_row("1.ii.2")), box, 64);
  CHECK(a.count == 4);
  CHECK(a.stable);
  CHECK(a.caveat == "box-local");
  CHECK(connected_components(d1_1_2(), box, 64).count == 2);
  CHECK(connected_components(d3_0_1(), box, 64).count == 1);
  // The line x - 1 + y = 0 splits the half-plane.
  CHECK(connected_components(aff2_canonical(1), Box::cube(2, -3, 3), 64).count == 2);
}

TEST_CASE("chart clamping and empty boxes") {
  const Box b = clamp_to_chart(GroupTag::aff2, Box::cube(2, -3, 3));
  CHECK(b.lo[0] == Approx(1e-6));
  CHECK(b.hi[0] == 3);
  CHECK(clamp_to_chart(GroupTag::aff2, Box::cube(2, -3, -1)).empty());
  CHECK(locus_sample(aff2_canonical(0), Box::cube(2, -3, -1), 32).empty());
  CHECK(locus_sample(d1_1_2(), Box{vec({1, 0, 0}), vec({0, 1, 1})}, 16).empty());
}

TEST_CASE("locus samples") {
  const auto pts = locus_sample(aff2_canonical(0), Box::cube(2, -3, 3), 64);
  REQUIRE_FALSE(pts.empty());
  const double diam = 6.0 / 64 * std::sqrt(2.0);
  for (const auto& p : pts) CHECK(std::abs(p[0] - 1) <= diam);

  const auto s = nonsub_row_spec(*find_nonsub_row("2.ii.4"));
  const auto pts3 = locus_sample(s, Box::cube(3, -3, 3), 16);
  REQUIRE_FALSE(pts3.empty());
  for (const auto& p : pts3) CHECK(std::abs(p[1]) <= 6.0 / 16 * std::sqrt(3.0));

  const auto d = d1_1_2();
  const auto slice = locus_sample(d, Box::cube(3, -3, 3), 32, 0.5);
  REQUIRE_FALSE(slice.empty());
  for (const auto& p : slice) {
    CHECK(p[2] == 0.5);
    CHECK(std::abs(d.singular_polynomial_double().eval(p)) <= 0.5);
  }
}
