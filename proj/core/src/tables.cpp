#include "arskit/tables.hpp"

#include <stdexcept>

namespace arskit {

namespace {

Surd q(long p, long d = 1) { return Surd(Rational(p, d)); }

}  // namespace

const std::vector<SubalgebraRow>& subalgebra_rows() {
  static const std::vector<SubalgebraRow> rows = {
      {"(i)", 1, q(2), 0, ">-1/4", "x+y=0", "{e}"},
      {"(ii)", 1, q(-1), 0, "<-1/4", "x+y=0", "{e}"},
      {"(iii)", 1, q(0), 1, "0", "x+y=0", "(-s,s,-s-1/2*s^2)"},
      {"(iv)", 1, q(0), 0, "0", "x+y=0", "(-s,s,-1/2*s^2)"},
      {"(v)", 0, q(1), 0, "1", "x=0", "x=y=0"},
      {"(vi)", 0, q(-1), 0, "-1", "x=0", "x=y=0"},
      {"(vii)", 0, q(0), 1, "0", "x=0", "x=y=0"},
      {"(viii)", 0, q(0), 0, "0", "x=0", "x=0"},
  };
  return rows;
}

const std::vector<NonsubRow>& nonsub_rows() {
  using T = TangencyShape;
  static const std::vector<NonsubRow> rows = {
      {"1.i.1", "D1", {q(1), q(2)}, 1, 1, "submanifold", T::point, "(-1,1/l2,-1/(l2*(1+l2)))",
       {q(-1), q(1, 2), q(-1, 6)}, {}, 2},
      {"1.i.2", "D1", {q(1), q(2)}, 1, 0, "submanifold", T::point, "(0,1/l2,0)", {q(0), q(1, 2), q(0)}, {}, 2},
      {"1.i.3", "D1", {q(1), q(2)}, 0, 0, "submanifold", T::point, "(0,0,0)", {q(0), q(0), q(0)}, {}, 2},
      {"1.ii.1", "D1", {q(1), q(-1)}, 1, 1, "submanifold", T::none, "no tangency points", {}, {}, 3},
      {"1.ii.2", "D1", {q(1), q(-1)}, 1, 0, "not submanifold", T::line, "(0,1,z)", {q(0), q(1), q(0)},
       {q(0), q(0), q(1)}, 4},
      {"1.iii.1", "D1", {q(1), q(0)}, 1, 1, "submanifold", T::none, "no tangency points", {}, {}, 2},
      {"1.iii.2", "D1", {q(1), q(0)}, 0, 1, "submanifold", T::line, "(-1,y,-y)", {q(-1), q(0), q(0)},
       {q(0), q(1), q(-1)}, 2},
      {"1.iii.3", "D1", {q(1), q(0)}, 1, 0, "submanifold", T::none, "no tangency points", {}, {}, 2},
      {"1.iii.4", "D1", {q(1), q(0)}, 0, 0, "submanifold", T::line, "x=z=0", {q(0), q(0), q(0)},
       {q(0), q(1), q(0)}, 2},
      {"1.iv.1", "D1", {q(0), q(0)}, 0, 1, "Lie subgroup", T::none, "no tangency points", {}, {}, 2},
      {"2.i.1", "D2", {q(1)}, 1, 1, "submanifold", T::point, "(-2,1,-3/4)", {q(-2), q(1), q(-3, 4)}, {}, 2},
      {"2.i.2", "D2", {q(1)}, 0, 1, "submanifold", T::point, "(-1,0,0)", {q(-1), q(0), q(0)}, {}, 2},
      {"2.i.3", "D2", {q(1)}, 1, 0, "submanifold", T::point, "(-1,1,-1/4)", {q(-1), q(1), q(-1, 4)}, {}, 2},
      {"2.i.4", "D2", {q(1)}, 0, 0, "submanifold", T::point, "(0,0,0)", {q(0), q(0), q(0)}, {}, 2},
      {"2.ii.1", "D2", {q(0)}, 1, 1, "submanifold", T::none, "no tangency points", {}, {}, 2},
      {"2.ii.2", "D2", {q(0)}, 0, 1, "submanifold", T::none, "no tangency points", {}, {}, 3},
      {"2.ii.3", "D2", {q(0)}, 1, 0, "submanifold", T::none, "no tangency points", {}, {}, 2},
      {"2.ii.4", "D2", {q(0)}, 0, 0, "Lie subgroup", T::all_of_Z, "tangency point set is equal to Z", {}, {}, 2},
      {"3.i.1", "D3", {q(1), q(1)}, 0, 1, "submanifold", T::single_unspecified, "one tangency point", {}, {}, 2},
      {"3.i.2", "D3", {q(1), q(1)}, 0, 0, "submanifold", T::point, "(0,0,0)", {q(0), q(0), q(0)}, {}, 2},
      {"3.ii.1", "D3", {q(0), q(1)}, 0, 1, "submanifold", T::none, "no tangency points", {}, {}, 2},
      {"3.ii.2", "D3", {q(0), q(1)}, 0, 0, "Lie subgroup", T::line, "the line x=y=0", {q(0), q(0), q(0)},
       {q(0), q(0), q(1)}, 1},
  };
  return rows;
}

const SubalgebraRow* find_subalgebra_row(std::string_view label) {
  for (const auto& r : subalgebra_rows())
    if (r.label == label) return &r;
  return nullptr;
}

const NonsubRow* find_nonsub_row(std::string_view label) {
  for (const auto& r : nonsub_rows())
    if (r.label == label) return &r;
  return nullptr;
}

ExactMat subalgebra_derivation(const Surd& b, const Surd& d, const Surd& f) {
  ExactMat D(3, 3);
  D(0, 1) = b;
  D(1, 0) = Surd(1);
  D(1, 1) = d;
  D(2, 1) = f;
  D(2, 2) = d;
  return D;
}

ExactMat nonsub_derivation(std::string_view block, const std::vector<Surd>& p, const Surd& e, const Surd& f) {
  ExactMat D(3, 3);
  if (block == "D1") {
    if (p.size() != 2) throw std::invalid_argument("D1 takes (l1, l2)");
    D(0, 0) = p[0];
    D(1, 1) = p[1];
  } else if (block == "D2") {
    if (p.size() != 1) throw std::invalid_argument("D2 takes (l1)");
    D(0, 0) = p[0];
    D(0, 1) = Surd(1);
    D(1, 1) = p[0];
  } else if (block == "D3") {
    if (p.size() != 2) throw std::invalid_argument("D3 takes (a, b)");
    D(0, 0) = p[0];
    D(0, 1) = -p[1];
    D(1, 0) = p[1];
    D(1, 1) = p[0];
  } else {
    throw std::invalid_argument("unknown block '" + std::string(block) + "'");
  }
  D(2, 0) = e;
  D(2, 1) = f;
  D(2, 2) = D(0, 0) + D(1, 1);
  return D;
}

ExactMat nonsub_derivation(const NonsubRow& row, const std::vector<Surd>& parameters) {
  return nonsub_derivation(row.block, parameters.empty() ? row.parameters : parameters, Surd(row.e), Surd(row.f));
}

}  // namespace arskit
