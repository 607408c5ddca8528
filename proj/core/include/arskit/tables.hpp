#pragma once

#include "arskit/exact_matrix.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace arskit {

/// Reference row of the subalgebra classification (frame {X, Z}, D = [[0,b,0],[1,d,0],[0,f,d]]).
struct SubalgebraRow {
  std::string label;
  int d = 0;
  /// Representative b value for the row (rows (i) and (ii) are families).
  Surd b;
  int f = 0;
  std::string b_condition;
  std::string z_equation;
  std::string zx;
};

enum class TangencyShape { none, point, line, all_of_Z, single_unspecified };

/// Reference row of the non-subalgebra classification (frame {X, Y}).
struct NonsubRow {
  std::string label;
  /// "D1" (diagonal), "D2" (Jordan) or "D3" (rotation-scaling).
  std::string block;
  /// Default parameters: (l1, l2) for D1, (l1) for D2, (a, b) for D3.
  std::vector<Surd> parameters;
  int e = 0;
  int f = 0;
  std::string locus_kind;
  TangencyShape tangency = TangencyShape::none;
  /// Listed tangency entry as text.
  std::string tangency_text;
  /// Point or line data where the table gives coordinates:
  /// a point, or a line base + s * direction.
  std::vector<Surd> tangency_base;
  std::vector<Surd> tangency_direction;
  int components = 0;
};

const std::vector<SubalgebraRow>& subalgebra_rows();
const std::vector<NonsubRow>& nonsub_rows();
/// nullptr if absent.
const SubalgebraRow* find_subalgebra_row(std::string_view label);
const NonsubRow* find_nonsub_row(std::string_view label);

/// [[0,b,0],[1,d,0],[0,f,d]].
ExactMat subalgebra_derivation(const Surd& b, const Surd& d, const Surd& f);
/// Derivation of a non-subalgebra row, with the row's parameters replaced when given.
ExactMat nonsub_derivation(const NonsubRow& row, const std::vector<Surd>& parameters = {});
ExactMat nonsub_derivation(std::string_view block, const std::vector<Surd>& parameters, const Surd& e, const Surd& f);

}  // namespace arskit
