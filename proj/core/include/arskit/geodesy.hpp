#pragma once

#include "arskit/metric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arskit {

/// A point of T*G: coordinates of g and a covector dual to the coordinate fields.
struct CotangentState {
  GroupPoint point;
  Vec covector;
};

struct GeodesicSample {
  double t = 0.0;
  CotangentState state;
  double H = 0.0;
};

struct GeodesicTrace {
  std::vector<GeodesicSample> samples;
  double step = 0.0;
  std::string method;
  /// Set when an aff2 trajectory left the chart x > 0; samples stop before the exit.
  bool truncated = false;
};

enum class Partials { symbolic, finite_difference };

/**
 * @brief Normal Hamiltonian H = 1/2 <l, X(g)>^2 + 1/2 sum_i <l, Y_i(g)>^2 with polynomial partials.
 */
class NormalHamiltonian {
 public:
  explicit NormalHamiltonian(const ARSSpec& spec);

  GroupTag group() const { return group_; }
  double value(const Vec& g, const Vec& l) const;
  /// dH/dg and dH/dl.
  void gradient(const Vec& g, const Vec& l, Vec& dg, Vec& dl, Partials mode = Partials::symbolic,
                double fd_step = 1e-6) const;

 private:
  GroupTag group_;
  int n_;
  // fields_[k][i]: i-th coordinate of the k-th field (linear field first).
  std::vector<std::vector<Polynomial<double>>> fields_;
  // dfields_[k][i][j] = d fields_[k][i] / d x_j.
  std::vector<std::vector<std::vector<Polynomial<double>>>> dfields_;
};

double hamiltonian(const ARSSpec& spec, const CotangentState& state);

/// Classical RK4 on the canonical equations, steps + 1 samples over [0, T].
GeodesicTrace geodesic_shoot(const ARSSpec& spec, const CotangentState& start, double T, int steps,
                             Partials mode = Partials::symbolic);

enum class TangencyKind { empty, points, curves, plane, all_of_Z };
std::string_view to_string(TangencyKind kind);

/// s -> base + s * direction + s^2 * quadratic.
struct TangencyCurve {
  Vec base;
  Vec direction;
  Vec quadratic;
  std::string text;
  Vec at(double s) const { return base + s * direction + s * s * quadratic; }
  bool is_line() const { return quadratic.isZero(0.0); }
};

/**
 * @brief Points of Z where the distribution is tangent to Z.
 *
 * points: isolated points. curves: one-dimensional pieces (vertical lines (x0, y0, s) included).
 * plane: the vertical plane over curves[0]. all_of_Z: every point of Z.
 */
struct TangencyReport {
  TangencyKind kind = TangencyKind::empty;
  bool exact = true;
  std::vector<Vec> points;
  std::vector<std::string> point_text;
  std::vector<TangencyCurve> curves;
  std::string str() const;
};

/// Empty for aff2 and for a subalgebra distribution.
TangencyReport tangency_points(const ARSSpec& spec);

/// Largest residual of the three defining equations at g.
double tangency_residual(const ARSSpec& spec, const Vec& g);

struct Box {
  Vec lo;
  Vec hi;
  static Box cube(int n, double lo, double hi);
  bool empty() const;
};

/// Box clamped to the chart of the group (x >= 1e-6 for aff2).
Box clamp_to_chart(GroupTag group, const Box& box);

/// Component count of G - Z in the box at one resolution.
int count_components(const ARSSpec& spec, const Box& box, int resolution);

struct ComponentCount {
  int count = 0;
  int resolution = 0;
  bool stable = false;
  /// (resolution, count) pairs in the order computed.
  std::vector<std::pair<int, int>> history;
  std::string caveat = "box-local";
};

/// Counts at resolution and 2*resolution, then 4*resolution if those differ.
ComponentCount connected_components(const ARSSpec& spec, const Box& box, int resolution);

/// Points near Z, one per boundary cell, refined by a Newton step. A heis3 slice z = c samples the plane.
std::vector<Vec> locus_sample(const ARSSpec& spec, const Box& box, int resolution,
                              std::optional<double> slice_z = std::nullopt);

}  // namespace arskit
