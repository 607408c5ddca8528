#include "arskit/geodesy.hpp"

#include "arskit/classify.hpp"
#include "scalar_traits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace arskit {

using detail::Num;

// ---------------------------------------------------------------------------
// Hamiltonian

NormalHamiltonian::NormalHamiltonian(const ARSSpec& spec) : group_(spec.group()), n_(spec.dim()) {
  std::vector<std::vector<ExactPoly>> exact;
  exact.push_back(linear_field_polys(group_, spec.derivation_exact()));
  for (const auto& Y : spec.frame_exact()) exact.push_back(invariant_field_polys(group_, Y));
  for (const auto& field : exact) {
    std::vector<Polynomial<double>> comps;
    std::vector<std::vector<Polynomial<double>>> dcomps;
    for (const auto& p : field) {
      comps.push_back(p.to_double_poly());
      std::vector<Polynomial<double>> row;
      for (int j = 0; j < n_; ++j) row.push_back(comps.back().derivative(j));
      dcomps.push_back(std::move(row));
    }
    fields_.push_back(std::move(comps));
    dfields_.push_back(std::move(dcomps));
  }
}

double NormalHamiltonian::value(const Vec& g, const Vec& l) const {
  double h = 0.0;
  for (const auto& field : fields_) {
    double pair = 0.0;
    for (int i = 0; i < n_; ++i) pair += l[i] * field[static_cast<size_t>(i)].eval(g);
    h += pair * pair;
  }
  return 0.5 * h;
}

void NormalHamiltonian::gradient(const Vec& g, const Vec& l, Vec& dg, Vec& dl, Partials mode,
                                 double fd_step) const {
  dg = Vec::Zero(n_);
  dl = Vec::Zero(n_);
  if (mode == Partials::finite_difference) {
    for (int j = 0; j < n_; ++j) {
      Vec gp = g, gm = g, lp = l, lm = l;
      gp[j] += fd_step;
      gm[j] -= fd_step;
      lp[j] += fd_step;
      lm[j] -= fd_step;
      dg[j] = (value(gp, l) - value(gm, l)) / (2.0 * fd_step);
      dl[j] = (value(g, lp) - value(g, lm)) / (2.0 * fd_step);
    }
    return;
  }
  for (size_t k = 0; k < fields_.size(); ++k) {
    Vec F(n_);
    for (int i = 0; i < n_; ++i) F[i] = fields_[k][static_cast<size_t>(i)].eval(g);
    const double pair = l.dot(F);
    dl += pair * F;
    for (int j = 0; j < n_; ++j) {
      double d = 0.0;
      for (int i = 0; i < n_; ++i) d += l[i] * dfields_[k][static_cast<size_t>(i)][static_cast<size_t>(j)].eval(g);
      dg[j] += pair * d;
    }
  }
}

double hamiltonian(const ARSSpec& spec, const CotangentState& state) {
  if (state.point.group != spec.group()) throw std::invalid_argument("point and structure belong to different groups");
  return NormalHamiltonian(spec).value(state.point.coords, state.covector);
}

GeodesicTrace geodesic_shoot(const ARSSpec& spec, const CotangentState& start, double T, int steps,
                             Partials mode) {
  if (steps < 1) throw std::invalid_argument("steps must be at least 1");
  if (start.point.group != spec.group()) throw std::invalid_argument("point and structure belong to different groups");
  const int n = spec.dim();
  if (start.point.coords.size() != n || start.covector.size() != n)
    throw std::invalid_argument("state has the wrong dimension");
  const NormalHamiltonian H(spec);
  GeodesicTrace trace;
  trace.step = T / steps;
  trace.method = mode == Partials::symbolic ? "rk4/symbolic" : "rk4/finite-difference";

  auto rhs = [&](const Eigen::VectorXd& y) {
    Vec dg, dl;
    H.gradient(y.head(n), y.tail(n), dg, dl, mode);
    Eigen::VectorXd out(2 * n);
    out.head(n) = dl;
    out.tail(n) = -dg;
    return out;
  };
  Eigen::VectorXd y(2 * n);
  y.head(n) = start.point.coords;
  y.tail(n) = start.covector;
  const double h = trace.step;
  auto record = [&](int i) {
    GeodesicSample s;
    s.t = h * i;
    s.state = CotangentState{GroupPoint{spec.group(), y.head(n)}, y.tail(n)};
    s.H = H.value(y.head(n), y.tail(n));
    trace.samples.push_back(std::move(s));
  };
  record(0);
  for (int i = 1; i <= steps; ++i) {
    const Eigen::VectorXd k1 = rhs(y);
    const Eigen::VectorXd k2 = rhs(y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(y + h * k3);
    const Eigen::VectorXd next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (spec.group() == GroupTag::aff2 && !(next[0] > 0.0)) {
      trace.truncated = true;
      break;
    }
    y = next;
    record(i);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Tangency

std::string_view to_string(TangencyKind kind) {
  switch (kind) {
    case TangencyKind::empty: return "empty";
    case TangencyKind::points: return "points";
    case TangencyKind::curves: return "curves";
    case TangencyKind::plane: return "plane";
    case TangencyKind::all_of_Z: return "all_of_Z";
  }
  return "?";
}

std::string TangencyReport::str() const {
  std::string out;
  switch (kind) {
    case TangencyKind::empty:
      return "no tangency points";
    case TangencyKind::all_of_Z:
      return "tangency point set is equal to Z";
    case TangencyKind::points:
      for (size_t i = 0; i < point_text.size(); ++i) out += (i ? "; " : "") + point_text[i];
      return out;
    case TangencyKind::curves:
      for (size_t i = 0; i < curves.size(); ++i) out += (i ? "; " : "") + curves[i].text;
      return out;
    case TangencyKind::plane:
      return "plane over " + curves.front().text;
  }
  return out;
}

namespace {

std::string num_text(const Surd& v) { return v.str(); }
std::string num_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}
double num_double(const Surd& v) { return v.to_double(); }
double num_double(double v) { return v; }

// Data of the tangency system: L (x, y)^T = r from the two derivative conditions,
// P = p0(x, y) + k z with p0 = c[0] + c[1] x + c[2] y + c[3] x^2 + c[4] x y + c[5] y^2.
template <class T>
struct TangencySystem {
  T L[2][2];
  T r[2];
  T c[6];
  T k;
};

template <class T>
TangencySystem<T> tangency_system(const Polynomial<T>& P, const std::vector<std::vector<Polynomial<T>>>& frame) {
  if (P.degree() > 2 || P.degree_in(2) > 1) throw std::logic_error("singular polynomial is not of the expected shape");
  TangencySystem<T> s;
  s.k = P.coefficient({0, 0, 1});
  if (!P.derivative(2).derivative(0).is_zero() || !P.derivative(2).derivative(1).is_zero())
    throw std::logic_error("singular polynomial mixes z with x, y");
  s.c[0] = P.coefficient({0, 0, 0});
  s.c[1] = P.coefficient({1, 0, 0});
  s.c[2] = P.coefficient({0, 1, 0});
  s.c[3] = P.coefficient({2, 0, 0});
  s.c[4] = P.coefficient({1, 1, 0});
  s.c[5] = P.coefficient({0, 2, 0});
  const Polynomial<T> grad[3] = {P.derivative(0), P.derivative(1), P.derivative(2)};
  for (int i = 0; i < 2; ++i) {
    Polynomial<T> q(3);
    for (int j = 0; j < 3; ++j) q += grad[j] * frame[static_cast<size_t>(i)][static_cast<size_t>(j)];
    if (q.degree() > 1 || q.degree_in(2) > 0) throw std::logic_error("tangency condition is not linear in (x, y)");
    s.L[i][0] = q.coefficient({1, 0, 0});
    s.L[i][1] = q.coefficient({0, 1, 0});
    s.r[i] = -q.coefficient({0, 0, 0});
  }
  return s;
}

template <class T>
T p0_at(const TangencySystem<T>& s, const T& x, const T& y) {
  return s.c[0] + s.c[1] * x + s.c[2] * y + s.c[3] * x * x + s.c[4] * x * y + s.c[5] * y * y;
}

template <class T>
Vec to_vec(const T& a, const T& b, const T& c) {
  Vec v(3);
  v << num_double(a), num_double(b), num_double(c);
  return v;
}

template <class T>
std::string poly_text(const T& a0, const T& a1, const T& a2, const char* var) {
  Polynomial<T> p(1);
  p.add_term({0, 0, 0}, a0);
  p.add_term({1, 0, 0}, a1);
  p.add_term({2, 0, 0}, a2);
  return p.str({var, "", ""});
}

template <class T>
TangencyCurve make_curve(const T (&b)[3], const T (&d)[3], const T (&q)[3], const char* var) {
  TangencyCurve c;
  c.base = to_vec(b[0], b[1], b[2]);
  c.direction = to_vec(d[0], d[1], d[2]);
  c.quadratic = to_vec(q[0], q[1], q[2]);
  c.text = "(" + poly_text(b[0], d[0], q[0], var) + "," + poly_text(b[1], d[1], q[1], var) + "," +
           poly_text(b[2], d[2], q[2], var) + ")";
  return c;
}

template <class T>
TangencyCurve vertical_line(const T& x, const T& y) {
  const T b[3] = {x, y, T(0)};
  const T d[3] = {T(0), T(0), T(1)};
  const T q[3] = {T(0), T(0), T(0)};
  return make_curve(b, d, q, "z");
}

template <class T>
TangencyReport solve_tangency(const TangencySystem<T>& s) {
  using detail::zero;
  TangencyReport rep;
  rep.exact = Num<T>::exact;
  const T det = s.L[0][0] * s.L[1][1] - s.L[0][1] * s.L[1][0];
  if (!zero(det)) {
    const T x = (s.r[0] * s.L[1][1] - s.L[0][1] * s.r[1]) / det;
    const T y = (s.L[0][0] * s.r[1] - s.r[0] * s.L[1][0]) / det;
    const T p = p0_at(s, x, y);
    if (!zero(s.k)) {
      const T z = -p / s.k;
      rep.kind = TangencyKind::points;
      rep.points.push_back(to_vec(x, y, z));
      rep.point_text.push_back("(" + num_text(x) + "," + num_text(y) + "," + num_text(z) + ")");
    } else if (zero(p)) {
      rep.kind = TangencyKind::curves;
      rep.curves.push_back(vertical_line(x, y));
    }
    return rep;
  }
  int row = -1;
  for (int i = 0; i < 2 && row < 0; ++i)
    if (!zero(s.L[i][0]) || !zero(s.L[i][1])) row = i;
  if (row < 0) {
    if (zero(s.r[0]) && zero(s.r[1])) rep.kind = TangencyKind::all_of_Z;
    return rep;
  }
  const T l1 = s.L[row][0], l2 = s.L[row][1], rho = s.r[row];
  const int other = 1 - row;
  // Rank one: the other equation must be a multiple of this one.
  if (!zero(s.L[other][0] * rho - s.r[other] * l1) || !zero(s.L[other][1] * rho - s.r[other] * l2)) return rep;
  T dx = -l2, dy = l1;
  const T lead = !zero(dx) ? dx : dy;
  dx = dx / lead;
  dy = dy / lead;
  const T bx = !zero(l1) ? rho / l1 : T(0);
  const T by = !zero(l1) ? T(0) : rho / l2;
  const T A2 = s.c[3] * dx * dx + s.c[4] * dx * dy + s.c[5] * dy * dy;
  const T A1 = s.c[1] * dx + s.c[2] * dy + T(2) * s.c[3] * bx * dx + s.c[4] * (bx * dy + by * dx) +
               T(2) * s.c[5] * by * dy;
  const T A0 = p0_at(s, bx, by);
  if (!zero(s.k)) {
    const T b[3] = {bx, by, -A0 / s.k};
    const T d[3] = {dx, dy, -A1 / s.k};
    const T q[3] = {T(0), T(0), -A2 / s.k};
    rep.kind = TangencyKind::curves;
    rep.curves.push_back(make_curve(b, d, q, "s"));
    return rep;
  }
  if (zero(A0) && zero(A1) && zero(A2)) {
    // p0 vanishes on the line l1 x + l2 y = rho; Z contains the vertical plane over it.
    const T b[3] = {bx, by, T(0)};
    const T d[3] = {dx, dy, T(0)};
    const T q[3] = {T(0), T(0), T(0)};
    rep.curves.push_back(make_curve(b, d, q, "s"));
    const bool flat = zero(s.c[3]) && zero(s.c[4]) && zero(s.c[5]);
    bool square = false;
    if (!flat) {
      // p0 = mu (l1 x + l2 y - rho)^2 means Z is exactly that plane.
      const T mu = !zero(l1) ? s.c[3] / (l1 * l1) : s.c[5] / (l2 * l2);
      square = zero(s.c[3] - mu * l1 * l1) && zero(s.c[4] - T(2) * mu * l1 * l2) && zero(s.c[5] - mu * l2 * l2) &&
               zero(s.c[1] + T(2) * mu * l1 * rho) && zero(s.c[2] + T(2) * mu * l2 * rho) &&
               zero(s.c[0] - mu * rho * rho);
    }
    rep.kind = flat || square ? TangencyKind::all_of_Z : TangencyKind::plane;
    return rep;
  }
  std::vector<T> roots;
  if (!zero(A2)) {
    const T disc = A1 * A1 - T(4) * A2 * A0;
    if (zero(disc)) {
      roots.push_back(-A1 / (T(2) * A2));
    } else if (detail::sign(disc) > 0) {
      const T sq = Num<T>::sqrt(disc);
      roots.push_back((-A1 - sq) / (T(2) * A2));
      roots.push_back((-A1 + sq) / (T(2) * A2));
    }
  } else if (!zero(A1)) {
    roots.push_back(-A0 / A1);
  }
  for (const T& t : roots) rep.curves.push_back(vertical_line(bx + t * dx, by + t * dy));
  if (!rep.curves.empty()) rep.kind = TangencyKind::curves;
  return rep;
}

std::vector<std::vector<ExactPoly>> frame_polys(const ARSSpec& spec) {
  std::vector<std::vector<ExactPoly>> out;
  for (const auto& Y : spec.frame_exact()) out.push_back(invariant_field_polys(spec.group(), Y));
  return out;
}

}  // namespace

TangencyReport tangency_points(const ARSSpec& spec) {
  if (spec.group() != GroupTag::heis3 || !spec.validity().valid() || heis_delta_is_subalgebra(spec)) return {};
  const auto frame = frame_polys(spec);
  try {
    return solve_tangency(tangency_system(spec.singular_polynomial(), frame));
  } catch (const std::domain_error&) {
    std::vector<std::vector<Polynomial<double>>> fd;
    for (const auto& f : frame) {
      fd.emplace_back();
      for (const auto& p : f) fd.back().push_back(p.to_double_poly());
    }
    return solve_tangency(tangency_system(spec.singular_polynomial_double(), fd));
  }
}

double tangency_residual(const ARSSpec& spec, const Vec& g) {
  const auto& P = spec.singular_polynomial_double();
  double res = std::abs(P.eval(g));
  for (const auto& f : frame_polys(spec)) {
    double dot = 0.0;
    for (int j = 0; j < spec.dim(); ++j) dot += P.derivative(j).eval(g) * f[static_cast<size_t>(j)].eval(g);
    res = std::max(res, std::abs(dot));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Grids

Box Box::cube(int n, double lo, double hi) { return Box{Vec::Constant(n, lo), Vec::Constant(n, hi)}; }

bool Box::empty() const {
  if (lo.size() == 0 || lo.size() != hi.size()) return true;
  for (int i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i])) return true;
  return false;
}

Box clamp_to_chart(GroupTag group, const Box& box) {
  Box out = box;
  if (group == GroupTag::aff2 && out.lo.size() > 0) out.lo[0] = std::max(out.lo[0], 1e-6);
  return out;
}

namespace {

// Regular grid of res^n cells over a box; nodes are (res+1)^n.
struct Grid {
  int n = 0;
  int res = 0;
  Vec lo, h;

  long nodes() const { return pow_of(res + 1); }
  long cells() const { return pow_of(res); }
  long pow_of(long m) const {
    long p = 1;
    for (int i = 0; i < n; ++i) p *= m;
    return p;
  }
  void unpack(long idx, long m, int* ix) const {
    for (int i = 0; i < n; ++i) {
      ix[i] = static_cast<int>(idx % m);
      idx /= m;
    }
  }
  long node_index(const int* ix) const {
    long idx = 0;
    for (int i = n - 1; i >= 0; --i) idx = idx * (res + 1) + ix[i];
    return idx;
  }
  Vec node(const int* ix) const {
    Vec p(n);
    for (int i = 0; i < n; ++i) p[i] = lo[i] + h[i] * ix[i];
    return p;
  }
  Vec center(const int* ix) const {
    Vec p(n);
    for (int i = 0; i < n; ++i) p[i] = lo[i] + h[i] * (ix[i] + 0.5);
    return p;
  }
};

Grid make_grid(const Box& box, int res) {
  Grid g;
  g.n = static_cast<int>(box.lo.size());
  g.res = res;
  g.lo = box.lo;
  g.h = (box.hi - box.lo) / res;
  return g;
}

struct LocusField {
  Polynomial<double> P;
  std::vector<Polynomial<double>> grad;
  Mat hess;  // constant when P has degree <= 2
  bool quadratic = false;
  double scale = 1.0;

  LocusField(Polynomial<double> p, int n) : P(std::move(p)) {
    for (int i = 0; i < n; ++i) grad.push_back(P.derivative(i));
    quadratic = P.degree() <= 2;
    hess = Mat::Zero(n, n);
    if (quadratic) {
      const Vec zero = Vec::Zero(3);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) hess(i, j) = grad[static_cast<size_t>(i)].derivative(j).eval(zero);
    }
    for (const auto& [e, c] : P.terms()) scale = std::max(scale, std::abs(c));
  }
  Vec gradient(const Vec& x) const {
    Vec g(static_cast<int>(grad.size()));
    for (int i = 0; i < g.size(); ++i) g[i] = grad[static_cast<size_t>(i)].eval(x);
    return g;
  }
  // Exact enclosure of P over the cell with center c and half-widths r (valid for quadratics).
  bool may_vanish(const Vec& c, const Vec& r) const {
    const double v = std::abs(P.eval(c));
    const Vec g = gradient(c);
    double spread = g.cwiseAbs().dot(r);
    spread += 0.5 * r.dot(hess.cwiseAbs() * r);
    return v <= spread * (1.0 + 1e-12);
  }
};

LocusField locus_field(const ARSSpec& spec, std::optional<double> slice_z) {
  const auto& P = spec.singular_polynomial_double();
  if (!slice_z || spec.group() != GroupTag::heis3) return LocusField(P, spec.dim());
  Polynomial<double> q(2);
  for (const auto& [e, c] : P.terms()) q.add_term({e[0], e[1], 0}, c * std::pow(*slice_z, e[2]));
  return LocusField(q, 2);
}

class UnionFind {
 public:
  explicit UnionFind(long n) : parent_(static_cast<size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int32_t find(int32_t a) {
    while (parent_[static_cast<size_t>(a)] != a) {
      parent_[static_cast<size_t>(a)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(a)])];
      a = parent_[static_cast<size_t>(a)];
    }
    return a;
  }
  void unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int32_t> parent_;
};

// Per-cell flag: 1 if the cell may meet Z. Corner signs are compared first; quadratics also use
// the exact enclosure so that even-order zeros between nodes are caught.
std::vector<uint8_t> boundary_cells(const LocusField& F, const Grid& grid) {
  std::vector<int8_t> sgn(static_cast<size_t>(grid.nodes()));
  int ix[3] = {0, 0, 0};
  for (long i = 0; i < grid.nodes(); ++i) {
    grid.unpack(i, grid.res + 1, ix);
    const Vec p = grid.node(ix);
    const double v = F.P.eval(p);
    const double m = p.cwiseAbs().maxCoeff();
    const double tol = 1e-12 * F.scale * std::max(1.0, m * m);
    sgn[static_cast<size_t>(i)] = static_cast<int8_t>(std::abs(v) <= tol ? 0 : (v > 0 ? 1 : -1));
  }
  const Vec half = 0.5 * grid.h;
  std::vector<uint8_t> flag(static_cast<size_t>(grid.cells()));
  const int corners = 1 << grid.n;
  for (long c = 0; c < grid.cells(); ++c) {
    grid.unpack(c, grid.res, ix);
    int lo = 1, hi = -1;
    for (int k = 0; k < corners; ++k) {
      int jx[3];
      for (int d = 0; d < grid.n; ++d) jx[d] = ix[d] + ((k >> d) & 1);
      const int s = sgn[static_cast<size_t>(grid.node_index(jx))];
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    bool b = lo <= 0 && hi >= 0;
    if (!b && F.quadratic) b = F.may_vanish(grid.center(ix), half);
    flag[static_cast<size_t>(c)] = b ? 1 : 0;
  }
  return flag;
}

int count_on_grid(const LocusField& F, const Grid& grid) {
  const auto flag = boundary_cells(F, grid);
  UnionFind uf(grid.cells());
  int ix[3] = {0, 0, 0};
  long stride[3] = {1, grid.res, static_cast<long>(grid.res) * grid.res};
  for (long c = 0; c < grid.cells(); ++c) {
    if (flag[static_cast<size_t>(c)]) continue;
    grid.unpack(c, grid.res, ix);
    for (int d = 0; d < grid.n; ++d) {
      if (ix[d] == 0) continue;
      const long nb = c - stride[d];
      if (!flag[static_cast<size_t>(nb)]) uf.unite(static_cast<int32_t>(c), static_cast<int32_t>(nb));
    }
  }
  int count = 0;
  for (long c = 0; c < grid.cells(); ++c)
    if (!flag[static_cast<size_t>(c)] && uf.find(static_cast<int32_t>(c)) == c) ++count;
  return count;
}

}  // namespace

int count_components(const ARSSpec& spec, const Box& box, int resolution) {
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  if (box.lo.size() != spec.dim() || box.hi.size() != spec.dim())
    throw std::invalid_argument("box dimension does not match the group");
  const Box b = clamp_to_chart(spec.group(), box);
  if (b.empty()) return 0;
  return count_on_grid(locus_field(spec, std::nullopt), make_grid(b, resolution));
}

ComponentCount connected_components(const ARSSpec& spec, const Box& box, int resolution) {
  if (resolution < 16) throw std::invalid_argument("resolution must be at least 16");
  ComponentCount out;
  int res = resolution;
  out.history.emplace_back(res, count_components(spec, box, res));
  for (int round = 0; round < 2; ++round) {
    res *= 2;
    out.history.emplace_back(res, count_components(spec, box, res));
    const auto& a = out.history[out.history.size() - 2];
    const auto& b = out.history.back();
    if (a.second == b.second) {
      out.stable = true;
      break;
    }
  }
  out.count = out.history.back().second;
  out.resolution = out.history.back().first;
  return out;
}

std::vector<Vec> locus_sample(const ARSSpec& spec, const Box& box, int resolution, std::optional<double> slice_z) {
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  const bool sliced = slice_z && spec.group() == GroupTag::heis3;
  const int n = sliced ? 2 : spec.dim();
  if (box.lo.size() < n || box.hi.size() < n) throw std::invalid_argument("box dimension does not match the group");
  Box b{box.lo.head(n), box.hi.head(n)};
  b = clamp_to_chart(spec.group(), b);
  std::vector<Vec> out;
  if (b.empty()) return out;
  const LocusField F = locus_field(spec, slice_z);
  const Grid grid = make_grid(b, resolution);
  const auto flag = boundary_cells(F, grid);
  const double diam = grid.h.norm();
  int ix[3] = {0, 0, 0};
  for (long c = 0; c < grid.cells(); ++c) {
    if (!flag[static_cast<size_t>(c)]) continue;
    grid.unpack(c, grid.res, ix);
    Vec p = grid.center(ix);
    const Vec g = F.gradient(p);
    const double g2 = g.squaredNorm();
    if (g2 > 0.0) {
      const Vec q = p - (F.P.eval(p) / g2) * g;
      if ((q - p).norm() <= diam) p = q;
    }
    const double bound = diam * F.gradient(p).norm() + diam * diam * std::max(1.0, F.hess.norm());
    if (std::abs(F.P.eval(p)) > bound) continue;
    if (sliced) {
      Vec full(3);
      full << p[0], p[1], *slice_z;
      out.push_back(full);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace arskit
