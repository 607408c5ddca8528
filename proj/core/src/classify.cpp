#include "arskit/classify.hpp"

#include "arskit/geodesy.hpp"
#include "arskit/tables.hpp"
#include "scalar_traits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace arskit {

// ---------------------------------------------------------------------------
// Levels, steps and traces

std::string_view to_string(Level level) {
  switch (level) {
    case Level::isometry:
      return "isometry";
    case Level::rescaled:
      return "rescaled";
    case Level::deformed:
      return "deformed";
  }
  return "?";
}

Level parse_level(std::string_view text) {
  if (text == "isometry") return Level::isometry;
  if (text == "rescaled") return Level::rescaled;
  if (text == "deformed") return Level::deformed;
  throw std::invalid_argument("unknown level '" + std::string(text) + "'");
}

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::automorphism:
      return "automorphism";
    case StepKind::rescaling:
      return "rescaling";
    case StepKind::sign_flip:
      return "sign-flip";
    case StepKind::frame_change:
      return "frame-change";
  }
  return "?";
}

bool NormalizationStep::exact() const {
  switch (kind) {
    case StepKind::automorphism:
    case StepKind::frame_change:
      return matrix.has_value();
    case StepKind::rescaling:
      return scalar.has_value();
    case StepKind::sign_flip:
      return true;
  }
  return false;
}

NormalizationStep NormalizationStep::automorphism(const ExactMat& P, std::string note) {
  NormalizationStep s;
  s.kind = StepKind::automorphism;
  s.matrix = P;
  s.matrix_approx = to_double(P);
  s.note = std::move(note);
  return s;
}

NormalizationStep NormalizationStep::automorphism_approx(const Mat& P, std::string note) {
  NormalizationStep s;
  s.kind = StepKind::automorphism;
  s.matrix_approx = P;
  s.note = std::move(note);
  return s;
}

NormalizationStep NormalizationStep::rescaling(const Surd& lambda, std::string note) {
  if (lambda.sign() <= 0) throw std::invalid_argument("rescaling factor must be positive");
  NormalizationStep s;
  s.kind = StepKind::rescaling;
  s.scalar = lambda;
  s.scalar_approx = lambda.to_double();
  s.note = std::move(note);
  return s;
}

NormalizationStep NormalizationStep::rescaling_approx(double lambda, std::string note) {
  if (!(lambda > 0.0)) throw std::invalid_argument("rescaling factor must be positive");
  NormalizationStep s;
  s.kind = StepKind::rescaling;
  s.scalar_approx = lambda;
  s.note = std::move(note);
  return s;
}

NormalizationStep NormalizationStep::sign_flip(int target, std::string note) {
  NormalizationStep s;
  s.kind = StepKind::sign_flip;
  s.flip_target = target;
  s.note = std::move(note);
  return s;
}

NormalizationStep NormalizationStep::frame_change(const ExactMat& M, std::string note) {
  NormalizationStep s;
  s.kind = StepKind::frame_change;
  s.matrix = M;
  s.matrix_approx = to_double(M);
  s.note = std::move(note);
  return s;
}

NormalizationStep NormalizationStep::frame_change_approx(const Mat& M, std::string note) {
  NormalizationStep s;
  s.kind = StepKind::frame_change;
  s.matrix_approx = M;
  s.note = std::move(note);
  return s;
}

bool NormalizationTrace::exact() const {
  return std::all_of(steps.begin(), steps.end(), [](const auto& s) { return s.exact(); });
}

ArsData ars_data(const ARSSpec& spec) { return ArsData{spec.group(), spec.derivation_exact(), spec.frame_exact()}; }

ArsDataApprox to_approx(const ArsData& data) {
  ArsDataApprox a{data.group, to_double(data.D), {}};
  for (const auto& Y : data.frame) a.frame.push_back(to_double_vec(Y));
  return a;
}

namespace {

void apply_step(ArsData& s, const NormalizationStep& st) {
  switch (st.kind) {
    case StepKind::automorphism: {
      const ExactMat& P = st.matrix.value();
      s.D = conjugate_derivation(P, s.D);
      for (auto& Y : s.frame) Y = P * Y;
      break;
    }
    case StepKind::rescaling: {
      const Surd& l = st.scalar.value();
      s.D *= l;
      for (auto& Y : s.frame) Y *= l;
      break;
    }
    case StepKind::sign_flip:
      if (st.flip_target == 0) {
        s.D = -s.D;
      } else {
        s.frame.at(static_cast<size_t>(st.flip_target - 1)) = -s.frame.at(static_cast<size_t>(st.flip_target - 1));
      }
      break;
    case StepKind::frame_change: {
      const ExactMat& M = st.matrix.value();
      std::vector<ExactMat> next;
      for (int j = 0; j < M.cols(); ++j) {
        ExactMat acc(static_cast<int>(s.frame.front().size()), 1);
        for (int i = 0; i < M.rows(); ++i) acc += s.frame[static_cast<size_t>(i)] * M(i, j);
        next.push_back(acc);
      }
      s.frame = std::move(next);
      break;
    }
  }
}

void apply_step_approx(ArsDataApprox& s, const NormalizationStep& st) {
  switch (st.kind) {
    case StepKind::automorphism: {
      const Mat& P = st.matrix_approx;
      s.D = conjugate_derivation(P, s.D);
      for (auto& Y : s.frame) Y = P * Y;
      break;
    }
    case StepKind::rescaling:
      s.D *= st.scalar_approx;
      for (auto& Y : s.frame) Y *= st.scalar_approx;
      break;
    case StepKind::sign_flip:
      if (st.flip_target == 0) {
        s.D = -s.D;
      } else {
        s.frame.at(static_cast<size_t>(st.flip_target - 1)) *= -1.0;
      }
      break;
    case StepKind::frame_change: {
      const Mat& M = st.matrix_approx;
      std::vector<Vec> next;
      for (int j = 0; j < M.cols(); ++j) {
        Vec acc = Vec::Zero(s.frame.front().size());
        for (int i = 0; i < M.rows(); ++i) acc += M(i, j) * s.frame[static_cast<size_t>(i)];
        next.push_back(acc);
      }
      s.frame = std::move(next);
      break;
    }
  }
}

}  // namespace

ArsData apply_trace(const ArsData& data, const NormalizationTrace& trace) {
  ArsData s = data;
  for (const auto& st : trace.steps) {
    if (!st.exact()) throw std::domain_error("trace contains an approximate step");
    apply_step(s, st);
  }
  return s;
}

ArsDataApprox apply_trace_approx(const ArsDataApprox& data, const NormalizationTrace& trace) {
  ArsDataApprox s = data;
  for (const auto& st : trace.steps) apply_step_approx(s, st);
  return s;
}

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Canonical classes

const Parameter* CanonicalClass::find(std::string_view name) const {
  for (const auto& p : parameters)
    if (p.name == name) return &p;
  return nullptr;
}

const Surd& CanonicalClass::param(std::string_view name) const {
  const Parameter* p = find(name);
  if (!p) throw std::out_of_range("no parameter '" + std::string(name) + "'");
  return p->value;
}

bool CanonicalClass::has_flag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

ARSSpec CanonicalClass::spec() const {
  if (!exact) throw std::domain_error("approximate canonical class has no exact spec");
  return ARSSpec::create(group, derivation, frame);
}

ArsData CanonicalClass::data() const {
  if (!exact) throw std::domain_error("approximate canonical class has no exact data");
  return ArsData{group, derivation, frame};
}

bool operator==(const CanonicalClass& l, const CanonicalClass& r) {
  if (l.group != r.group || l.level != r.level || l.family != r.family || l.exact != r.exact) return false;
  if (l.parameters != r.parameters || l.invariants != r.invariants || l.flags != r.flags ||
      l.diagnostics != r.diagnostics) {
    return false;
  }
  if (l.exact) return l.derivation == r.derivation && l.frame == r.frame;
  if (l.derivation_approx != r.derivation_approx || l.frame_approx.size() != r.frame_approx.size()) return false;
  for (size_t i = 0; i < l.frame_approx.size(); ++i)
    if (l.frame_approx[i] != r.frame_approx[i]) return false;
  return true;
}

std::string IsometryGroupDescriptor::summary() const {
  std::string s = "translations by Z_X = " + translations + "; stabilizer {";
  for (size_t i = 0; i < stabilizer.size(); ++i) s += (i ? ", " : "") + stabilizer[i].label;
  s += "}";
  for (const auto& f : rotation_families) {
    s += "; P(theta," + std::to_string(f.epsilon) + ") with sigma=" + std::to_string(f.sigma) + ": ";
    if (f.full_circle) {
      s += "all theta";
    } else {
      s += "theta in {";
      for (size_t i = 0; i < f.angles.size(); ++i) s += (i ? "," : "") + fmt_double(f.angles[i]);
      s += "}";
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Invariant descriptions

std::string describe_Z(const ARSSpec& spec) {
  const ExactPoly& p = spec.singular_polynomial();
  if (p.is_zero()) return "G";
  ExactPoly q = p;
  q *= Surd(1) / p.leading_coefficient();
  return q.str() + "=0";
}

namespace {

const std::array<const char*, 3> kParamName = {"s", "t", "u"};

std::string poly_s(const ExactPoly& p) { return p.str(kParamName); }

ExactPoly in_s(const Surd& c0, const Surd& c1, const Surd& c2 = Surd(0)) {
  ExactPoly p(1);
  p.add_term({0, 0, 0}, c0);
  p.add_term({1, 0, 0}, c1);
  p.add_term({2, 0, 0}, c2);
  return p;
}

std::string vertical_line(const Surd& x0, const Surd& y0) {
  if (x0.is_zero() && y0.is_zero()) return "x=y=0";
  return "(" + x0.str() + "," + y0.str() + ",s)";
}

}  // namespace

std::string describe_ZX(const ARSSpec& spec) {
  const ExactMat& D = spec.derivation_exact();
  if (spec.group() == GroupTag::aff2) {
    const Surd &a = D(1, 0), &b = D(1, 1);
    if (a.is_zero() && b.is_zero()) return "G";
    if (b.is_zero()) return "(1,s)";
    const Surd k = a / b;
    return "(s," + poly_s(in_s(k, -k)) + ")";
  }
  const ExactMat A = D.block(0, 0, 2, 2);
  const Surd t = D(2, 2), e = D(2, 0), f = D(2, 1);
  const Surd b = D(0, 1), c = D(1, 0);
  const int r = A.rank();
  if (r == 2) return t.is_zero() ? "x=y=0" : "{e}";
  if (r == 1) {
    const ExactMat k = A.nullspace();
    const Surd k1 = k(0, 0), k2 = k(1, 0);
    const Surd q1 = e * k1 + f * k2;
    const Surd q2 = Surd(Rational(1, 2)) * (c * k1 * k1 + b * k2 * k2);
    if (!t.is_zero()) {
      const ExactPoly z = in_s(Surd(0), -q1 / t, -q2 / t);
      return "(" + poly_s(in_s(Surd(0), k1)) + "," + poly_s(in_s(Surd(0), k2)) + "," + poly_s(z) + ")";
    }
    if (q1.is_zero() && q2.is_zero()) {
      ExactPoly plane = ExactPoly::variable(3, 0) * k2 - ExactPoly::variable(3, 1) * k1;
      plane *= Surd(1) / plane.leading_coefficient();
      return plane.str() + "=0";
    }
    std::string out = "x=y=0";
    if (!q2.is_zero() && !q1.is_zero()) {
      const Surd s0 = -q1 / q2;
      out += " U " + vertical_line(k1 * s0, k2 * s0);
    }
    return out;
  }
  // A = 0, so t = 0: the third component reduces to e x + f y.
  if (e.is_zero() && f.is_zero()) return "G";
  ExactPoly plane = ExactPoly::variable(3, 0) * e + ExactPoly::variable(3, 1) * f;
  plane *= Surd(1) / plane.leading_coefficient();
  return plane.str() + "=0";
}

namespace {

std::string complex_text(const Surd& re, const Surd& im) {
  std::string imag = im == Surd(1) ? "i" : im.str() + "*i";
  if (imag.find_first_of("+-", 1) != std::string::npos) imag = "(" + im.str() + ")*i";
  if (re.is_zero()) return imag;
  return re.str() + "+" + imag;
}

std::string complex_text_neg(const Surd& re, const Surd& im) {
  std::string imag = im == Surd(1) ? "i" : im.str() + "*i";
  if (imag.find_first_of("+-", 1) != std::string::npos) imag = "(" + im.str() + ")*i";
  if (re.is_zero()) return "-" + imag;
  return re.str() + "-" + imag;
}

std::vector<std::string> eigen_text_double(const Mat& A) {
  const Spectrum2x2 s = eigen2x2(A);
  if (s.kind == SpectrumKind::complex) {
    return {fmt_double(s.re) + "+" + fmt_double(s.im) + "*i", fmt_double(s.re) + "-" + fmt_double(s.im) + "*i"};
  }
  return {fmt_double(s.l1), fmt_double(s.l2)};
}

}  // namespace

std::vector<std::string> describe_eigenvalues(const ExactMat& block) {
  try {
    const ExactSpectrum2x2 s = eigen2x2(block);
    if (s.kind == SpectrumKind::complex) return {complex_text(s.re, s.im), complex_text_neg(s.re, s.im)};
    return {s.l1.str(), s.l2.str()};
  } catch (const std::domain_error&) {
    return eigen_text_double(to_double(block));
  }
}

// ---------------------------------------------------------------------------
// Normalization machinery, written once for exact (Surd) and floating (double) scalars

namespace {

using namespace detail;

NormalizationStep auto_step(const ExactMat& P, std::string note) {
  return NormalizationStep::automorphism(P, std::move(note));
}
NormalizationStep auto_step(const Mx<double>& P, std::string note) {
  return NormalizationStep::automorphism_approx(to_eigen(P), std::move(note));
}
NormalizationStep rescale_step(const Surd& l, std::string note) {
  return NormalizationStep::rescaling(l, std::move(note));
}
NormalizationStep rescale_step(double l, std::string note) {
  return NormalizationStep::rescaling_approx(l, std::move(note));
}
NormalizationStep frame_step(const ExactMat& M, std::string note) {
  return NormalizationStep::frame_change(M, std::move(note));
}
NormalizationStep frame_step(const Mx<double>& M, std::string note) {
  return NormalizationStep::frame_change_approx(to_eigen(M), std::move(note));
}

template <class T>
Mx<T> mat2(const T& a, const T& b, const T& c, const T& d) {
  return Mx<T>{{a, b}, {c, d}};
}

template <class T>
Mx<T> diag3(const T& a, const T& b, const T& c) {
  return Mx<T>{{a, T(0), T(0)}, {T(0), b, T(0)}, {T(0), T(0), c}};
}

/// Automorphism [[S, 0], [u, det S]] of the Heisenberg algebra.
template <class T>
Mx<T> heis_auto(const Mx<T>& S, const T& u0 = T(0), const T& u1 = T(0)) {
  return Mx<T>{{S(0, 0), S(0, 1), T(0)}, {S(1, 0), S(1, 1), T(0)}, {u0, u1, S.determinant()}};
}

template <class T>
Mx<T> adj(const Mx<T>& S) {
  return mat2(S(1, 1), -S(0, 1), -S(1, 0), S(0, 0));
}

template <class T>
Mx<T> unit(int n, int i) {
  Mx<T> e(n, 1);
  e(i) = T(1);
  return e;
}

/// Working ARS data that records every move it makes.
template <class T>
struct Ctx {
  GroupTag group = GroupTag::heis3;
  Mx<T> D;
  std::vector<Mx<T>> frame;
  NormalizationTrace trace;

  void automorphism(const Mx<T>& P, std::string note) {
    D = P * D * P.inverse();
    for (auto& Y : frame) Y = P * Y;
    trace.steps.push_back(auto_step(P, std::move(note)));
  }

  void rescale(T l, std::string note) {
    if (sign(l) <= 0) throw std::logic_error("rescaling factor must be positive");
    D *= l;
    for (auto& Y : frame) Y *= l;
    trace.steps.push_back(rescale_step(l, std::move(note)));
  }

  void flip(int target, std::string note) {
    if (target == 0) {
      D = -D;
    } else {
      auto& Y = frame.at(static_cast<size_t>(target - 1));
      Y = -Y;
    }
    trace.steps.push_back(NormalizationStep::sign_flip(target, std::move(note)));
  }

  void frame_change(const Mx<T>& M, std::string note) {
    std::vector<Mx<T>> next;
    for (int j = 0; j < M.cols(); ++j) {
      Mx<T> acc(frame.front().rows(), 1);
      for (int i = 0; i < M.rows(); ++i) acc += frame[static_cast<size_t>(i)] * M(i, j);
      next.push_back(acc);
    }
    frame = std::move(next);
    trace.steps.push_back(frame_step(M, std::move(note)));
  }

  /// Frame change onto the coordinate vectors with the given indices; they must span the distribution.
  void restore_frame(std::initializer_list<int> axes, std::string note) {
    const int n = frame.front().rows();
    const int k = static_cast<int>(frame.size());
    Mx<T> F(n, k), Tg(n, k);
    int j = 0;
    for (int axis : axes) {
      F.set_col(j, frame[static_cast<size_t>(j)]);
      Tg(axis, j) = T(1);
      ++j;
    }
    const Mx<T> Ft = F.transpose();
    const Mx<T> M = (Ft * F).inverse() * (Ft * Tg);
    if constexpr (Num<T>::exact) {
      if (F * M != Tg) throw std::logic_error("frame change leaves the distribution");
    }
    if (M == Mx<T>::identity(k)) return;
    frame_change(M, std::move(note));
  }
};

/// Starting data, exact when available.
struct Start {
  GroupTag group = GroupTag::heis3;
  bool exact = true;
  ExactMat D;
  std::vector<ExactMat> frame;
  Mat D_approx;
  std::vector<Vec> frame_approx;
};

Start start_of(const ARSSpec& spec) {
  Start s;
  s.group = spec.group();
  s.D = spec.derivation_exact();
  s.frame = spec.frame_exact();
  return s;
}

Start start_of(const CanonicalClass& c) {
  Start s;
  s.group = c.group;
  s.exact = c.exact;
  if (c.exact) {
    s.D = c.derivation;
    s.frame = c.frame;
  } else {
    s.D_approx = c.derivation_approx;
    s.frame_approx = c.frame_approx;
  }
  return s;
}

template <class T>
Ctx<T> ctx_of(const Start& s) {
  Ctx<T> c;
  c.group = s.group;
  if constexpr (Num<T>::exact) {
    c.D = s.D;
    c.frame = s.frame;
  } else if (s.exact) {
    c.D = to_mx(s.D);
    for (const auto& Y : s.frame) c.frame.push_back(to_mx(Y));
  } else {
    c.D = to_mx(s.D_approx);
    for (const auto& Y : s.frame_approx) c.frame.push_back(to_mx(Mat(Y)));
  }
  return c;
}

Parameter param_of(const std::string& name, const Surd& v) { return Parameter{name, v, v.to_double(), true}; }
Parameter param_of(const std::string& name, double v) { return Parameter{name, Surd(0), v, false}; }

template <class T>
Classified finish(Ctx<T>& c, Level level, std::string family,
                  std::vector<std::pair<std::string, T>> params) {
  Classified out;
  CanonicalClass& k = out.cls;
  k.group = c.group;
  k.level = level;
  k.family = std::move(family);
  for (auto& [name, v] : params) k.parameters.push_back(param_of(name, v));
  if constexpr (Num<T>::exact) {
    k.exact = true;
    k.derivation = c.D;
    k.frame = c.frame;
    k.derivation_approx = to_double(c.D);
    for (const auto& Y : c.frame) k.frame_approx.push_back(to_double_vec(Y));
  } else {
    k.exact = false;
    k.derivation_approx = to_eigen(c.D);
    for (const auto& Y : c.frame) k.frame_approx.push_back(to_eigen(Y));
  }
  out.trace = std::move(c.trace);
  return out;
}

/// Runs fn exactly when possible and in double precision otherwise.
template <class Fn>
Classified dual(const Start& s, Fn&& fn) {
  if (s.exact) {
    try {
      return fn(ctx_of<Surd>(s));
    } catch (const std::domain_error&) {
      // Incompatible radicals or a non-rational square root: fall through to floating point.
    }
  }
  Classified c = fn(ctx_of<double>(s));
  c.cls.flags.push_back("approximate");
  return c;
}

void require_valid(const ARSSpec& spec) {
  const Validity& v = spec.validity();
  if (v.valid()) return;
  std::string msg = "invalid ARS:";
  for (const auto& f : v.failures) msg += " " + f;
  throw std::invalid_argument(msg);
}

// --- invariants -------------------------------------------------------------

std::optional<ARSSpec> spec_of(const CanonicalClass& c) {
  if (c.exact) return c.spec();
  return ARSSpec::from_doubles(c.group, c.derivation_approx, c.frame_approx);
}

void fill_invariants(CanonicalClass& c) {
  const int k = 2;
  if (c.exact) {
    c.invariants.eigenvalues = describe_eigenvalues(c.derivation.block(0, 0, k, k));
  } else {
    c.invariants.eigenvalues = eigen_text_double(c.derivation_approx.topLeftCorner(k, k));
  }
  // The subalgebra table lists the larger real eigenvalue first.
  if (c.family.rfind("heis-sub", 0) == 0 &&
      eigen2x2(Mat(c.derivation_approx.topLeftCorner(k, k))).kind != SpectrumKind::complex) {
    std::reverse(c.invariants.eigenvalues.begin(), c.invariants.eigenvalues.end());
  }
  try {
    const std::optional<ARSSpec> spec = spec_of(c);
    c.invariants.z_equation = describe_Z(*spec);
    c.invariants.zx = describe_ZX(*spec);
  } catch (const std::exception& ex) {
    c.diagnostics.push_back(std::string("invariants unavailable: ") + ex.what());
  }
  if (c.group == GroupTag::aff2) c.invariants.z_normal = std::abs(c.derivation_approx(1, 1)) <= 1e-12;
}

void fill_sub_row(CanonicalClass& c) {
  const std::string label = c.family.substr(c.family.find(' ') + 1);
  const SubalgebraRow* row = find_subalgebra_row(label);
  if (!row) return;
  if (row->z_equation != c.invariants.z_equation) {
    c.diagnostics.push_back("Z equation " + c.invariants.z_equation + " differs from the table entry " +
                            row->z_equation);
  }
  if (row->zx != c.invariants.zx) {
    c.diagnostics.push_back("Z_X " + c.invariants.zx + " differs from the table entry " + row->zx);
  }
}

void fill_nonsub_row(CanonicalClass& c) {
  const std::string label = c.family.substr(c.family.find(' ') + 1);
  const NonsubRow* row = find_nonsub_row(label);
  if (!row) {
    c.diagnostics.push_back("unlisted: no table row for " + label);
    return;
  }
  c.invariants.locus_kind = row->locus_kind;
  c.invariants.tangency = row->tangency_text;
  c.invariants.components = row->components;

  // Re-derive the tabulated tangency set and component count; never overwrite, only report.
  const ARSSpec spec = c.spec();
  const TangencyReport rep = tangency_points(spec);
  const bool same_data = c.exact && c.derivation == nonsub_derivation(*row);
  auto to_vec = [](const std::vector<Surd>& v) {
    Vec out(static_cast<int>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i].to_double();
    return out;
  };
  bool agrees = true;
  switch (row->tangency) {
    case TangencyShape::none:
      agrees = rep.kind == TangencyKind::empty;
      break;
    case TangencyShape::all_of_Z:
      agrees = rep.kind == TangencyKind::all_of_Z;
      break;
    case TangencyShape::single_unspecified:
      agrees = rep.kind == TangencyKind::points && rep.points.size() == 1;
      break;
    case TangencyShape::point:
      agrees = rep.kind == TangencyKind::points && rep.points.size() == 1;
      if (agrees && same_data) agrees = (rep.points[0] - to_vec(row->tangency_base)).norm() <= 1e-12;
      break;
    case TangencyShape::line:
      agrees = rep.kind == TangencyKind::curves && rep.curves.size() == 1 && rep.curves[0].is_line();
      if (agrees && same_data) {
        const Vec base = to_vec(row->tangency_base);
        const Vec dir = to_vec(row->tangency_direction);
        const TangencyCurve& cv = rep.curves[0];
        const Vec off = base - cv.base;
        const Eigen::Vector3d d3 = cv.direction;
        const double par = d3.cross(Eigen::Vector3d(dir)).norm();
        const double on = d3.cross(Eigen::Vector3d(off)).norm();
        agrees = par <= 1e-12 && on <= 1e-12;
      }
      break;
  }
  if (!agrees)
    c.diagnostics.push_back("tangency: table lists " + row->tangency_text + ", solver finds " + rep.str());
  if (spec.validity().valid()) {
    const ComponentCount cc = connected_components(spec, Box::cube(3, -3.0, 3.0), 32);
    if (cc.count != row->components)
      c.diagnostics.push_back("components: table lists " + std::to_string(row->components) + ", grid count " +
                              std::to_string(cc.count) + " on [-3,3]^3");
  }
}

// --- aff2 --------------------------------------------------------------------

template <class T>
Classified aff2_iso(Ctx<T> c) {
  if (sign(c.frame[0](0)) < 0) c.flip(1, "B -> -B");
  if (sign(c.D(1, 1)) < 0) c.flip(0, "D -> -D");
  const T alpha = c.frame[0](0), beta = c.frame[0](1);
  const T k = c.D(1, 0) * alpha + c.D(1, 1) * beta;
  if (zero(alpha) || zero(k)) throw std::invalid_argument("rank condition fails: alpha(a alpha + b beta) = 0");
  c.automorphism(mat2(T(1), T(0), -beta / k, alpha / k), "P(B) = alpha X, P(DB) = alpha Y");
  const T b = c.D(1, 1);
  return finish(c, Level::isometry, "aff2", {{"alpha", alpha}, {"b", b}});
}

template <class T>
Classified aff2_rescaled(Ctx<T> c) {
  const T alpha = c.frame[0](0);
  if (!(alpha == T(1))) {
    c.rescale(T(1) / alpha, "lambda = 1/alpha");
    c.automorphism(mat2(T(1), T(0), T(0), alpha), "restore D(X) = Y");
  }
  const T b = c.D(1, 1);
  return finish(c, Level::rescaled, "aff2", {{"b", b}});
}

template <class T>
Classified aff2_deformed(Ctx<T> c) {
  const T b = c.D(1, 1);
  if (sign(b) > 0 && !(b == T(1))) {
    c.rescale(T(1) / b, "lambda = 1/b");
    c.automorphism(mat2(T(1), T(0), T(0), b), "restore D(X) = Y");
    c.restore_frame({0}, "frame back to X");
  }
  const T bb = c.D(1, 1);
  return finish(c, Level::deformed, "aff2", {{"b", bb}});
}

// --- Heisenberg, distribution a subalgebra -----------------------------------

template <class T>
Classified sub_iso(Ctx<T> c) {
  // Express Z in the frame and rotate the frame so that its second vector is eta Z.
  {
    Mx<T> F(3, 2);
    F.set_col(0, c.frame[0]);
    F.set_col(1, c.frame[1]);
    const Mx<T> Ft = F.transpose();
    const Mx<T> z = (Ft * F).inverse() * (Ft * unit<T>(3, 2));
    const T rho = Num<T>::sqrt(z(0) * z(0) + z(1) * z(1));
    const T z1 = z(0) / rho, z2 = z(1) / rho;
    if (!(z1 == T(0) && z2 == T(1))) c.frame_change(mat2(z2, z1, -z1, z2), "rotate the frame onto Z");
  }
  const T eta = c.frame[1](2);
  const Mx<T> B1 = c.frame[0];
  const Mx<T> DB1 = c.D * B1;
  const Mx<T> V = mat2(B1(0), DB1(0), B1(1), DB1(1));
  const T mu = V.determinant();
  if (zero(mu)) throw std::invalid_argument("rank condition fails: [B1, D B1] = 0");
  const Mx<T> Vi = V.inverse();
  const Mx<T> A = mat2(T(1), T(0), T(0), mu / eta) * Vi;
  const T dA = A.determinant();
  const Mx<T> u = (Mx<T>{{B1(2), DB1(2)}} * Vi) * (-dA);
  const Mx<T> P = heis_auto(A, u(0, 0), u(0, 1));
  if (!(P == Mx<T>::identity(3))) c.automorphism(P, "P(B1) = X, P(D B1) = (mu/eta) Y, P(eta Z) = Z");

  if (sign(c.D(1, 1)) < 0) c.flip(0, "D -> -D for d >= 0");
  const int ep = sign1(c.D(1, 0));
  const int e = sign1(c.D(2, 1));
  if (ep < 0 || e < 0) {
    c.automorphism(diag3(T(e), T(e * ep), T(ep)), "P_{eps,eps'} sign fix");
    if (e < 0) c.flip(1, "restore X");
    if (ep < 0) c.flip(2, "restore Z");
  }
  return finish(c, Level::isometry, "heis-sub",
                {{"b", c.D(0, 1)}, {"c", c.D(1, 0)}, {"d", c.D(1, 1)}, {"f", c.D(2, 1)}});
}

template <class T>
Classified sub_rescaled(Ctx<T> c) {
  const T cc = c.D(1, 0);
  if (!(cc == T(1))) {
    const T l = T(1) / Num<T>::sqrt(cc);
    c.rescale(l, "lambda = 1/sqrt(c)");
    c.automorphism(diag3(T(1) / l, T(1), T(1) / l), "restore the frame {X, Z}");
  }
  return finish(c, Level::rescaled, "heis-sub", {{"b", c.D(0, 1)}, {"d", c.D(1, 1)}, {"f", c.D(2, 1)}});
}

template <class T>
void kill_w(Ctx<T>& c) {
  // [[I,0],[u,1]] sends w to w + u (M - t I).
  const Mx<T> N = c.D.block(0, 0, 2, 2) - Mx<T>::identity(2) * c.D(2, 2);
  const Mx<T> w{{c.D(2, 0), c.D(2, 1)}};
  if (w.is_zero()) return;
  const Mx<T> u = -(w * N.inverse());
  c.automorphism(heis_auto(Mx<T>::identity(2), u(0, 0), u(0, 1)), "vanish (e, f)");
}

template <class T>
Classified sub_deformed(Ctx<T> c) {
  const T b = c.D(0, 1), cc = c.D(1, 0), d = c.D(1, 1);
  if (!zero(d)) {
    if (!(d == T(1))) c.rescale(T(1) / d, "lambda = 1/d");
    const T q = T(1) / c.D(1, 0);
    if (!(q == T(1))) c.automorphism(diag3(T(1), q, q), "c -> 1");
    if (!zero(c.D(0, 1))) {
      kill_w(c);
    } else if (!zero(c.D(2, 1))) {
      const T p = T(1) / c.D(2, 1);
      if (!(p == T(1))) c.automorphism(diag3(p, p, p * p), "f -> 1");
    }
  } else {
    if (!zero(b)) {
      const T l = T(1) / Num<T>::sqrt(Num<T>::abs(b * cc));
      if (!(l == T(1))) c.rescale(l, "lambda = 1/sqrt(|bc|)");
      const T q = T(1) / c.D(1, 0);
      if (!(q == T(1))) c.automorphism(diag3(T(1), q, q), "c -> 1");
      kill_w(c);
    } else {
      const T q = T(1) / cc;
      if (!(q == T(1))) c.automorphism(diag3(T(1), q, q), "c -> 1");
      if (!zero(c.D(2, 1))) {
        const T p = T(1) / c.D(2, 1);
        if (!(p == T(1))) c.automorphism(diag3(p, p, p * p), "f -> 1");
      }
    }
  }
  c.restore_frame({0, 2}, "frame back to {X, Z}");

  const T nb = c.D(0, 1), nd = c.D(1, 1), nf = c.D(2, 1);
  std::string row;
  bool boundary = false;
  if (!zero(nd)) {
    const T shifted = nb + T(1) / T(4);
    if (zero(nb)) {
      row = zero(nf) ? "(iv)" : "(iii)";
    } else if (zero(shifted)) {
      row = "(i)";
      boundary = true;
    } else {
      row = sign(shifted) > 0 ? "(i)" : "(ii)";
    }
  } else if (!zero(nb)) {
    row = sign(nb) > 0 ? "(v)" : "(vi)";
  } else {
    row = zero(nf) ? "(viii)" : "(vii)";
  }
  Classified out = finish(c, Level::deformed, "heis-sub " + row, {{"b", nb}, {"d", nd}, {"f", nf}});
  if (boundary) out.cls.flags.push_back("boundary");
  return out;
}

// --- Heisenberg, distribution not a subalgebra -------------------------------

template <class T>
Classified nonsub_iso(Ctx<T> c) {
  {
    const Mx<T> Bxy = mat2(c.frame[0](0), c.frame[1](0), c.frame[0](1), c.frame[1](1));
    if (zero(Bxy.determinant())) throw std::invalid_argument("distribution is a subalgebra");
    const Mx<T> A = Bxy.inverse();
    const T dA = A.determinant();
    const Mx<T> u = (Mx<T>{{c.frame[0](2), c.frame[1](2)}} * A) * (-dA);
    const Mx<T> P = heis_auto(A, u(0, 0), u(0, 1));
    if (!(P == Mx<T>::identity(3))) c.automorphism(P, "P(B1) = X, P(B2) = Y");
  }
  const T e = c.D(2, 0), f = c.D(2, 1);
  if (!zero(e)) {
    const T rho = Num<T>::sqrt(e * e + f * f);
    const T cs = f / rho, sn = e / rho;
    c.automorphism(heis_auto(mat2(cs, -sn, sn, cs)), "rotation vanishing e");
    c.frame_change(mat2(cs, sn, -sn, cs), "frame back to {X, Y}");
  }
  const int sigma = sign(c.D(2, 2)) != 0 ? sign(c.D(2, 2)) : sign1(c.D(0, 0));
  if (sigma < 0) c.flip(0, "D -> -D for (tr A, a) >= 0");
  const int s1 = sign1(c.D(2, 1));
  const int s2 = !zero(c.D(1, 0)) ? s1 * sign(c.D(1, 0)) : (!zero(c.D(0, 1)) ? s1 * sign(c.D(0, 1)) : 1);
  if (s1 < 0 || s2 < 0) {
    c.automorphism(diag3(T(s1), T(s2), T(s1 * s2)), "sign fix f >= 0, c >= 0");
    if (s1 < 0) c.flip(1, "restore X");
    if (s2 < 0) c.flip(2, "restore Y");
  }
  return finish(c, Level::isometry, "heis-nonsub",
                {{"a", c.D(0, 0)},
                 {"b", c.D(0, 1)},
                 {"c", c.D(1, 0)},
                 {"d", c.D(1, 1)},
                 {"e", c.D(2, 0)},
                 {"f", c.D(2, 1)}});
}

template <class T>
Classified nonsub_rescaled(Ctx<T> c) {
  T l(1);
  for (const T& v : {c.D(1, 0), c.D(0, 1), c.D(2, 2), c.D(0, 0)}) {
    if (!zero(v)) {
      l = T(1) / Num<T>::abs(v);
      break;
    }
  }
  if (!(l == T(1))) {
    c.rescale(l, "global rescaling");
    c.automorphism(diag3(T(1) / l, T(1) / l, T(1) / (l * l)), "restore the frame {X, Y}");
  }
  return finish(c, Level::rescaled, "heis-nonsub",
                {{"a", c.D(0, 0)},
                 {"b", c.D(0, 1)},
                 {"c", c.D(1, 0)},
                 {"d", c.D(1, 1)},
                 {"e", c.D(2, 0)},
                 {"f", c.D(2, 1)}});
}

template <class T>
struct Spec2 {
  SpectrumKind kind;
  T l1, l2, re, im;
};

Spec2<Surd> spectrum(const Mx<Surd>& M) {
  const ExactSpectrum2x2 s = eigen2x2(M);
  return {s.kind, s.l1, s.l2, s.re, s.im};
}

Spec2<double> spectrum(const Mx<double>& M) {
  const Spectrum2x2 s = eigen2x2(to_eigen(M), Num<double>::tol);
  return {s.kind, s.l1, s.l2, s.re, s.im};
}

template <class T>
Mx<T> eigenvector(const Mx<T>& M, const T& l) {
  const Mx<T> N = M - Mx<T>::identity(2) * l;
  if (!(zero(N(0, 0)) && zero(N(0, 1)))) return Mx<T>::column({N(0, 1), -N(0, 0)});
  return Mx<T>::column({N(1, 1), -N(1, 0)});
}

template <class T>
T dot_w(const Ctx<T>& c, const Mx<T>& v) {
  return c.D(2, 0) * v(0) + c.D(2, 1) * v(1);
}

template <class T>
Mx<T> cols2(const Mx<T>& a, const Mx<T>& b) {
  return mat2(a(0), b(0), a(1), b(1));
}

template <class T>
void scale_to_one(Ctx<T>& c, T l, const std::string& what) {
  if (sign(l) < 0) c.flip(0, "D -> -D for " + what + " > 0");
  const T a = Num<T>::abs(l);
  if (!(a == T(1))) c.rescale(T(1) / a, what + " -> 1");
}

std::string pattern_suffix(bool e, bool f, const char* both, const char* only_e, const char* only_f,
                           const char* none) {
  if (e && f) return both;
  if (e) return only_e;
  if (f) return only_f;
  return none;
}

template <class T>
Classified nonsub_deformed(Ctx<T> c) {
  if constexpr (Num<T>::exact) {
    // Bring (e, f) to rational values first so that later radicals do not mix.
    const T e = c.D(2, 0), f = c.D(2, 1);
    if (!e.is_rational() || !f.is_rational()) {
      const T k = T(1) / (zero(e) ? f : e);
      c.automorphism(heis_auto(mat2(k, T(0), T(0), k)), "scale (e, f)");
      c.restore_frame({0, 1}, "frame back to {X, Y}");
    }
  }
  const Mx<T> M0 = c.D.block(0, 0, 2, 2);
  const Spec2<T> s = spectrum(M0);
  std::string family;
  std::vector<std::pair<std::string, T>> params;
  auto ew = [&] { return std::pair<bool, bool>{!zero(c.D(2, 0)), !zero(c.D(2, 1))}; };

  switch (s.kind) {
    case SpectrumKind::real_distinct: {
      T la = s.l1, lb = s.l2;
      Mx<T> va = eigenvector(M0, la), vb = eigenvector(M0, lb);
      const bool wa = !zero(dot_w(c, va)), wb = !zero(dot_w(c, vb));
      bool swap = false;
      if (zero(la)) {
        swap = true;
      } else if (zero(lb)) {
        swap = false;
      } else if (wa != wb) {
        swap = wb;
      } else {
        const T d = Num<T>::abs(la) - Num<T>::abs(lb);
        swap = zero(d) ? sign(lb) > 0 : sign(d) > 0;
      }
      if (swap) {
        std::swap(la, lb);
        std::swap(va, vb);
      }
      c.automorphism(heis_auto(cols2(va, vb).inverse()), "diagonalize A");
      scale_to_one(c, c.D(0, 0), "l1");
      const T e = c.D(2, 0), f = c.D(2, 1);
      const T q = zero(e) ? T(1) : T(1) / e, p = zero(f) ? T(1) : T(1) / f;
      if (!(p == T(1) && q == T(1))) c.automorphism(heis_auto(mat2(p, T(0), T(0), q)), "(e, f) -> {0, 1}");
      const T l2 = c.D(1, 1);
      const auto [he, hf] = ew();
      if (zero(l2)) {
        family = "1.iii." + pattern_suffix(he, hf, "1", "3", "2", "4");
      } else if (zero(l2 + T(1))) {
        family = "1.ii." + pattern_suffix(he, hf, "1", "2", "2", "3");
      } else {
        family = "1.i." + pattern_suffix(he, hf, "1", "2", "2", "3");
      }
      params = {{"l1", c.D(0, 0)}, {"l2", l2}};
      break;
    }
    case SpectrumKind::scalar: {
      const T l = s.l1;
      if (!zero(l)) scale_to_one(c, l, "l1");
      const T e = c.D(2, 0), f = c.D(2, 1);
      if (!(zero(e) && zero(f))) {
        Mx<T> N;
        if (!zero(l)) {
          N = !zero(e) ? mat2(T(1) / e, -f / e, T(0), T(1)) : mat2(T(0), T(1), T(1) / f, T(0));
        } else {
          N = !zero(e) ? mat2(-f / e, T(1) / e, T(1), T(0)) : mat2(T(1), T(0), T(0), T(1) / f);
        }
        c.automorphism(heis_auto(adj(N)), zero(l) ? "(e, f) -> (0, 1)" : "(e, f) -> (1, 0)");
      }
      const auto [he, hf] = ew();
      family = zero(l) ? std::string("1.iv.1") : "1.i." + pattern_suffix(he, hf, "1", "2", "2", "3");
      params = {{"l1", c.D(0, 0)}, {"l2", c.D(1, 1)}};
      break;
    }
    case SpectrumKind::jordan: {
      const T l = s.l1;
      const Mx<T> N = M0 - Mx<T>::identity(2) * l;
      const Mx<T> u = !(zero(N(0, 0)) && zero(N(1, 0))) ? unit<T>(2, 0) : unit<T>(2, 1);
      const Mx<T> v = N * u;
      c.automorphism(heis_auto(cols2(v, u).inverse()), "Jordan form");
      if (!zero(l)) {
        scale_to_one(c, l, "l1");
        const T m01 = c.D(0, 1);
        if (!(m01 == T(1))) c.automorphism(heis_auto(mat2(T(1), T(0), T(0), m01)), "off-diagonal -> 1");
      }
      const T e = c.D(2, 0), f = c.D(2, 1);
      if (!zero(e)) {
        c.automorphism(heis_auto(mat2(T(1) / e, f / (e * e), T(0), T(1) / e)), "(e, f) -> (1, 0)");
      } else if (!zero(f) && !(f == T(1))) {
        c.automorphism(heis_auto(mat2(T(1) / f, T(0), T(0), T(1) / f)), "(e, f) -> (0, 1)");
      }
      const auto [he, hf] = ew();
      family = (zero(l) ? "2.ii." : "2.i.") + pattern_suffix(he, hf, "1", "3", "2", "4");
      params = {{"l1", c.D(0, 0)}};
      break;
    }
    case SpectrumKind::complex: {
      const Mx<T> p = Mx<T>::column({M0(0, 1), s.re - M0(0, 0)});
      const Mx<T> q = Mx<T>::column({T(0), s.im});
      c.automorphism(heis_auto(cols2(q, p).inverse()), "rotation-scaling form");
      if (!zero(s.re)) {
        if (sign(s.re) < 0) {
          c.flip(0, "D -> -D for a > 0");
          c.automorphism(heis_auto(mat2(T(1), T(0), T(0), T(-1))), "b > 0");
        }
        const T a = Num<T>::abs(s.re);
        if (!(a == T(1))) c.rescale(T(1) / a, "a -> 1");
      } else if (!(s.im == T(1))) {
        c.rescale(T(1) / s.im, "b -> 1");
      }
      const T e = c.D(2, 0), f = c.D(2, 1);
      if (!(zero(e) && zero(f))) {
        const T r2 = e * e + f * f;
        const T pp = f / r2, qq = e / r2;
        if (!(pp == T(1) && zero(qq))) c.automorphism(heis_auto(mat2(pp, -qq, qq, pp)), "(e, f) -> (0, 1)");
      }
      const auto [he, hf] = ew();
      family = (zero(s.re) ? "3.ii." : "3.i.") + pattern_suffix(he, hf, "1", "1", "1", "2");
      params = {{"a", c.D(0, 0)}, {"b", c.D(1, 0)}};
      break;
    }
  }
  c.restore_frame({0, 1}, "frame back to {X, Y}");
  params.emplace_back("e", c.D(2, 0));
  params.emplace_back("f", c.D(2, 1));
  return finish(c, Level::deformed, "heis-nonsub " + family, std::move(params));
}

}  // namespace

// ---------------------------------------------------------------------------
// Public classification entry points

Classified aff2_isometry_class(const ARSSpec& spec) {
  if (spec.group() != GroupTag::aff2) throw std::invalid_argument("aff2_isometry_class needs an aff2 spec");
  require_valid(spec);
  Classified c = dual(start_of(spec), [](auto ctx) { return aff2_iso(std::move(ctx)); });
  fill_invariants(c.cls);
  return c;
}

Classified aff2_rescaled_class(const CanonicalClass& cls) {
  Classified c = dual(start_of(cls), [](auto ctx) { return aff2_rescaled(std::move(ctx)); });
  fill_invariants(c.cls);
  return c;
}

Classified aff2_deformed_class(const CanonicalClass& cls) {
  Classified c = dual(start_of(cls), [](auto ctx) { return aff2_deformed(std::move(ctx)); });
  fill_invariants(c.cls);
  return c;
}

IsometryGroupDescriptor aff2_isometry_group(const ARSSpec& spec) {
  const CanonicalClass cls = aff2_isometry_class(spec).cls;
  IsometryGroupDescriptor g;
  if (const auto s = spec_of(cls)) g.translations = describe_ZX(*s);
  g.stabilizer.push_back({"I", Mat::Identity(2, 2), ExactMat::identity(2), 1});
  if (std::abs(cls.derivation_approx(1, 1)) <= 1e-12) {
    const ExactMat P{{Surd(1), Surd(0)}, {Surd(0), Surd(-1)}};
    g.stabilizer.push_back({"diag(1,-1)", to_double(P), P, -1});
  }
  return g;
}

bool heis_delta_is_subalgebra(const ARSSpec& spec) {
  if (spec.group() != GroupTag::heis3) throw std::invalid_argument("heis_delta_is_subalgebra needs a heis3 spec");
  const auto& fr = spec.frame_exact();
  const ExactMat br = LieAlgebraModel::get(GroupTag::heis3).bracket(fr[0], fr[1]);
  ExactMat F(3, 3);
  F.set_col(0, fr[0]);
  F.set_col(1, fr[1]);
  F.set_col(2, br);
  return F.rank() <= 2;
}

Classified heis_sub_isometry_class(const ARSSpec& spec) {
  require_valid(spec);
  if (!heis_delta_is_subalgebra(spec)) throw std::invalid_argument("distribution is not a subalgebra");
  Classified c = dual(start_of(spec), [](auto ctx) { return sub_iso(std::move(ctx)); });
  fill_invariants(c.cls);
  return c;
}

Classified heis_sub_rescaled_class(const CanonicalClass& cls) {
  Classified c = dual(start_of(cls), [](auto ctx) { return sub_rescaled(std::move(ctx)); });
  fill_invariants(c.cls);
  return c;
}

Classified heis_sub_deformed_class(const CanonicalClass& cls) {
  Classified c = dual(start_of(cls), [](auto ctx) { return sub_deformed(std::move(ctx)); });
  fill_invariants(c.cls);
  fill_sub_row(c.cls);
  return c;
}

namespace {

double max_abs_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

IsometryGroupDescriptor heis_sub_isometry_group(const CanonicalClass& cls) {
  IsometryGroupDescriptor g;
  if (const auto s = spec_of(cls)) g.translations = describe_ZX(*s);
  const Mat& D = cls.derivation_approx;
  const double scale = std::max(1.0, D.cwiseAbs().maxCoeff());
  for (int ep : {1, -1}) {
    for (int e : {1, -1}) {
      const ExactMat P = ExactMat::diagonal({Surd(e), Surd(e * ep), Surd(ep)});
      const Mat Pd = to_double(P);
      const Mat C = conjugate_derivation(Pd, D);
      int sigma = 0;
      if (max_abs_diff(C, D) <= 1e-9 * scale) {
        sigma = 1;
      } else if (max_abs_diff(C, -D) <= 1e-9 * scale) {
        sigma = -1;
      }
      if (sigma == 0) continue;
      const std::string label = (e == 1 && ep == 1) ? "I" : "P(eps=" + std::to_string(e) + ",eps'=" +
                                                              std::to_string(ep) + ")";
      g.stabilizer.push_back({label, Pd, P, sigma});
    }
  }
  return g;
}

Classified heis_nonsub_isometry_class(const ARSSpec& spec) {
  require_valid(spec);
  if (heis_delta_is_subalgebra(spec)) throw std::invalid_argument("distribution is a subalgebra");
  Classified c = dual(start_of(spec), [](auto ctx) { return nonsub_iso(std::move(ctx)); });
  fill_invariants(c.cls);
  return c;
}

Classified heis_nonsub_rescaled_class(const CanonicalClass& cls) {
  Classified c = dual(start_of(cls), [](auto ctx) { return nonsub_rescaled(std::move(ctx)); });
  fill_invariants(c.cls);
  return c;
}

Classified heis_nonsub_deformed_class(const CanonicalClass& cls) {
  Classified c = dual(start_of(cls), [](auto ctx) { return nonsub_deformed(std::move(ctx)); });
  fill_invariants(c.cls);
  fill_nonsub_row(c.cls);
  return c;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

bool same_angle(double a, double b, double tol) {
  const double d = wrap(a - b);
  return d <= tol || kTwoPi - d <= tol;
}

Mat rotation_automorphism(double theta, int eps) {
  Mat P = Mat::Zero(3, 3);
  const double c = std::cos(theta), s = std::sin(theta);
  P(0, 0) = c;
  P(0, 1) = -s * eps;
  P(1, 0) = s;
  P(1, 1) = c * eps;
  P(2, 2) = eps;
  return P;
}

}  // namespace

IsometryGroupDescriptor heis_nonsub_isometry_group(const CanonicalClass& cls) {
  IsometryGroupDescriptor g;
  if (const auto s = spec_of(cls)) g.translations = describe_ZX(*s);
  const Mat& D = cls.derivation_approx;
  const double scale = std::max(1.0, D.cwiseAbs().maxCoeff());
  const double tol = 1e-9 * scale;
  const double a = D(0, 0), b = D(0, 1), c = D(1, 0), d = D(1, 1), e = D(2, 0), f = D(2, 1);
  const double m = (a + d) / 2, s = (c - b) / 2, p = (a - d) / 2, q = (b + c) / 2;
  for (int eps : {1, -1}) {
    for (int sigma : {1, -1}) {
      if (sigma < 0 && std::abs(m) > tol) continue;
      if (eps * sigma < 0 && std::abs(s) > tol) continue;
      bool full = true;
      std::vector<double> cand;
      auto constrain = [&](const std::vector<double>& sols) {
        if (full) {
          cand = sols;
          full = false;
          return;
        }
        std::vector<double> kept;
        for (double x : cand)
          if (std::any_of(sols.begin(), sols.end(), [&](double y) { return same_angle(x, y, 1e-9); }))
            kept.push_back(x);
        cand = kept;
      };
      if (std::hypot(p, q) > tol) {
        // R_{2 theta} (p, eps q) = sigma (p, q)
        const double two = std::atan2(sigma * q, sigma * p) - std::atan2(eps * q, p);
        const double t0 = wrap(two / 2);
        constrain({t0, wrap(t0 + std::numbers::pi)});
      }
      if (std::hypot(e, f) > tol) {
        // R_theta (eps == 1 ? w : F w) = sigma eps w
        const double fw = eps == 1 ? f : -f;
        constrain({wrap(std::atan2(sigma * eps * f, sigma * eps * e) - std::atan2(fw, e))});
      }
      if (!full) {
        // Keep only angles that survive a direct conjugation check.
        std::vector<double> verified;
        for (double th : cand)
          if (max_abs_diff(conjugate_derivation(rotation_automorphism(th, eps), D), static_cast<double>(sigma) * D) <= 1e-8 * scale)
            verified.push_back(th);
        cand = verified;
        if (cand.empty()) continue;
        std::sort(cand.begin(), cand.end());
      }
      g.rotation_families.push_back({eps, sigma, full, cand});
      for (double th : cand) {
        const std::string label = "P(theta=" + fmt_double(th) + ",eps=" + std::to_string(eps) + ")";
        g.stabilizer.push_back({label, rotation_automorphism(th, eps), std::nullopt, sigma});
      }
    }
  }
  return g;
}

FullClassification classify(const ARSSpec& spec) {
  require_valid(spec);
  FullClassification out;
  if (spec.group() == GroupTag::aff2) {
    out.isometry = aff2_isometry_class(spec);
    out.rescaled = aff2_rescaled_class(out.isometry.cls);
    out.deformed = aff2_deformed_class(out.rescaled.cls);
    out.group = aff2_isometry_group(spec);
  } else if (heis_delta_is_subalgebra(spec)) {
    out.isometry = heis_sub_isometry_class(spec);
    out.rescaled = heis_sub_rescaled_class(out.isometry.cls);
    out.deformed = heis_sub_deformed_class(out.isometry.cls);
    out.group = heis_sub_isometry_group(out.isometry.cls);
  } else {
    out.isometry = heis_nonsub_isometry_class(spec);
    out.rescaled = heis_nonsub_rescaled_class(out.isometry.cls);
    out.deformed = heis_nonsub_deformed_class(out.isometry.cls);
    out.group = heis_nonsub_isometry_group(out.isometry.cls);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text records

namespace {

std::string exact_text(const Surd& v) { return v.str(); }

std::string double_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& s) {
  size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

}  // namespace

std::string serialize(const CanonicalClass& cls, std::string_view prefix) {
  std::ostringstream os;
  const std::string p(prefix);
  auto line = [&](const std::string& key, const std::string& value) { os << p << key << " = " << value << "\n"; };
  line("group", std::string(to_string(cls.group)));
  line("level", std::string(to_string(cls.level)));
  line("family", cls.family);
  line("exact", cls.exact ? "true" : "false");
  for (const auto& par : cls.parameters) {
    if (par.exact) {
      line("param." + par.name, exact_text(par.value));
    } else {
      line("param_approx." + par.name, double_text(par.approx));
    }
  }
  std::vector<std::string> rows;
  const int n = static_cast<int>(cls.derivation_approx.rows());
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> cells;
    for (int j = 0; j < n; ++j)
      cells.push_back(cls.exact ? exact_text(cls.derivation(i, j)) : double_text(cls.derivation_approx(i, j)));
    rows.push_back(join(cells, ","));
  }
  line("derivation", join(rows, ";"));
  std::vector<std::string> vecs;
  for (size_t k = 0; k < cls.frame_approx.size(); ++k) {
    std::vector<std::string> cells;
    for (int i = 0; i < n; ++i)
      cells.push_back(cls.exact ? exact_text(cls.frame[k](i)) : double_text(cls.frame_approx[k](i)));
    vecs.push_back(join(cells, ","));
  }
  line("frame", join(vecs, ";"));
  line("eigenvalues", join(cls.invariants.eigenvalues, " | "));
  line("z", cls.invariants.z_equation);
  line("zx", cls.invariants.zx);
  line("tangency", cls.invariants.tangency);
  if (cls.invariants.components) line("components", std::to_string(*cls.invariants.components));
  if (cls.invariants.z_normal) line("z_normal", *cls.invariants.z_normal ? "true" : "false");
  line("locus", cls.invariants.locus_kind);
  line("flags", join(cls.flags, ","));
  for (const auto& d : cls.diagnostics) line("diagnostic", d);
  return os.str();
}

CanonicalClass parse_canonical_class(std::string_view text, std::string_view prefix) {
  CanonicalClass c;
  c.parameters.clear();
  std::string derivation_text, frame_text;
  bool saw_group = false, saw_level = false, saw_exact = false;
  int lineno = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++lineno;
    const std::string ln = trim(raw);
    if (ln.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("class record line " + std::to_string(lineno) + ": " + why);
    };
    if (ln.compare(0, prefix.size(), prefix) != 0) fail("missing prefix '" + std::string(prefix) + "'");
    const size_t eq = ln.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(std::string_view(ln).substr(prefix.size(), eq - prefix.size()));
    const std::string value = trim(std::string_view(ln).substr(eq + 1));
    try {
      if (key == "group") {
        c.group = parse_group_tag(value);
        saw_group = true;
      } else if (key == "level") {
        c.level = parse_level(value);
        saw_level = true;
      } else if (key == "family") {
        c.family = value;
      } else if (key == "exact") {
        if (value != "true" && value != "false") fail("exact must be true or false");
        c.exact = value == "true";
        saw_exact = true;
      } else if (key.rfind("param.", 0) == 0) {
        c.parameters.push_back(param_of(key.substr(6), Surd::parse(value)));
      } else if (key.rfind("param_approx.", 0) == 0) {
        c.parameters.push_back(param_of(key.substr(13), parse_double(value)));
      } else if (key == "derivation") {
        derivation_text = value;
      } else if (key == "frame") {
        frame_text = value;
      } else if (key == "eigenvalues") {
        c.invariants.eigenvalues.clear();
        if (!value.empty())
          for (const auto& part : split(value, '|')) c.invariants.eigenvalues.push_back(trim(part));
      } else if (key == "z") {
        c.invariants.z_equation = value;
      } else if (key == "zx") {
        c.invariants.zx = value;
      } else if (key == "tangency") {
        c.invariants.tangency = value;
      } else if (key == "components") {
        c.invariants.components = std::stoi(value);
      } else if (key == "z_normal") {
        c.invariants.z_normal = value == "true";
      } else if (key == "locus") {
        c.invariants.locus_kind = value;
      } else if (key == "flags") {
        c.flags.clear();
        if (!value.empty())
          for (const auto& f : split(value, ',')) c.flags.push_back(trim(f));
      } else if (key == "diagnostic") {
        c.diagnostics.push_back(value);
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& ex) {
      if (std::string_view(ex.what()).rfind("class record line", 0) == 0) throw;
      fail(ex.what());
    } catch (const std::out_of_range& ex) {
      fail(ex.what());
    }
  }
  if (!saw_group || !saw_level || !saw_exact) throw std::invalid_argument("class record lacks group, level or exact");
  const int n = dimension(c.group);
  const std::vector<std::string> rows = split(derivation_text, ';');
  if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("class record: derivation has wrong shape");
  c.derivation_approx = Mat::Zero(n, n);
  if (c.exact) c.derivation = ExactMat(n, n);
  for (int i = 0; i < n; ++i) {
    const std::vector<std::string> cells = split(rows[static_cast<size_t>(i)], ',');
    if (static_cast<int>(cells.size()) != n) throw std::invalid_argument("class record: derivation has wrong shape");
    for (int j = 0; j < n; ++j) {
      const std::string cell = trim(cells[static_cast<size_t>(j)]);
      if (c.exact) {
        c.derivation(i, j) = Surd::parse(cell);
        c.derivation_approx(i, j) = c.derivation(i, j).to_double();
      } else {
        c.derivation_approx(i, j) = parse_double(cell);
      }
    }
  }
  for (const auto& vtext : split(frame_text, ';')) {
    const std::vector<std::string> cells = split(vtext, ',');
    if (static_cast<int>(cells.size()) != n) throw std::invalid_argument("class record: frame vector has wrong size");
    ExactMat v(n, 1);
    Vec vd(n);
    for (int i = 0; i < n; ++i) {
      const std::string cell = trim(cells[static_cast<size_t>(i)]);
      if (c.exact) {
        v(i) = Surd::parse(cell);
        vd(i) = v(i).to_double();
      } else {
        vd(i) = parse_double(cell);
      }
    }
    if (c.exact) c.frame.push_back(v);
    c.frame_approx.push_back(vd);
  }
  return c;
}

}  // namespace arskit
