#include "arskit/commands.hpp"

#include "arskit/classify.hpp"
#include "arskit/geodesy.hpp"
#include "arskit/linfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace arskit {

namespace {

constexpr double kDefaultTol = 1e-9;
constexpr double kDefaultBoxLo = -3.0;
constexpr double kDefaultBoxHi = 3.0;
constexpr int kDefaultResolution = 64;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string fmt_vec(const Vec& v) {
  std::string s;
  for (int i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

Vec to_vec(const std::vector<double>& v) {
  Vec out(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i];
  return out;
}

struct Settings {
  double tol;
  std::pair<double, double> box;
  int resolution;
  std::optional<double> slice;
};

Settings settings_of(const ConfigDocument& c, const CommandFlags& f) {
  Settings s;
  s.tol = f.tol.value_or(c.tol.value_or(kDefaultTol));
  s.box = f.box.value_or(c.box.value_or(std::make_pair(kDefaultBoxLo, kDefaultBoxHi)));
  s.resolution = f.resolution.value_or(c.resolution.value_or(kDefaultResolution));
  s.slice = f.slice ? f.slice : c.slice;
  return s;
}

std::string digest_of(std::string_view name, const ConfigDocument& c, const Settings& s) {
  std::string text = "command=" + std::string(name) + "\n";
  for (const auto& [k, v] : c.entries) text += k + "=" + v + "\n";
  text += "effective.tol=" + fmt(s.tol) + "\n";
  text += "effective.box=" + fmt(s.box.first) + "," + fmt(s.box.second) + "\n";
  text += "effective.resolution=" + std::to_string(s.resolution) + "\n";
  if (s.slice) text += "effective.slice=" + fmt(*s.slice) + "\n";
  return fnv1a_hex(text);
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GroupPoint point_of(const ConfigDocument& c, const ARSSpec& spec) {
  if (!c.point) throw UsageError("missing key: point");
  try {
    return GroupPoint::make(spec.group(), to_vec(*c.point));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// Fixed 400x400 canvas over the (x, y) window.
struct Canvas {
  double x0, x1, y0, y1;
  std::ostringstream body;

  double px(double x) const { return 400.0 * (x - x0) / (x1 - x0); }
  double py(double y) const { return 400.0 - 400.0 * (y - y0) / (y1 - y0); }
  std::string finish() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 400 400\" width=\"400\" height=\"400\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"400\" height=\"400\" fill=\"white\" stroke=\"black\"/>\n";
    os << body.str() << "</svg>\n";
    return os.str();
  }
};

void cmd_validate(const ARSSpec& spec, ResultRecord& r) {
  const Validity& v = spec.validity();
  r.add("valid", v.valid() ? "true" : "false");
  r.add("frame_independent", v.frame_independent ? "true" : "false");
  r.add("rank_condition", v.rank_condition_ok ? "true" : "false");
  r.add("open_dense", v.open_dense_ok ? "true" : "false");
  r.add("singular_polynomial", spec.singular_polynomial().str());
  r.add("z", describe_Z(spec));
  r.add("zx", describe_ZX(spec));
  if (spec.group() == GroupTag::heis3)
    r.add("distribution", heis_delta_is_subalgebra(spec) ? "subalgebra" : "not a subalgebra");
}

void cmd_classify(const ARSSpec& spec, ResultRecord& r) {
  const FullClassification full = classify(spec);
  auto emit = [&](const Classified& c, const std::string& prefix) {
    std::istringstream lines(serialize(c.cls, prefix));
    std::string line;
    while (std::getline(lines, line)) {
      const size_t eq = line.find(" = ");
      r.add(line.substr(0, eq), line.substr(eq + 3));
    }
    r.add(prefix + "trace_steps", std::to_string(c.trace.steps.size()));
  };
  emit(full.isometry, "isometry.");
  emit(full.rescaled, "rescaled.");
  emit(full.deformed, "deformed.");
  r.add("isometry_group", full.group.summary());
}

void cmd_locus(const ARSSpec& spec, const Settings& s, ResultRecord& r) {
  const int n = spec.dim();
  const Box box = Box::cube(n, s.box.first, s.box.second);
  const auto cloud = locus_sample(spec, box, s.resolution, s.slice);
  r.add("z", describe_Z(spec));
  r.add("points", std::to_string(cloud.size()));
  const bool three = n == 3;
  std::string csv = three ? "x,y,z\n" : "x,y\n";
  for (const Vec& p : cloud) csv += fmt_vec(p) + "\n";
  r.csv = csv;
  if (spec.group() == GroupTag::aff2 || s.slice) {
    const Box b = clamp_to_chart(spec.group(), box);
    Canvas c{b.lo[0], b.hi[0], b.lo[1], b.hi[1], {}};
    for (const Vec& p : cloud)
      c.body << "<circle cx=\"" << fmt(c.px(p[0])) << "\" cy=\"" << fmt(c.py(p[1])) << "\" r=\"1.5\" fill=\"crimson\"/>\n";
    r.svg = c.finish();
  }
}

void cmd_norm(const ARSSpec& spec, const ConfigDocument& c, const Settings& s, ResultRecord& r) {
  const GroupPoint g = point_of(c, spec);
  if (!c.vector) throw UsageError("missing key: vector");
  const NormSolution sol = ars_norm_solve(spec, TangentVector{g, to_vec(*c.vector)});
  r.add("norm", sol.norm.str());
  r.add("rank", std::to_string(sol.rank));
  if (!sol.norm.infinite) r.add("coefficients", fmt_vec(sol.coefficients));
  r.add("in_Z", in_Z(spec, g, s.tol) ? "true" : "false");
  r.add("in_ZX", in_ZX(spec, g, s.tol) ? "true" : "false");
}

void cmd_flow(const ARSSpec& spec, const ConfigDocument& c, ResultRecord& r) {
  const GroupPoint g = point_of(c, spec);
  const double t = c.time.value_or(1.0);
  const LinearField X = spec.field();
  const GroupPoint closed = flow(X, t, g);
  const GroupPoint ode = flow_ode(X, t, g);
  r.add("time", fmt(t));
  r.add("closed_form", fmt_vec(closed.coords));
  r.add("rk4", fmt_vec(ode.coords));
  r.add("difference", fmt((closed.coords - ode.coords).norm()));
}

void cmd_geodesic(const ARSSpec& spec, const ConfigDocument& c, const Settings& s, ResultRecord& r) {
  const GroupPoint g = point_of(c, spec);
  if (!c.covector) throw UsageError("missing key: covector");
  const double T = c.time.value_or(1.0);
  const int steps = c.steps.value_or(1000);
  const GeodesicTrace tr = geodesic_shoot(spec, CotangentState{g, to_vec(*c.covector)}, T, steps);
  const auto& last = tr.samples.back();
  double drift = 0.0;
  for (const auto& smp : tr.samples) drift = std::max(drift, std::abs(smp.H - tr.samples.front().H));
  r.add("method", tr.method);
  r.add("step", fmt(tr.step));
  r.add("samples", std::to_string(tr.samples.size()));
  r.add("H0", fmt(tr.samples.front().H));
  r.add("max_H_drift", fmt(drift));
  r.add("end_t", fmt(last.t));
  r.add("end_point", fmt_vec(last.state.point.coords));
  r.add("end_covector", fmt_vec(last.state.covector));
  r.add("truncated", tr.truncated ? "true" : "false");
  if (tr.truncated) r.diagnostics.push_back("trajectory left the chart x > 0 and was truncated");
  const bool three = spec.dim() == 3;
  std::string csv = three ? "t,x,y,z,lx,ly,lz,H\n" : "t,x,y,lx,ly,H\n";
  for (const auto& smp : tr.samples)
    csv += fmt(smp.t) + "," + fmt_vec(smp.state.point.coords) + "," + fmt_vec(smp.state.covector) + "," + fmt(smp.H) + "\n";
  r.csv = csv;
  Box b = clamp_to_chart(spec.group(), Box::cube(spec.dim(), s.box.first, s.box.second));
  Canvas cv{b.lo[0], b.hi[0], b.lo[1], b.hi[1], {}};
  cv.body << "<polyline fill=\"none\" stroke=\"navy\" points=\"";
  for (size_t i = 0; i < tr.samples.size(); ++i) {
    const Vec& p = tr.samples[i].state.point.coords;
    cv.body << (i ? " " : "") << fmt(cv.px(p[0])) << "," << fmt(cv.py(p[1]));
  }
  cv.body << "\"/>\n";
  r.svg = cv.finish();
}

void cmd_tangency(const ARSSpec& spec, ResultRecord& r) {
  if (spec.group() != GroupTag::heis3) throw UsageError("tangency applies to heis3 structures");
  const TangencyReport rep = tangency_points(spec);
  r.add("kind", std::string(to_string(rep.kind)));
  r.add("tangency", rep.str());
  r.add("exact", rep.exact ? "true" : "false");
  double worst = 0.0;
  for (const Vec& p : rep.points) worst = std::max(worst, tangency_residual(spec, p));
  for (const auto& cv : rep.curves)
    for (double t : {-1.0, 0.0, 1.0}) worst = std::max(worst, tangency_residual(spec, cv.at(t)));
  if (rep.kind == TangencyKind::points || rep.kind == TangencyKind::curves) r.add("max_residual", fmt(worst));
  if (heis_delta_is_subalgebra(spec)) r.diagnostics.push_back("distribution is a subalgebra: no tangency points");
}

void cmd_components(const ARSSpec& spec, const Settings& s, ResultRecord& r) {
  if (s.resolution < 16) throw UsageError("resolution must be at least 16");
  const ComponentCount cc = connected_components(spec, Box::cube(spec.dim(), s.box.first, s.box.second), s.resolution);
  r.add("components", std::to_string(cc.count) + " (" + cc.caveat + ")");
  r.add("resolution", std::to_string(cc.resolution));
  r.add("stable", cc.stable ? "true" : "false");
  std::string hist;
  for (const auto& [res, cnt] : cc.history) hist += (hist.empty() ? "" : ",") + std::to_string(res) + ":" + std::to_string(cnt);
  r.add("history", hist);
  if (!cc.stable) r.diagnostics.push_back("count changed under resolution doubling");
}

void cmd_isometry_check(const ARSSpec& spec, const ConfigDocument& c, const Settings& s, ResultRecord& r) {
  if (!c.automorphism) throw UsageError("missing key: automorphism");
  const int n = spec.dim();
  Mat P(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P(i, j) = (*c.automorphism)[static_cast<size_t>(i * n + j)].to_double();
  const ARSSpec target = c.target_spec();
  if (!target.validity().valid()) {
    r.exit_code = kExitValidation;
    for (const auto& f : target.validity().failures) r.diagnostics.push_back("target: " + f);
    return;
  }
  const auto samples = default_samples(spec.group());
  CandidateReport rep;
  try {
    rep = isometry_candidate_report(spec, target, P, samples, s.tol);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  r.add("accepted", rep.accepted() ? "true" : "false");
  r.add("distribution_ok", rep.distribution_ok ? "true" : "false");
  r.add("frame_orthogonal", rep.frame_orthogonal ? "true" : "false");
  r.add("derivation_sign", std::to_string(rep.derivation_sign));
  r.add("norms_ok", rep.norms_ok ? "true" : "false");
  r.add("max_norm_error", fmt(rep.max_norm_error));
}

}  // namespace

std::string ResultRecord::get(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  return {};
}

std::string ResultRecord::str() const {
  std::string out = "command = " + command + "\n";
  out += "digest = " + digest + "\n";
  out += "exit_code = " + std::to_string(exit_code) + "\n";
  for (const auto& [k, v] : fields) out += k + " = " + v + "\n";
  for (const auto& d : diagnostics) out += "diagnostic = " + d + "\n";
  return out;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"validate", "classify",   "locus",      "norm",          "flow",
                                                 "geodesic", "tangency",   "components", "isometry-check"};
  return names;
}

std::string fnv1a_hex(std::string_view data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ResultRecord run_command(std::string_view name, const ConfigDocument& config, const CommandFlags& flags) {
  ResultRecord r;
  r.command = std::string(name);
  const Settings s = settings_of(config, flags);
  r.digest = digest_of(name, config, s);
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    r.exit_code = kExitUsage;
    r.diagnostics.push_back("unknown command '" + std::string(name) + "'");
    return r;
  }
  if (s.box.first >= s.box.second) {
    r.exit_code = kExitUsage;
    r.diagnostics.push_back("box needs lo < hi");
    return r;
  }
  if (s.resolution < 1) {
    r.exit_code = kExitUsage;
    r.diagnostics.push_back("resolution must be positive");
    return r;
  }
  std::optional<ARSSpec> spec;
  try {
    spec = config.spec();
  } catch (const std::exception& e) {
    r.exit_code = kExitValidation;
    r.add("valid", "false");
    r.diagnostics.push_back(e.what());
    return r;
  }
  if (name == "validate") {
    cmd_validate(*spec, r);
    for (const auto& f : spec->validity().failures) r.diagnostics.push_back(f);
    if (!spec->validity().valid()) r.exit_code = kExitValidation;
    return r;
  }
  if (!spec->validity().valid()) {
    r.exit_code = kExitValidation;
    r.add("valid", "false");
    for (const auto& f : spec->validity().failures) r.diagnostics.push_back(f);
    return r;
  }
  try {
    if (name == "classify") cmd_classify(*spec, r);
    else if (name == "locus") cmd_locus(*spec, s, r);
    else if (name == "norm") cmd_norm(*spec, config, s, r);
    else if (name == "flow") cmd_flow(*spec, config, r);
    else if (name == "geodesic") cmd_geodesic(*spec, config, s, r);
    else if (name == "tangency") cmd_tangency(*spec, r);
    else if (name == "components") cmd_components(*spec, s, r);
    else cmd_isometry_check(*spec, config, s, r);
  } catch (const UsageError& e) {
    r.exit_code = kExitUsage;
    r.diagnostics.push_back(e.what());
  } catch (const std::invalid_argument& e) {
    r.exit_code = kExitUsage;
    r.diagnostics.push_back(e.what());
  }
  return r;
}

ResultRecord run_command_text(std::string_view name, std::string_view config_text, const CommandFlags& flags) {
  try {
    return run_command(name, parse_config(config_text), flags);
  } catch (const ConfigError& e) {
    ResultRecord r;
    r.command = std::string(name);
    r.digest = fnv1a_hex(std::string("command=") + std::string(name) + "\n" + std::string(config_text));
    r.exit_code = kExitUsage;
    r.diagnostics.push_back(e.what());
    return r;
  }
}

}  // namespace arskit
