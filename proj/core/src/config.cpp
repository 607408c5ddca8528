#include "arskit/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>

namespace arskit {

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Surd number(const std::string& text, int line) {
  try {
    return Surd::parse(text);
  } catch (const std::exception&) {
    throw ConfigError(line, "malformed number '" + text + "'");
  }
}

double real(const std::string& text, int line) {
  const double v = number(text, line).to_double();
  if (!std::isfinite(v)) throw ConfigError(line, "number out of range '" + text + "'");
  return v;
}

std::vector<Surd> numbers(const std::string& text, int line) {
  std::vector<Surd> out;
  for (const auto& part : split(text, ',')) out.push_back(number(part, line));
  return out;
}

std::vector<double> reals(const std::string& text, int line) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(real(part, line));
  return out;
}

int integer(const std::string& text, int line) {
  const Surd v = number(text, line);
  if (!v.is_rational() || v.to_rational().get_den() != 1 || std::abs(v.to_double()) > 1e9)
    throw ConfigError(line, "expected an integer, got '" + text + "'");
  return static_cast<int>(v.to_rational().get_num().get_si());
}

const char* const kLetters[] = {"a", "b", "c", "d", "e", "f"};

ExactMat build_derivation(GroupTag group, const std::vector<Surd>& p) {
  return derivation_space(LieAlgebraModel::get(group)).make(p);
}

std::vector<ExactMat> build_frame(const std::vector<std::vector<Surd>>& frame) {
  std::vector<ExactMat> out;
  for (const auto& v : frame) out.push_back(ExactMat::column(v));
  return out;
}

}  // namespace

std::pair<double, double> parse_box_side(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw std::invalid_argument("box expects 'lo,hi'");
  const double lo = Surd::parse(parts[0]).to_double();
  const double hi = Surd::parse(parts[1]).to_double();
  if (!(lo < hi)) throw std::invalid_argument("box needs lo < hi");
  return {lo, hi};
}

double parse_slice(std::string_view text) {
  std::string t = trim(text);
  if (t.size() > 1 && (t[0] == 'z' || t[0] == 'Z')) {
    const std::string rest = trim(std::string_view(t).substr(1));
    if (rest.empty() || rest[0] != '=') throw std::invalid_argument("slice expects 'z=c'");
    t = trim(std::string_view(rest).substr(1));
  }
  return Surd::parse(t).to_double();
}

ExactMat ConfigDocument::derivation_matrix() const { return build_derivation(group, derivation); }

ARSSpec ConfigDocument::spec() const { return ARSSpec::create(group, derivation_matrix(), build_frame(frame)); }

ARSSpec ConfigDocument::target_spec() const {
  if (!target_derivation && !target_frame) return spec();
  const ExactMat D = target_derivation ? build_derivation(group, *target_derivation) : derivation_matrix();
  return ARSSpec::create(group, D, build_frame(target_frame ? *target_frame : frame));
}

ConfigDocument parse_config(std::string_view text) {
  ConfigDocument doc;
  std::map<std::string, std::pair<std::string, int>> raw;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t end = text.find('\n', start);
    std::string line(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (const size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "empty key");
    if (value.empty()) throw ConfigError(line_no, "empty value for '" + key + "'");
    if (raw.count(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");
    raw.emplace(key, std::make_pair(value, line_no));
  }

  auto it = raw.find("group");
  if (it == raw.end()) throw ConfigError(0, "missing key: group");
  try {
    doc.group = parse_group_tag(it->second.first);
  } catch (const std::exception&) {
    throw ConfigError(it->second.second, "unknown group '" + it->second.first + "'");
  }
  const int n = dimension(doc.group);
  const int nparams = doc.group == GroupTag::aff2 ? 2 : 6;

  std::set<std::string> known = {"group", "tol", "box", "resolution", "slice", "point", "vector",
                                 "covector", "time", "steps", "automorphism"};
  for (int i = 0; i < nparams; ++i) {
    known.insert(std::string("derivation.") + kLetters[i]);
    known.insert(std::string("target.derivation.") + kLetters[i]);
  }
  for (int i = 1; i < n; ++i) {
    known.insert("frame." + std::to_string(i));
    known.insert("target.frame." + std::to_string(i));
  }
  for (const auto& [key, v] : raw)
    if (!known.count(key)) throw ConfigError(v.second, "unknown key '" + key + "' for group " + std::string(to_string(doc.group)));

  auto vector_of = [&](const std::string& key, size_t size) {
    const auto& [value, line] = raw.at(key);
    auto v = numbers(value, line);
    if (v.size() != size)
      throw ConfigError(line, key + " expects " + std::to_string(size) + " values, got " + std::to_string(v.size()));
    return v;
  };
  auto reals_of = [&](const std::string& key, size_t size) {
    const auto& [value, line] = raw.at(key);
    auto v = reals(value, line);
    if (v.size() != size)
      throw ConfigError(line, key + " expects " + std::to_string(size) + " values, got " + std::to_string(v.size()));
    return v;
  };

  for (int i = 0; i < nparams; ++i) {
    const std::string key = std::string("derivation.") + kLetters[i];
    auto f = raw.find(key);
    if (f == raw.end()) throw ConfigError(0, "missing key: " + key);
    doc.derivation.push_back(number(f->second.first, f->second.second));
  }
  for (int i = 1; i < n; ++i) {
    const std::string key = "frame." + std::to_string(i);
    if (!raw.count(key)) throw ConfigError(0, "missing key: " + key);
    doc.frame.push_back(vector_of(key, static_cast<size_t>(n)));
  }

  bool any_target_d = false, any_target_f = false;
  std::vector<Surd> td(static_cast<size_t>(nparams));
  for (int i = 0; i < nparams; ++i) {
    auto f = raw.find(std::string("target.derivation.") + kLetters[i]);
    if (f == raw.end()) continue;
    any_target_d = true;
    td[static_cast<size_t>(i)] = number(f->second.first, f->second.second);
  }
  if (any_target_d) {
    for (int i = 0; i < nparams; ++i)
      if (!raw.count(std::string("target.derivation.") + kLetters[i]))
        throw ConfigError(0, std::string("missing key: target.derivation.") + kLetters[i]);
    doc.target_derivation = td;
  }
  std::vector<std::vector<Surd>> tf;
  for (int i = 1; i < n; ++i) {
    const std::string key = "target.frame." + std::to_string(i);
    if (!raw.count(key)) continue;
    any_target_f = true;
    tf.push_back(vector_of(key, static_cast<size_t>(n)));
  }
  if (any_target_f) {
    if (static_cast<int>(tf.size()) != n - 1) throw ConfigError(0, "target.frame needs all " + std::to_string(n - 1) + " vectors");
    doc.target_frame = tf;
  }

  if (auto f = raw.find("tol"); f != raw.end()) {
    doc.tol = real(f->second.first, f->second.second);
    if (!(*doc.tol > 0)) throw ConfigError(f->second.second, "tol must be positive");
  }
  if (auto f = raw.find("box"); f != raw.end()) {
    try {
      doc.box = parse_box_side(f->second.first);
    } catch (const std::exception& e) {
      throw ConfigError(f->second.second, e.what());
    }
  }
  if (auto f = raw.find("resolution"); f != raw.end()) {
    doc.resolution = integer(f->second.first, f->second.second);
    if (*doc.resolution < 1) throw ConfigError(f->second.second, "resolution must be positive");
  }
  if (auto f = raw.find("slice"); f != raw.end()) {
    try {
      doc.slice = parse_slice(f->second.first);
    } catch (const std::exception&) {
      throw ConfigError(f->second.second, "malformed slice '" + f->second.first + "'");
    }
  }
  if (raw.count("point")) doc.point = reals_of("point", static_cast<size_t>(n));
  if (raw.count("vector")) doc.vector = reals_of("vector", static_cast<size_t>(n));
  if (raw.count("covector")) doc.covector = reals_of("covector", static_cast<size_t>(n));
  if (auto f = raw.find("time"); f != raw.end()) doc.time = real(f->second.first, f->second.second);
  if (auto f = raw.find("steps"); f != raw.end()) {
    doc.steps = integer(f->second.first, f->second.second);
    if (*doc.steps < 1) throw ConfigError(f->second.second, "steps must be at least 1");
  }
  if (raw.count("automorphism")) doc.automorphism = vector_of("automorphism", static_cast<size_t>(n * n));

  for (const auto& [key, v] : raw) {
    std::string norm;
    for (const auto& part : split(v.first, ',')) norm += (norm.empty() ? "" : ",") + part;
    doc.entries.emplace(key, norm);
  }
  return doc;
}

}  // namespace arskit
