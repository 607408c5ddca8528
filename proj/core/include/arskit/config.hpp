#pragma once

#include "arskit/metric.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arskit {

/// Parse failure; line() is 0 for document-level problems such as a missing key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/**
 * @brief Parsed `key = value` document describing one ARS plus optional command inputs.
 *
 * Derivation parameters follow the shapes [[0,0],[a,b]] (aff2) and
 * [[a,b,0],[c,d,0],[e,f,a+d]] (heis3). Frame vectors are algebra coordinates.
 */
struct ConfigDocument {
  GroupTag group = GroupTag::heis3;
  std::vector<Surd> derivation;
  std::vector<std::vector<Surd>> frame;

  std::optional<double> tol;
  std::optional<std::pair<double, double>> box;
  std::optional<int> resolution;
  std::optional<double> slice;

  std::optional<std::vector<double>> point;
  std::optional<std::vector<double>> vector;
  std::optional<std::vector<double>> covector;
  std::optional<double> time;
  std::optional<int> steps;
  /// Row-major n*n entries.
  std::optional<std::vector<Surd>> automorphism;
  std::optional<std::vector<Surd>> target_derivation;
  std::optional<std::vector<std::vector<Surd>>> target_frame;

  /// Normalized `key = value` lines in key order, used for digests.
  std::map<std::string, std::string> entries;

  ExactMat derivation_matrix() const;
  /// Throws std::invalid_argument when D is not a derivation or sizes disagree.
  ARSSpec spec() const;
  /// Target structure for isometry checks; the source structure when no target keys are given.
  ARSSpec target_spec() const;
};

/// Throws ConfigError on unknown or duplicate keys, malformed values, and missing required keys.
ConfigDocument parse_config(std::string_view text);

/// Parses "a,b" into a box side.
std::pair<double, double> parse_box_side(std::string_view text);

/// Accepts "c" or "z=c".
double parse_slice(std::string_view text);

}  // namespace arskit
