#pragma once

#include "arskit/config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arskit {

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitUsage = 3 };

/// Command-line overrides; each takes precedence over the matching config key.
struct CommandFlags {
  std::optional<double> tol;
  std::optional<std::pair<double, double>> box;
  std::optional<int> resolution;
  std::optional<double> slice;
};

struct ResultRecord {
  std::string command;
  std::string digest;
  int exit_code = kExitOk;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> diagnostics;
  /// Optional exports: locus `x,y[,z]`, geodesic `t,x,y[,z],lx,ly[,lz],H`.
  std::optional<std::string> csv;
  std::optional<std::string> svg;

  void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
  /// First value stored under key, or empty.
  std::string get(std::string_view key) const;
  /// `key = value` lines; identical inputs give identical text.
  std::string str() const;
};

const std::vector<std::string>& command_names();

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

/// Never throws for bad input; failures are reported through exit_code and diagnostics.
ResultRecord run_command(std::string_view name, const ConfigDocument& config, const CommandFlags& flags = {});

/// Parses the config text first; a parse error yields a usage-error record.
ResultRecord run_command_text(std::string_view name, std::string_view config_text, const CommandFlags& flags = {});

}  // namespace arskit
