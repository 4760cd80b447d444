#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vidshift/spec.hpp"

namespace vidshift {

/// Named scalar parameters of one (kind, severity) cell, in a fixed order.
struct ParamSet {
  std::vector<std::pair<std::string, double>> values;

  /// Throws InvalidArgument if the parameter is absent.
  double get(std::string_view name) const;
  void set(std::string_view name, double value);

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

/// "name = value, name = value".
std::string to_string(const ParamSet& params);

/// Direction in which a parameter grows with perturbation strength.
enum class Trend { Increasing, Decreasing, Fixed };

struct ParamInfo {
  std::string_view name;
  Trend trend;
};

/// The parameters a kind reads from its ladder, in dump order.
std::vector<ParamInfo> ladder_params(Kind kind);

/// Per-kind 5-entry parameter tables.
///
/// `defaults()` is benchmark v1. A config file may override any subset of
/// cells; any table that differs from the defaults reports its version as
/// "custom-<hash of dump>".
class SeverityLadder {
 public:
  static const SeverityLadder& defaults();

  const ParamSet& at(Kind kind, int severity) const;
  double param(Kind kind, int severity, std::string_view name) const {
    return at(kind, severity).get(name);
  }
  void set(Kind kind, int severity, std::string_view name, double value);

  std::string version() const;

  /// Lines of "kind.severity.param = value" preceded by "version = ...".
  std::string dump() const;

  /// Applies a config on top of the defaults. Throws ParseError on malformed
  /// lines, unknown kinds, parameters or severities.
  static SeverityLadder parse(std::string_view text);
  static SeverityLadder load(const std::string& path);

  /// Human-readable descriptions of every non-strict step along a parameter's
  /// trend. Empty for the defaults.
  std::vector<std::string> monotonicity_violations() const;

  friend bool operator==(const SeverityLadder& a, const SeverityLadder& b) {
    return a.table_ == b.table_;
  }

 private:
  std::map<Kind, std::array<ParamSet, 5>> table_;
};

}  // namespace vidshift
