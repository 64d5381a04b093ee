#pragma once

// Run configuration, orchestration and report emission for the command line
// tool and the Python module.

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "krein/basis.hpp"

namespace krein::app {

enum class Mode { Spectrum, Count, BoundTable, Verify, Oracle };

std::string_view mode_name(Mode mode);
/// Throws ValidationError for unknown names.
Mode parse_mode(std::string_view name);

struct LambdaGrid {
  std::optional<double> min;
  std::optional<double> max;
  double ratio = 1.2;
  std::vector<double> explicit_values;
};

struct RunConfig {
  Mode mode = Mode::Spectrum;
  basis::DomainSpec domain = basis::DomainSpec::interval(0.0, 1.0);
  basis::BasisSpec basis;  ///< carries m, degree and resolution
  LambdaGrid lambdas;
  bool friedrichs = true;
  std::optional<std::size_t> how_many;
  int n_max = 3;
  int m_max = 3;
  std::uint64_t seed = 42;
  std::optional<std::string> out;

  /// Keys as written (after defaulting), in a fixed order.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Flat `key = value` document; several pairs may share a line, `#` starts a
/// comment. Throws ParseError with the offending line, or ValidationError for
/// values that violate a precondition. The basis is built once to fail fast.
/// A mode given by the caller replaces the `mode` key; the two must agree
/// when both are present.
RunConfig parse_config(std::string_view text, std::optional<Mode> mode = std::nullopt);

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Check {
  std::string name;
  std::string property;  ///< what the check certifies, in words
  bool passed = false;
  std::string detail;
};

struct RunReport {
  Mode mode = Mode::Spectrum;
  std::vector<std::pair<std::string, std::string>> config;
  Table table;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> timings;  ///< seconds

  bool all_passed() const;
  /// 0 when every check passed, 3 otherwise.
  int exit_code() const { return all_passed() ? 0 : 3; }
};

/// Runs the configured mode. Library errors propagate unchanged.
RunReport run(const RunConfig& config);

/// "%.12g" with a '.' separator regardless of locale.
std::string format_number(double x);
std::string to_csv(const Table& table);
/// JSON document mirroring the CSV, plus config echo, checks and timings.
std::string to_json(const RunReport& report);

/// 1 for configuration errors, 2 for numerical failures, 1 otherwise.
int exit_code_for_error(const std::exception& e);

}  // namespace krein::app
