#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bpl/config.hpp"

namespace bpl {

struct CheckRecord {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double wall_ms = 0.0;
  /// Error text when the check threw instead of producing a residual.
  std::string note;
};

struct RunReport {
  std::string suite;
  SpectralConfig cfg;
  std::vector<CheckRecord> checks;
  /// Suite-specific tables (eigenvalues, commutator norms, ...).
  nlohmann::json tables = nlohmann::json::object();

  bool passed() const;
  std::size_t failures() const;

  /// Runs `fn` (which returns a residual), times it and appends the record.
  /// Numerical failures (degeneracy, singular coefficients, contract
  /// violations) become failed records; other errors propagate.
  void check(const std::string& name, double tolerance, const std::function<double()>& fn);

  /// Sorts the checks by name and appends the records of `other`.
  void merge(RunReport other);
  void sort();
};

nlohmann::json to_json(cplx z);
nlohmann::json to_json(const SpectralConfig& cfg);
nlohmann::json to_json(const RunReport& report);

/// Parses a config document. Missing keys keep `base` values; wrong types or
/// invalid values raise ConfigError naming the field.
SpectralConfig config_from_json(const nlohmann::json& doc, const SpectralConfig& base);

/// Human-readable table, one line per check.
std::string format_table(const RunReport& report);

}  // namespace bpl
