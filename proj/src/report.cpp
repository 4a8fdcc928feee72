#include "bpl/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bpl {

using nlohmann::json;

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; });
}

std::size_t RunReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return !c.passed; }));
}

void RunReport::check(const std::string& name, double tolerance, const std::function<double()>& fn) {
  CheckRecord rec;
  rec.name = name;
  rec.tolerance = tolerance;
  const auto start = std::chrono::steady_clock::now();
  try {
    rec.residual = fn();
    rec.passed = std::isfinite(rec.residual) && rec.residual < tolerance;
  } catch (const DegeneracyError& e) {
    rec.residual = INFINITY;
    rec.note = e.what();
  } catch (const SingularCoefficientError& e) {
    rec.residual = INFINITY;
    rec.note = e.what();
  } catch (const ContractViolation& e) {
    rec.residual = INFINITY;
    rec.note = e.what();
  }
  rec.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  checks.push_back(std::move(rec));
}

void RunReport::sort() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
}

void RunReport::merge(RunReport other) {
  for (auto& c : other.checks) checks.push_back(std::move(c));
  for (auto& [k, v] : other.tables.items()) tables[k] = std::move(v);
  sort();
}

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const SpectralConfig& cfg) {
  json mu = json::array();
  for (const cplx m : cfg.mu) mu.push_back(to_json(m));
  return json{{"L", cfg.L}, {"n", cfg.n}, {"gamma", to_json(cfg.gamma)}, {"mu", mu}, {"tol", cfg.tol}, {"seed", cfg.seed}};
}

json to_json(const RunReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json rec{{"name", c.name},
             {"residual", std::isfinite(c.residual) ? json(c.residual) : json(nullptr)},
             {"tolerance", c.tolerance},
             {"passed", c.passed},
             {"wall_ms", c.wall_ms}};
    if (!c.note.empty()) rec["note"] = c.note;
    checks.push_back(std::move(rec));
  }
  return json{{"suite", report.suite},
              {"config", to_json(report.cfg)},
              {"checks", checks},
              {"tables", report.tables},
              {"summary", {{"passed", report.passed()}, {"total", report.checks.size()}, {"failed", report.failures()}}}};
}

namespace {

cplx complex_field(const json& v, const std::string& field) {
  if (!v.is_object() || !v.contains("re") || !v["re"].is_number() || (v.contains("im") && !v["im"].is_number()))
    throw ConfigError(field, "expected {\"re\": number, \"im\": number}");
  return {v["re"].get<double>(), v.value("im", 0.0)};
}

}  // namespace

SpectralConfig config_from_json(const json& doc, const SpectralConfig& base) {
  if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
  SpectralConfig cfg = base;
  if (doc.contains("L")) {
    if (!doc["L"].is_number_integer()) throw ConfigError("L", "expected an integer");
    cfg.L = doc["L"].get<int>();
  }
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer()) throw ConfigError("n", "expected an integer");
    cfg.n = doc["n"].get<int>();
  }
  if (doc.contains("gamma")) cfg.gamma = complex_field(doc["gamma"], "gamma");
  if (doc.contains("tol")) {
    if (!doc["tol"].is_number()) throw ConfigError("tol", "expected a number");
    cfg.tol = doc["tol"].get<double>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("mu")) {
    if (!doc["mu"].is_array()) throw ConfigError("mu", "expected a list of {re, im}");
    cfg.mu.clear();
    for (const auto& m : doc["mu"]) cfg.mu.push_back(complex_field(m, "mu"));
  }
  return cfg;
}

std::string format_table(const RunReport& report) {
  std::ostringstream os;
  std::size_t width = 5;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());
  char line[256];
  std::snprintf(line, sizeof line, "%-*s  %12s  %10s  %9s  %s\n", static_cast<int>(width), "check", "residual",
                "tolerance", "ms", "status");
  os << line;
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-*s  %12.3e  %10.1e  %9.1f  %s\n", static_cast<int>(width), c.name.c_str(),
                  c.residual, c.tolerance, c.wall_ms, c.passed ? "pass" : "FAIL");
    os << line;
    if (!c.note.empty()) os << "    " << c.note << "\n";
  }
  os << report.suite << ": " << (report.checks.size() - report.failures()) << "/" << report.checks.size()
     << " checks passed\n";
  return os.str();
}

}  // namespace bpl
