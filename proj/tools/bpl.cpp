#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bpl/report.hpp"
#include "bpl/suites.hpp"

namespace {

enum Exit { kPass = 0, kCheckFailure = 1, kUsage = 2, kCapacity = 3 };

struct Options {
  std::string config_path;
  std::optional<int> L;
  std::optional<int> n;
  std::optional<double> gamma_re;
  std::optional<double> gamma_im;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out;
  bool json = false;
};

bpl::SpectralConfig load_config(const Options& o) {
  bpl::SpectralConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw bpl::ConfigError("config", "cannot open '" + o.config_path + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw bpl::ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    cfg = bpl::config_from_json(doc, cfg);
  }
  if (o.L) cfg.L = *o.L;
  if (o.n) cfg.n = *o.n;
  if (o.gamma_re) cfg.gamma.real(*o.gamma_re);
  if (o.gamma_im) cfg.gamma.imag(*o.gamma_im);
  if (o.seed) cfg.seed = *o.seed;
  if (o.tol) cfg.tol = *o.tol;
  if (cfg.mu.empty() && cfg.L >= 1) cfg.mu = bpl::make_config(cfg.L, 0, cfg.gamma, cfg.seed).mu;
  cfg.validate();
  bpl::require_dense_capacity(cfg.L);
  return cfg;
}

int run(const Options& o, const std::string& selector) {
  const bpl::SpectralConfig cfg = load_config(o);
  const bpl::RunReport report = bpl::run_suite(cfg, selector);
  const std::string doc = bpl::to_json(report).dump(2);
  if (o.json)
    std::cout << doc << "\n";
  else
    std::cout << bpl::format_table(report);
  if (!o.out.empty()) {
    std::ofstream out(o.out);
    if (!out) throw bpl::ConfigError("out", "cannot write '" + o.out + "'");
    out << doc << "\n";
  }
  return report.passed() ? kPass : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Six-vertex model verification lab"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--L", o.L, "Lattice length");
  app.add_option("--n", o.n, "Number of B operators (down spins)");
  app.add_option("--gamma-re", o.gamma_re, "Re(gamma)");
  app.add_option("--gamma-im", o.gamma_im, "Im(gamma)");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--tol", o.tol, "Eigenpair residual tolerance");
  app.add_option("--out", o.out, "Write the JSON report to this path");
  app.add_flag("--json", o.json, "Print the JSON report instead of the table");

  std::string selector;
  auto with_choice = [&](const std::string& name, const std::string& help, std::vector<std::string> choices,
                         bool required) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    auto* opt = sub->add_option("check", selector, "Which check group")->check(CLI::IsMember(choices));
    if (required) opt->required();
    return sub;
  };
  auto* verify = with_choice("verify", "Yang-Baxter, RTT and higher-degree relations", {"ybe", "rtt", "off"}, true);
  auto* spectrum = app.add_subcommand("spectrum", "Transfer-matrix eigenpairs in sector n")->fallthrough();
  auto* fz = app.add_subcommand("fz", "Functional equation and polynomial structure")->fallthrough();
  auto* omega = with_choice("omega", "Commuting operator family", {"extract", "eigk", "compare"}, false);
  auto* pde = with_choice("pde", "Closed-form PDE", {"residual", "special"}, false);
  auto* reduce = app.add_subcommand("reduce", "First-order reduction")->fallthrough();
  auto* dwbc = with_choice("dwbc", "Domain-wall partition function", {"partition", "pde", "upsilon"}, false);
  auto* all = app.add_subcommand("all", "Every suite")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  std::string suite;
  if (verify->parsed()) suite = selector;
  else if (spectrum->parsed()) suite = "spectrum";
  else if (fz->parsed()) suite = "fz";
  else if (omega->parsed()) suite = selector.empty() ? "omega" : "omega." + selector;
  else if (pde->parsed()) suite = selector.empty() ? "pde" : "pde." + selector;
  else if (reduce->parsed()) suite = "reduction";
  else if (dwbc->parsed()) suite = selector.empty() ? "dwbc" : "dwbc." + selector;
  else if (all->parsed()) suite = "all";

  try {
    return run(o, suite);
  } catch (const bpl::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const bpl::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const bpl::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const bpl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailure;
  }
}
