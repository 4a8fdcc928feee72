#include "bpl/suites.hpp"

#include <algorithm>
#include <optional>

#include "bpl/dwbc.hpp"
#include "bpl/functional.hpp"
#include "bpl/omega.hpp"
#include "bpl/pde.hpp"
#include "bpl/reduction.hpp"
#include "bpl/yb_core.hpp"

namespace bpl {

using nlohmann::json;

namespace {

// Lazily shared between the omega, pde and reduction pieces of one run.
struct Context {
  SpectralConfig cfg;
  std::optional<OmegaFamily> family;

  const OmegaFamily& omegas() {
    if (!family) family = extract_omegas(cfg);
    return *family;
  }
};

double rel(cplx a, cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// Joint eigenfunction k of the family as a polynomial scaled to unit max coefficient.
MultiPoly joint_polynomial(const OmegaFamily& fam, std::size_t k) {
  MultiPoly p = from_basis_coordinates(fam.cfg.n, fam.cfg.L - 1, PolyBasis::Symmetric, fam.joint[k].vector);
  const double s = p.max_coefficient();
  if (s > 0.0) p *= cplx(1.0 / s);
  return p;
}

double closest_joint(const OmegaFamily& fam, int k, cplx delta) {
  double best = INFINITY;
  for (const auto& j : fam.joint) best = std::min(best, rel(j.delta[static_cast<std::size_t>(k)], delta));
  return best;
}

void ybe(Context& ctx, RunReport& r) {
  r.check("ybe.residual", 1e-11, [&] {
    ComplexSampler draw(ctx.cfg.seed);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) worst = std::max(worst, check_ybe(draw(), draw(), ctx.cfg.gamma));
    return worst;
  });
}

void rtt(Context& ctx, RunReport& r) {
  const SpectralConfig& cfg = ctx.cfg;
  r.check("rtt.relation", 1e-10, [&] {
    ComplexSampler draw(cfg.seed ^ 0x5a5aULL);
    double worst = 0.0;
    for (int t = 0; t < 3; ++t) worst = std::max(worst, check_rtt(draw(), draw(), cfg));
    return worst;
  });
  r.check("rtt.commuting_family", 1e-10, [&] {
    ComplexSampler draw(cfg.seed ^ 0xa5a5ULL);
    double worst = 0.0;
    for (int t = 0; t < 3; ++t) {
      const CMatrix tx = transfer(draw(), cfg).entries;
      const CMatrix ty = transfer(draw(), cfg).entries;
      worst = std::max(worst, relative_difference(tx * ty, ty * tx));
    }
    return worst;
  });
}

void off(Context& ctx, RunReport& r) {
  const SpectralConfig& cfg = ctx.cfg;
  ComplexSampler draw(cfg.seed ^ 0x0ffULL);
  OffResiduals worst;
  for (int t = 0; t < 3; ++t) {
    const cplx l0 = draw();
    const auto ls = draw.draw(static_cast<std::size_t>(cfg.n));
    const OffResiduals o = check_off_relations(l0, ls, cfg);
    worst.a_relation = std::max(worst.a_relation, o.a_relation);
    worst.d_relation = std::max(worst.d_relation, o.d_relation);
    worst.summed = std::max(worst.summed, o.summed);
  }
  r.check("off.a_relation", 1e-9, [&] { return worst.a_relation; });
  r.check("off.d_relation", 1e-9, [&] { return worst.d_relation; });
  r.check("off.summed", 1e-9, [&] { return worst.summed; });
}

void spectrum_suite(Context& ctx, RunReport& r) {
  const SpectralConfig& cfg = ctx.cfg;
  const cplx probe{0.3, 0.1};
  json table = json::array();
  r.check("spectrum.residual", cfg.tol, [&] {
    double worst = 0.0;
    for (const auto& p : spectrum(cfg, cfg.n)) {
      worst = std::max({worst, p.residual(probe), p.residual(-probe)});
      table.push_back(to_json(p.eigenvalue(probe)));
    }
    return worst;
  });
  r.tables["spectrum"] = {{"lambda", to_json(probe)}, {"eigenvalues", table}};
}

void fz(Context& ctx, RunReport& r) {
  const SpectralConfig& cfg = ctx.cfg;
  const auto choices = eigen_choices(cfg, cfg.n);
  double residual = 0.0, holdout = 0.0, excess = 0.0, lambda_excess = 0.0, lambda_holdout = 0.0;
  int vanishing = 0;
  ComplexSampler draw(cfg.seed ^ 0xf2ULL);
  for (const auto& c : choices) {
    const FnSampler s(cfg, c.pair);
    for (int t = 0; t < 5; ++t) {
      const cplx l0 = draw();
      const FzResidual f = check_fz_residual(s, l0, draw.draw(static_cast<std::size_t>(cfg.n)));
      if (f.vanishing) ++vanishing;
      else residual = std::max(residual, f.relative);
    }
    const PolyFit fit = extract_Fbar(s, cfg.L);
    holdout = std::max(holdout, fit.holdout_error);
    excess = std::max(excess, excess_degree_coefficient(fit.poly, cfg.L - 1));
    const LambdaBarFit lb = lambda_bar_coefficients(c.pair, cfg);
    lambda_excess = std::max(lambda_excess, lb.top_excess);
    lambda_holdout = std::max(lambda_holdout, lb.holdout_error);
  }
  r.check("fz.residual", 1e-8, [&] { return residual; });
  r.check("fz.fbar_holdout", 1e-9, [&] { return holdout; });
  r.check("fz.fbar_degree_excess", 1e-9, [&] { return excess; });
  r.check("fz.lambda_bar_degree_excess", 1e-9, [&] { return lambda_excess; });
  r.check("fz.lambda_bar_holdout", 1e-9, [&] { return lambda_holdout; });
  r.tables["fz"] = {{"eigenvectors", choices.size()}, {"vanishing_draws", vanishing}};
}

void omega_extract(Context& ctx, RunReport& r) {
  const OmegaFamily& fam = ctx.omegas();
  r.check("omega.commutators", 1e-9, [&] { return fam.max_commutator; });
  r.check("omega.top_scalar", 1e-9, [&] { return fam.top_scalar_residual; });
  r.check("omega.lbar_degree_excess", 1e-9, [&] { return fam.lbar.degree_excess; });
  r.check("omega.lbar_polynomiality", 1e-9, [&] { return fam.lbar.polynomiality_residual; });
  r.check("omega.lbar_symmetry", 1e-9, [&] { return fam.lbar.symmetry_residual; });
  json comm = json::array();
  for (Eigen::Index i = 0; i < fam.commutator_norms.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < fam.commutator_norms.cols(); ++j) row.push_back(fam.commutator_norms(i, j).real());
    comm.push_back(row);
  }
  json deltas = json::array();
  for (const auto& j : fam.joint) {
    json d = json::array();
    for (const cplx v : j.delta) d.push_back(to_json(v));
    deltas.push_back({{"delta", d}, {"residual", j.residual}});
  }
  r.tables["omega"] = {{"dimension", fam.omegas.empty() ? 0 : fam.omegas[0].dim()},
                       {"commutator_norms", comm},
                       {"top_scalar", to_json(fam.top_scalar)},
                       {"joint_spectrum", deltas},
                       {"defect", fam.defect}};
}

void omega_eigk(Context& ctx, RunReport& r) {
  const EigKReport rep = check_eigK(ctx.cfg, ctx.omegas());
  r.check("omega.eigk_residual", 1e-7, [&] { return rep.max_residual; });
  r.check("omega.eigk_containment", 1e-7, [&] { return rep.max_containment; });
  json rows = json::array();
  for (const auto& e : rep.entries) {
    json d = json::array();
    for (const cplx v : e.delta) d.push_back(to_json(v));
    rows.push_back({{"eigenvector", e.eigen_index}, {"vanishing", e.vanishing}, {"delta", d}, {"residual", e.residual}});
  }
  r.tables["eigk"] = {{"entries", rows}, {"surplus", rep.surplus}};
}

void omega_compare(Context& ctx, RunReport& r) {
  const ClosedformComparison c = compare_omega_closedform(ctx.cfg, ctx.omegas());
  r.check("omega.closedform_matrix", 1e-7, [&] { return c.matrix_difference; });
  r.check("omega.closedform_pointwise", 1e-7, [&] { return c.pointwise_difference; });
}

void pde_residual(Context& ctx, RunReport& r) {
  const SpectralConfig& cfg = ctx.cfg;
  r.check("pde.geometric_sum", 1e-12, [&] {
    double worst = 0.0;
    for (int l = -2; l <= 2 * cfg.L + 2 * cfg.n; ++l)
      worst = std::max(worst, rel(geometric_sum(cfg.q(), l), geometric_sum_closed(cfg.q(), l)));
    return worst;
  });
  r.check("pde.eigenfunction_residual", 1e-8, [&] {
    const OmegaFamily& fam = ctx.omegas();
    const auto points = random_points(cfg.n, 5, cfg.seed ^ 0x9dULL);
    double worst = 0.0;
    for (std::size_t k = 0; k < fam.joint.size(); ++k)
      worst = std::max(worst, closedform_residual(cfg, joint_polynomial(fam, k),
                                                  fam.joint[k].delta[static_cast<std::size_t>(cfg.L - 1)], points)
                                  .relative);
    return worst;
  });
}

SpectralConfig derived(const SpectralConfig& cfg, int L, int n) {
  if (cfg.L == L) {
    SpectralConfig c = cfg;
    c.n = n;
    return c;
  }
  SpectralConfig c = make_config(L, n, cfg.gamma, cfg.seed);
  c.tol = cfg.tol;
  return c;
}

void pde_special(Context& ctx, RunReport& r) {
  const SpectralConfig& cfg = ctx.cfg;
  json table = json::object();
  {
    const SpectralConfig c = derived(cfg, cfg.L, 0);
    const SpecialSolutions s = special_solutions(SpecialCase::N0, c);
    const std::vector<std::vector<cplx>> pts{{}};
    r.check("pde.special.n0_formula", 1e-10, [&] { return rel(s.deltas[0], eval_V(c, {})); });
    r.check("pde.special.n0_residual", 1e-10,
            [&] { return closedform_residual(c, s.eigenfunctions[0], s.deltas[0], pts).relative; });
    r.check("pde.special.n0_joint", 1e-8,
            [&] { return closest_joint(extract_omegas(c), c.L - 1, s.deltas[0]); });
    table["n0"] = to_json(s.deltas[0]);
  }
  {
    const SpectralConfig c = derived(cfg, 2, 1);
    const SpecialSolutions s = special_solutions(SpecialCase::N1L2, c);
    const auto pts = random_points(1, 5, c.seed ^ 0x11ULL);
    r.check("pde.special.n1l2_residual", 1e-10, [&] {
      return std::max(closedform_residual(c, s.eigenfunctions[0], s.deltas[0], pts).relative,
                      closedform_residual(c, s.eigenfunctions[1], s.deltas[1], pts).relative);
    });
    r.check("pde.special.n1l2_exponent", 1e-10, [&] {
      return std::max(std::abs(n1l2_exponent(c, s.deltas[0]) - 1.0), std::abs(n1l2_exponent(c, s.deltas[1]) + 1.0));
    });
    // The squared general solution is branch-free; with exponent ±1 it must
    // be a constant multiple of the squared polynomial.
    r.check("pde.special.n1l2_collapse", 1e-10, [&] {
      double worst = 0.0;
      for (std::size_t k = 0; k < 2; ++k) {
        std::vector<cplx> ratios;
        for (const auto& x : pts) {
          const cplx g = n1l2_general_solution(c, s.deltas[k], x[0]);
          const cplx p = poly_eval(s.eigenfunctions[k], x);
          ratios.push_back(g * g / (p * p));
        }
        for (const cplx v : ratios) worst = std::max(worst, rel(v, ratios[0]));
      }
      return worst;
    });
    r.check("pde.special.n1l2_joint", 1e-8, [&] {
      const OmegaFamily fam = extract_omegas(c);
      return std::max(closest_joint(fam, 1, s.deltas[0]), closest_joint(fam, 1, s.deltas[1]));
    });
    table["n1l2"] = {to_json(s.deltas[0]), to_json(s.deltas[1])};
  }
  {
    const SpectralConfig c = derived(cfg, 2, 2);
    const SpecialSolutions s = special_solutions(SpecialCase::N2L2, c);
    const auto pts = random_points(2, 5, c.seed ^ 0x22ULL);
    r.check("pde.special.n2l2_residual", 1e-10,
            [&] { return closedform_residual(c, s.eigenfunctions[0], s.deltas[0], pts).relative; });
    r.check("pde.special.n2l2_exponent", 1e-10, [&] { return std::abs(n2l2_exponent(c, s.deltas[0]) - 1.0); });
    r.check("pde.special.n2l2_zeta", 1e-12, [&] {
      double worst = 0.0;
      for (const auto& x : pts)
        worst = std::max(worst, rel(poly_eval(s.eigenfunctions[0], x), n2l2_zeta(c, x[0], x[1])));
      return worst;
    });
    r.check("pde.special.n2l2_characteristic", 1e-10, [&] {
      double worst = 0.0;
      for (const auto& x : pts) worst = std::max(worst, rel(eval_Q(c, 0, x) / eval_Q(c, 1, x), -x[0] / x[1]));
      return worst;
    });
    r.check("pde.special.n2l2_constant_potential", 1e-12, [&] {
      const PotentialAffine v = potential_affine(c);
      return std::abs(v.slope) / std::max(std::abs(v.constant), 1e-300);
    });
    r.check("pde.special.n2l2_joint", 1e-8, [&] { return closest_joint(extract_omegas(c), 1, s.deltas[0]); });
    table["n2l2"] = to_json(s.deltas[0]);
  }
  r.tables["special"] = table;
}

void reduction_suite(Context& ctx, RunReport& r) {
  const SpectralConfig& cfg = ctx.cfg;
  if (cfg.L < 3) throw InvalidArgument("reduction: the first-order system needs L >= 3");
  r.check("reduction.upsilon", 1e-8, [&] {
    const OmegaFamily& fam = ctx.omegas();
    const auto points = random_points(cfg.n, 5, cfg.seed ^ 0x7eULL);
    double worst = 0.0;
    for (std::size_t k = 0; k < fam.joint.size(); ++k) {
      const ReductionSystem sys = reduction_system(cfg, fam.joint[k].delta[static_cast<std::size_t>(cfg.L - 1)]);
      const UpsilonResidual u = upsilon_residual(sys, joint_polynomial(fam, k), points);
      worst = std::max({worst, u.relative, u.defining_rows});
    }
    return worst;
  });
  r.check("reduction.pde_row_equivalence", 1e-12, [&] {
    ComplexSampler draw(cfg.seed ^ 0xe9ULL);
    MultiPoly f(cfg.n, cfg.L - 1);
    for (auto& c : f.coeffs()) c = draw();
    const cplx delta = draw();
    const ReductionSystem sys = reduction_system(cfg, delta);
    const auto psi = build_psi(f, cfg.L);
    double worst = 0.0;
    for (const auto& x : random_points(cfg.n, 5, cfg.seed ^ 0xeaULL)) {
      const cplx direct = apply_closedform(cfg, f, x) - delta * poly_eval(f, x);
      worst = std::max(worst, rel(sys.apply(psi, x)(0), direct));
    }
    return worst;
  });
  r.tables["reduction"] = {{"dimension", (cfg.L - 2) * cfg.n + 1}};
}

void dwbc_partition_suite(Context& ctx, RunReport& r) {
  const SpectralConfig& cfg = ctx.cfg;
  ComplexSampler draw(cfg.seed ^ 0xdbULL);
  std::vector<std::vector<cplx>> draws;
  for (int t = 0; t < 3; ++t) draws.push_back(draw.draw(static_cast<std::size_t>(cfg.L)));
  json ratios = json::array();
  long visited = 0;
  r.check("dwbc.configuration_sum", 1e-10, [&] {
    double worst = 0.0;
    for (const auto& l : draws) {
      const ConfigurationCount c = dwbc_configuration_sum_counted(l, cfg);
      const cplx z = dwbc_partition(l, cfg);
      visited = c.configurations;
      ratios.push_back(to_json(z / c.value));
      worst = std::max(worst, rel(c.value, z));
    }
    return worst;
  });
  r.check("dwbc.permutation_symmetry", 1e-12, [&] {
    double worst = 0.0;
    for (auto l : draws) {
      const cplx z = dwbc_partition(l, cfg);
      std::reverse(l.begin(), l.end());
      worst = std::max(worst, rel(z, dwbc_partition(l, cfg)));
      if (l.size() > 1) {
        std::swap(l[0], l[1]);
        worst = std::max(worst, rel(z, dwbc_partition(l, cfg)));
      }
    }
    return worst;
  });
  r.tables["dwbc_partition"] = {{"normalization_ratios", ratios}, {"configurations", visited}};
}

void dwbc_pde_suite(Context& ctx, RunReport& r) {
  const DwbcResidual d = dwbc_pde_check(ctx.cfg);
  r.check("dwbc.pde_residual", 1e-8, [&] { return d.relative; });
  r.check("dwbc.zbar_holdout", 1e-9, [&] { return d.zbar_holdout; });
  r.check("dwbc.zbar_symmetry", 1e-9, [&] { return d.zbar_asymmetry; });
  r.check("dwbc.zbar_degree_excess", 1e-9, [&] { return d.zbar_excess_degree; });
}

void dwbc_upsilon_suite(Context& ctx, RunReport& r) {
  const SpectralConfig& cfg = ctx.cfg;
  if (cfg.L < 3) throw InvalidArgument("dwbc upsilon: the first-order system needs L >= 3");
  r.check("dwbc.upsilon", 1e-8, [&] {
    MultiPoly z = extract_Zbar(cfg).poly;
    z *= cplx(1.0 / z.max_coefficient());
    const ReductionSystem sys = dwbc_upsilon(cfg);
    const UpsilonResidual u = upsilon_residual(sys, z, random_points(cfg.L, 5, cfg.seed ^ 0xd7ULL));
    return std::max(u.relative, u.defining_rows);
  });
  r.tables["dwbc_upsilon"] = {{"dimension", cfg.L * (cfg.L - 2) + 1}};
}

using SuiteFn = void (*)(Context&, RunReport&);

const std::vector<std::pair<std::string, std::vector<SuiteFn>>>& registry() {
  static const std::vector<std::pair<std::string, std::vector<SuiteFn>>> r{
      {"ybe", {ybe}},
      {"rtt", {rtt}},
      {"off", {off}},
      {"spectrum", {spectrum_suite}},
      {"fz", {fz}},
      {"omega", {omega_extract, omega_eigk, omega_compare}},
      {"omega.extract", {omega_extract}},
      {"omega.eigk", {omega_eigk}},
      {"omega.compare", {omega_compare}},
      {"pde", {pde_residual, pde_special}},
      {"pde.residual", {pde_residual}},
      {"pde.special", {pde_special}},
      {"reduction", {reduction_suite}},
      {"dwbc", {dwbc_partition_suite, dwbc_pde_suite, dwbc_upsilon_suite}},
      {"dwbc.partition", {dwbc_partition_suite}},
      {"dwbc.pde", {dwbc_pde_suite}},
      {"dwbc.upsilon", {dwbc_upsilon_suite}},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    out.push_back("all");
    return out;
  }();
  return names;
}

RunReport run_suite(const SpectralConfig& cfg, const std::string& selector) {
  cfg.validate();
  Context ctx{cfg, std::nullopt};
  RunReport report;
  report.suite = selector;
  report.cfg = cfg;
  std::vector<SuiteFn> fns;
  if (selector == "all") {
    fns = {ybe, rtt, off, spectrum_suite, fz, omega_extract, omega_eigk, omega_compare, pde_residual, pde_special,
           dwbc_partition_suite, dwbc_pde_suite};
    if (cfg.L >= 3) {
      fns.push_back(reduction_suite);
      fns.push_back(dwbc_upsilon_suite);
    } else {
      report.tables["skipped"] = {"reduction", "dwbc.upsilon"};
    }
  } else {
    const auto& reg = registry();
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.first == selector; });
    if (it == reg.end()) throw InvalidArgument("unknown suite '" + selector + "'");
    fns = it->second;
  }
  for (const SuiteFn fn : fns) fn(ctx, report);
  report.sort();
  return report;
}

}  // namespace bpl
