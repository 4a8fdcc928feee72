#include "bpl/dwbc.hpp"

#include <algorithm>
#include <string>

#include "bpl/pde.hpp"
#include "bpl/yb_core.hpp"

namespace bpl {

namespace {

void require_dwbc(const SpectralConfig& cfg, std::size_t count) {
  if (cfg.L < 1) throw InvalidArgument("dwbc: L must be positive");
  if (cfg.L > kDwbcMaxL)
    throw CapacityError("dwbc: L = " + std::to_string(cfg.L) + " exceeds the oracle cap of " +
                        std::to_string(kDwbcMaxL));
  if (static_cast<int>(count) != cfg.L)
    throw InvalidArgument("dwbc: expected " + std::to_string(cfg.L) + " spectral parameters");
}

SpectralConfig with_n(SpectralConfig cfg) {
  cfg.n = cfg.L;
  return cfg;
}

CVector all_down_dual(int L) {
  CVector v = CVector::Zero(Eigen::Index{1} << L);
  v((Eigen::Index{1} << L) - 1) = 1.0;
  return v;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Row-by-row enumeration. Rows are applied bottom-up (B(λ_L) first); within a
// row the auxiliary line enters on the right in state 1 (down) and leaves on
// the left in state 0. Vertex weight: (PR)[(a', s'), (a, s)] = R[(s', a'), (a, s)].
struct Enumerator {
  const SpectralConfig& cfg;
  std::span<const cplx> lambdas;
  std::vector<CMatrix> r;  // r[row * L + site]
  long visited = 0;

  cplx rows(int row, const std::vector<int>& below) {
    if (row < 0) {
      ++visited;
      return std::all_of(below.begin(), below.end(), [](int s) { return s == 1; }) ? cplx(1.0) : cplx(0.0);
    }
    std::vector<int> above(below.size());
    return sites(row, 0, 0, below, above);
  }

  // `aux_left` is the auxiliary state to the left of `site`.
  cplx sites(int row, int site, int aux_left, const std::vector<int>& below, std::vector<int>& above) {
    const int L = cfg.L;
    if (site == L) return aux_left == 1 ? rows(row - 1, above) : cplx(0.0);
    cplx total = 0.0;
    const int s_in = below[static_cast<std::size_t>(site)];
    const CMatrix& R = r[static_cast<std::size_t>(row * L + site)];
    for (int s_out = 0; s_out < 2; ++s_out) {
      // Ice rule: a' + s' = a + s fixes the auxiliary state on the right.
      const int aux_right = aux_left + s_out - s_in;
      if (aux_right < 0 || aux_right > 1) continue;
      const cplx w = R(s_out * 2 + aux_left, aux_right * 2 + s_in);
      if (w == cplx{}) continue;
      above[static_cast<std::size_t>(site)] = s_out;
      total += w * sites(row, site + 1, aux_right, below, above);
    }
    return total;
  }
};

}  // namespace

cplx dwbc_partition(std::span<const cplx> lambdas, const SpectralConfig& cfg) {
  require_dwbc(cfg, lambdas.size());
  const CVector v = b_product_on_vacuum(lambdas, cfg);
  return v(v.size() - 1);
}

ConfigurationCount dwbc_configuration_sum_counted(std::span<const cplx> lambdas, const SpectralConfig& cfg) {
  require_dwbc(cfg, lambdas.size());
  const int L = cfg.L;
  Enumerator e{cfg, lambdas, {}, 0};
  for (int row = 0; row < L; ++row)
    for (int site = 0; site < L; ++site)
      e.r.push_back(r_matrix(lambdas[static_cast<std::size_t>(row)] - cfg.mu[static_cast<std::size_t>(site)], cfg.gamma)
                        .entries);
  const cplx value = e.rows(L - 1, std::vector<int>(static_cast<std::size_t>(L), 0));
  return {value, e.visited};
}

cplx dwbc_configuration_sum(std::span<const cplx> lambdas, const SpectralConfig& cfg) {
  return dwbc_configuration_sum_counted(lambdas, cfg).value;
}

FnSampler dwbc_sampler(const SpectralConfig& cfg) {
  if (cfg.L > kDwbcMaxL)
    throw CapacityError("dwbc: L = " + std::to_string(cfg.L) + " exceeds the oracle cap of " +
                        std::to_string(kDwbcMaxL));
  return FnSampler(with_n(cfg), all_down_dual(cfg.L), cfg.L);
}

// One node more than the expected degree, so the top coefficient measures the excess.
PolyFit extract_Zbar(const SpectralConfig& cfg) { return extract_Fbar(dwbc_sampler(cfg), cfg.L); }

cplx a_bar(cplx x, cplx y, cplx q) { return x * q - y / q; }

cplx dwbc_V(const SpectralConfig& cfg, std::span<const cplx> xs) {
  const cplx q = cfg.q();
  cplx s = 0.0;
  for (int i = 0; i < cfg.L; ++i) s += a_bar(xs[static_cast<std::size_t>(i)], cfg.y(i), q);
  return s;
}

cplx dwbc_Q(const SpectralConfig& cfg, int i, std::span<const cplx> xs) {
  const cplx q = cfg.q();
  const cplx xi = xs[static_cast<std::size_t>(i)];
  cplx out = -1.0 / factorial(cfg.L - 1);
  for (int j = 0; j < cfg.L; ++j) out *= a_bar(xi, cfg.y(j), q);
  for (int j = 0; j < cfg.L; ++j) {
    if (j == i) continue;
    const cplx xj = xs[static_cast<std::size_t>(j)];
    if (std::abs(xj - xi) < 1e-12 * std::max({std::abs(xi), std::abs(xj), 1.0}))
      throw SingularCoefficientError(i, j, "dwbc_Q: coincident variables x_" + std::to_string(i + 1) + " and x_" +
                                               std::to_string(j + 1));
    out *= a_bar(xj, xi, q) / (xj - xi);
  }
  return out;
}

double dwbc_pde_residual(const SpectralConfig& cfg, const MultiPoly& zbar,
                         std::span<const std::vector<cplx>> points) {
  double worst = 0.0;
  for (const auto& xs : points) {
    cplx total = dwbc_V(cfg, xs) * poly_eval(zbar, xs);
    double scale = std::abs(total);
    for (int i = 0; i < cfg.L; ++i) {
      const cplx term = dwbc_Q(cfg, i, xs) * poly_eval(partial_derivative(zbar, i, cfg.L - 1), xs);
      total += term;
      scale = std::max(scale, std::abs(term));
    }
    if (scale > 0.0) worst = std::max(worst, std::abs(total) / scale);
  }
  return worst;
}

DwbcResidual dwbc_pde_check(const SpectralConfig& cfg, int samples) {
  const PolyFit fit = extract_Zbar(cfg);
  DwbcResidual r;
  r.zbar_holdout = fit.holdout_error;
  r.zbar_asymmetry = asymmetry(fit.poly);
  r.zbar_excess_degree = excess_degree_coefficient(fit.poly, cfg.L - 1);
  const auto points = random_points(cfg.L, samples, cfg.seed ^ 0xd3b7ULL);
  r.relative = dwbc_pde_residual(cfg, fit.poly, points);
  return r;
}

ReductionSystem dwbc_upsilon(const SpectralConfig& cfg) {
  return ReductionSystem(
      cfg.L, cfg.L, [cfg](std::span<const cplx> x) { return dwbc_V(cfg, x); },
      [cfg](int i, std::span<const cplx> x) { return dwbc_Q(cfg, i, x); }, 0.0);
}

}  // namespace bpl
