#include <gtest/gtest.h>

#include "bpl/functional.hpp"

using namespace bpl;

namespace {

SpectralConfig cfg_for(int L, int n, std::uint64_t seed = 41) { return make_config(L, n, {0.37, 0.21}, seed); }

}  // namespace

TEST(Fn, VacuumSectorOnly) {
  const SpectralConfig cfg = cfg_for(3, 0);
  for (int s = 0; s <= 1; ++s)
    for (const auto& p : spectrum(cfg, s)) {
      const FnSampler f(cfg, p.left(), 0);
      const cplx f0 = f({});
      if (s == 0) EXPECT_GT(std::abs(f0), 1e-3);
      else EXPECT_LT(std::abs(f0), 1e-14);
    }
}

TEST(Fn, SectorMismatchWarns) {
  const SpectralConfig cfg = cfg_for(3, 1);
  const auto pairs = spectrum(cfg, 1);
  const FnSampler wrong(cfg, pairs[0].left(), 2);
  EXPECT_FALSE(wrong.warnings().empty());
  const FnSampler right(cfg, pairs[0]);
  EXPECT_TRUE(right.warnings().empty());
}

TEST(Fn, PermutationSymmetry) {
  const SpectralConfig cfg = cfg_for(4, 2);
  const std::vector<cplx> l{{0.2, 0.1}, {-0.35, 0.2}};
  const std::vector<cplx> r{l[1], l[0]};
  for (const auto& c : eigen_choices(cfg, 2)) {
    const FnSampler f(cfg, c.pair);
    EXPECT_LT(std::abs(f(l) - f(r)), 1e-12);
  }
}

TEST(Fn, TwoSitesByHand) {
  // B(λ)|↑↑⟩ = c a(λ−μ_1) |↑↓⟩ + c b(λ−μ_2) |↓↑⟩ with site 1 the leading bit.
  const SpectralConfig cfg = cfg_for(2, 1);
  const cplx c = weight_c(cfg.gamma);
  ComplexSampler draw(1);
  for (const auto& p : spectrum(cfg, 1)) {
    const FnSampler f(cfg, p);
    for (int t = 0; t < 3; ++t) {
      const cplx l = draw();
      const std::vector<cplx> ls{l};
      const cplx hand = p.left()(1) * c * weight_a(l - cfg.mu[0], cfg.gamma) + p.left()(2) * c * weight_b(l - cfg.mu[1]);
      EXPECT_LT(std::abs(compute_Fn(f, ls) - hand), 1e-14);
    }
  }
}

TEST(FzCoefficientsTest, EmptyProducts) {
  const SpectralConfig cfg = cfg_for(3, 0);
  const cplx l0{0.3, 0.2};
  cplx pa = 1.0, pb = 1.0;
  for (const cplx mu : cfg.mu) {
    pa *= std::sinh(l0 - mu + cfg.gamma);
    pb *= std::sinh(l0 - mu);
  }
  const FzCoefficients c = fz_coefficients(l0, {}, cfg);
  EXPECT_LT(std::abs(c.J0 - (pa + pb)), 1e-14);
  EXPECT_TRUE(c.K.empty());
}

TEST(FzCoefficientsTest, CoincidentRapidityGuard) {
  const SpectralConfig cfg = cfg_for(3, 1);
  const std::vector<cplx> l{{0.3, 0.2}};
  EXPECT_THROW(fz_coefficients({0.3, 0.2}, l, cfg), SingularCoefficientError);
  EXPECT_THROW(fz_coefficients({0.3 + 1e-9, 0.2}, l, cfg), SingularCoefficientError);
}

TEST(FzCoefficientsTest, DirectEvaluation) {
  const SpectralConfig cfg = cfg_for(3, 2);
  const cplx g = cfg.gamma;
  const cplx l0{0.11, -0.2};
  const std::vector<cplx> l{{0.4, 0.15}, {-0.3, 0.05}};
  auto a = [&](cplx u) { return std::sinh(u + g); };
  auto b = [&](cplx u) { return std::sinh(u); };
  auto pa = [&](cplx x) { return a(x - cfg.mu[0]) * a(x - cfg.mu[1]) * a(x - cfg.mu[2]); };
  auto pb = [&](cplx x) { return b(x - cfg.mu[0]) * b(x - cfg.mu[1]) * b(x - cfg.mu[2]); };
  const cplx J0 = pa(l0) * a(l[0] - l0) / b(l[0] - l0) * a(l[1] - l0) / b(l[1] - l0) +
                  pb(l0) * a(l0 - l[0]) / b(l0 - l[0]) * a(l0 - l[1]) / b(l0 - l[1]);
  const cplx K1 = pa(l[0]) * std::sinh(g) / b(l[0] - l0) * a(l[1] - l[0]) / b(l[1] - l[0]) +
                  pb(l[0]) * std::sinh(g) / b(l0 - l[0]) * a(l[0] - l[1]) / b(l[0] - l[1]);
  const FzCoefficients c = fz_coefficients(l0, l, cfg);
  EXPECT_LT(std::abs(c.J0 - J0) / std::abs(J0), 1e-12);
  EXPECT_LT(std::abs(c.K[0] - K1) / std::abs(K1), 1e-12);
}

TEST(FzResidualTest, VacuumSectorGivesEigenvalue) {
  const SpectralConfig cfg = cfg_for(3, 0);
  const auto choices = eigen_choices(cfg, 0);
  const FnSampler f(cfg, choices[0].pair);
  EXPECT_LT(check_fz_residual(f, {0.2, 0.3}, {}).relative, 1e-13);
}

TEST(FzResidualTest, TwoSitesAllEigenvectors) {
  const SpectralConfig cfg = cfg_for(2, 1);
  ComplexSampler draw(2);
  for (const auto& c : eigen_choices(cfg, 1)) {
    const FnSampler f(cfg, c.pair);
    for (int t = 0; t < 10; ++t) {
      const cplx l0 = draw();
      const std::vector<cplx> ls{draw()};
      const FzResidual r = check_fz_residual(f, l0, ls);
      EXPECT_LT(r.relative, 1e-9);
    }
  }
}

TEST(FzResidualTest, FourSitesTwoExcitations) {
  const SpectralConfig cfg = cfg_for(4, 2);
  ComplexSampler draw(3);
  for (const auto& c : eigen_choices(cfg, 2)) {
    const FnSampler f(cfg, c.pair);
    for (int t = 0; t < 5; ++t) {
      const cplx l0 = draw();
      const FzResidual r = check_fz_residual(f, l0, draw.draw(2));
      if (!r.vanishing) EXPECT_LT(r.relative, 1e-8);
    }
  }
}

TEST(Fbar, VacuumIsConstant) {
  const SpectralConfig cfg = cfg_for(3, 0);
  const auto choices = eigen_choices(cfg, 0);
  const FnSampler f(cfg, choices[0].pair);
  const PolyFit fit = extract_Fbar(f);
  EXPECT_EQ(fit.poly.nvars(), 0);
  EXPECT_LT(std::abs(fit.poly[0] - f({})), 1e-15);
}

TEST(Fbar, HeldOutPointsAndDegree) {
  for (auto [L, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {4, 2}}) {
    const SpectralConfig cfg = cfg_for(L, n);
    for (const auto& c : eigen_choices(cfg, n)) {
      const FnSampler f(cfg, c.pair);
      const PolyFit fit = extract_Fbar(f);
      EXPECT_LT(fit.holdout_error, 1e-9);
      const PolyFit wide = extract_Fbar(f, L);
      EXPECT_LT(excess_degree_coefficient(wide.poly, L - 1), 1e-9) << "L=" << L << " n=" << n;
    }
  }
}

TEST(Fbar, SymmetricInItsVariables) {
  const SpectralConfig cfg = cfg_for(4, 2);
  for (const auto& c : eigen_choices(cfg, 2)) {
    const PolyFit fit = extract_Fbar(FnSampler(cfg, c.pair));
    EXPECT_LT(asymmetry(fit.poly), 1e-10 * std::max(1.0, fit.poly.max_coefficient()));
  }
}

TEST(LambdaBar, DegreeL) {
  for (int L = 2; L <= 4; ++L) {
    const SpectralConfig cfg = cfg_for(L, 1);
    for (const auto& c : eigen_choices(cfg, 1)) {
      const LambdaBarFit lb = lambda_bar_coefficients(c.pair, cfg);
      EXPECT_EQ(lb.delta.size(), static_cast<std::size_t>(L + 1));
      EXPECT_LT(lb.top_excess, 1e-9);
      EXPECT_LT(lb.holdout_error, 1e-9);
    }
  }
}
