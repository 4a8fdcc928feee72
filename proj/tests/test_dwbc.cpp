#include <gtest/gtest.h>

#include <algorithm>

#include "bpl/dwbc.hpp"
#include "bpl/pde.hpp"

using namespace bpl;

namespace {

SpectralConfig cfg_for(int L, std::uint64_t seed = 101) { return make_config(L, L, {0.37, 0.21}, seed); }

}  // namespace

TEST(Partition, SingleSiteIsTheCWeight) {
  const SpectralConfig cfg = cfg_for(1);
  const std::vector<cplx> l{{0.3, 0.1}};
  EXPECT_LT(std::abs(dwbc_partition(l, cfg) - std::sinh(cfg.gamma)), 1e-15);
}

TEST(Partition, PermutationSymmetry) {
  const SpectralConfig cfg = cfg_for(4);
  ComplexSampler draw(1);
  std::vector<cplx> l = draw.draw(4);
  const cplx z = dwbc_partition(l, cfg);
  std::sort(l.begin(), l.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  do {
    EXPECT_LT(std::abs(dwbc_partition(l, cfg) - z), 1e-12 * std::abs(z));
  } while (std::next_permutation(l.begin(), l.end(), [](cplx a, cplx b) { return a.real() < b.real(); }));
}

TEST(Partition, TwoSitesByHand) {
  const SpectralConfig cfg = cfg_for(2);
  const std::vector<cplx> l{{0.2, 0.1}, {-0.3, 0.25}};
  auto a = [&](int i, int j) { return weight_a(l[static_cast<std::size_t>(i)] - cfg.mu[static_cast<std::size_t>(j)], cfg.gamma); };
  auto b = [&](int i, int j) { return weight_b(l[static_cast<std::size_t>(i)] - cfg.mu[static_cast<std::size_t>(j)]); };
  const cplx c = weight_c(cfg.gamma);
  // B(λ2)|↑↑⟩ = c a(λ2−μ1)|↑↓⟩ + c b(λ2−μ2)|↓↑⟩, then
  // B(λ1)|↑↓⟩ = c a(λ1−μ2)|↓↓⟩ + … and B(λ1)|↓↑⟩ = c b(λ1−μ1)|↓↓⟩ + …
  const cplx hand = c * c * (a(1, 0) * a(0, 1) + b(1, 1) * b(0, 0));
  const cplx z = dwbc_partition(l, cfg);
  EXPECT_LT(std::abs(z - hand) / std::abs(z), 1e-14);
  const ConfigurationCount s = dwbc_configuration_sum_counted(l, cfg);
  EXPECT_EQ(s.configurations, 2);
  EXPECT_LT(std::abs(s.value - z) / std::abs(z), 1e-12);
}

TEST(Partition, ConfigurationSumAgrees) {
  ComplexSampler draw(2);
  for (int L = 1; L <= 4; ++L)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const SpectralConfig cfg = random_config(L, L, 500 + seed);
      const auto l = draw.draw(static_cast<std::size_t>(L));
      const cplx z = dwbc_partition(l, cfg);
      EXPECT_LT(std::abs(dwbc_configuration_sum(l, cfg) - z) / std::abs(z), 1e-10) << "L=" << L;
    }
}

TEST(Partition, AlternatingSignMatrixCount) {
  const SpectralConfig cfg = cfg_for(4);
  ComplexSampler draw(3);
  EXPECT_EQ(dwbc_configuration_sum_counted(draw.draw(4), cfg).configurations, 42);
}

TEST(Partition, CapacityAndShape) {
  SpectralConfig cfg = cfg_for(3);
  EXPECT_THROW(dwbc_partition(std::vector<cplx>(2, 0.1), cfg), InvalidArgument);
  cfg = make_config(kDwbcMaxL + 1, 1, {0.37, 0.21}, 1);
  EXPECT_THROW(dwbc_partition(std::vector<cplx>(static_cast<std::size_t>(cfg.L), 0.1), cfg), CapacityError);
}

TEST(Zbar, HeldOutDegreeAndSymmetry) {
  for (int L = 2; L <= 4; ++L) {
    const PolyFit fit = extract_Zbar(cfg_for(L));
    EXPECT_LT(fit.holdout_error, 1e-9);
    EXPECT_LT(excess_degree_coefficient(fit.poly, L - 1), 1e-9);
    EXPECT_LT(asymmetry(fit.poly), 1e-9 * fit.poly.max_coefficient());
  }
}

TEST(DwbcPde, ResidualOnSeveralDraws) {
  for (int L = 2; L <= 4; ++L)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const DwbcResidual r = dwbc_pde_check(random_config(L, L, 700 + seed), 10);
      EXPECT_LT(r.relative, 1e-8) << "L=" << L << " seed=" << seed;
    }
}

TEST(DwbcPde, ScaleInvariance) {
  const SpectralConfig cfg = cfg_for(3);
  const MultiPoly z = extract_Zbar(cfg).poly;
  const auto pts = random_points(3, 10, 4);
  const double r1 = dwbc_pde_residual(cfg, z, pts);
  const double r7 = dwbc_pde_residual(cfg, cplx(7.0) * z, pts);
  EXPECT_NEAR(r1, r7, 1e-14);
}

TEST(DwbcPde, OtherPolynomialsFail) {
  const SpectralConfig cfg = cfg_for(3);
  MultiPoly z = extract_Zbar(cfg).poly;
  z[0] += 0.5 * z.max_coefficient();
  EXPECT_GT(dwbc_pde_residual(cfg, z, random_points(3, 10, 5)), 1e-3);
}

TEST(DwbcPde, CoincidentVariablesRejected) {
  const SpectralConfig cfg = cfg_for(2);
  const std::vector<cplx> x{{0.4, 0.1}, {0.4, 0.1}};
  EXPECT_THROW(dwbc_Q(cfg, 1, x), SingularCoefficientError);
}

TEST(DwbcUpsilon, Dimension) {
  for (int L = 3; L <= 5; ++L) EXPECT_EQ(dwbc_upsilon(cfg_for(L)).dim(), L * (L - 2) + 1);
  EXPECT_THROW(dwbc_upsilon(cfg_for(2)), InvalidArgument);
}

TEST(DwbcUpsilon, AnnihilatesZbar) {
  for (int L = 3; L <= 4; ++L) {
    const SpectralConfig cfg = cfg_for(L);
    MultiPoly z = extract_Zbar(cfg).poly;
    z *= cplx(1.0 / z.max_coefficient());
    const UpsilonResidual r = upsilon_residual(dwbc_upsilon(cfg), z, random_points(L, 5, 6));
    EXPECT_EQ(r.defining_rows, 0.0);
    EXPECT_LT(r.relative, 1e-8) << "L=" << L;
  }
}
