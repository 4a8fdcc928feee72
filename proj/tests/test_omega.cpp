#include <gtest/gtest.h>

#include "bpl/omega.hpp"

using namespace bpl;

namespace {

SpectralConfig cfg_for(int L, int n, std::uint64_t seed = 59) { return make_config(L, n, {0.37, 0.21}, seed); }

std::size_t symmetric_dim(int n, int L) { return basis_exponents(n, L - 1, PolyBasis::Symmetric).size(); }

}  // namespace

TEST(Lbar, DegreeInX0IsL) {
  for (auto [n, L] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 4}}) {
    const LbarOperator op = build_Lbar(cfg_for(L, n));
    EXPECT_EQ(op.coefficients.size(), static_cast<std::size_t>(L + 1));
    EXPECT_LT(op.degree_excess, 1e-9);
    EXPECT_LT(op.polynomiality_residual, 1e-9);
    EXPECT_LT(op.symmetry_residual, 1e-9);
  }
}

TEST(Lbar, ReproducesEigenvalueOnFbar) {
  const SpectralConfig cfg = cfg_for(2, 1);
  ComplexSampler draw(4, 0.6, 0.6);
  for (const auto& c : eigen_choices(cfg, 1)) {
    const PolyFit fit = extract_Fbar(FnSampler(cfg, c.pair));
    for (int t = 0; t < 3; ++t) {
      const cplx l0 = draw();
      const cplx x0 = std::exp(2.0 * l0);
      const std::vector<cplx> x{std::exp(2.0 * draw())};
      const cplx lhs = apply_Lbar(fit.poly, x0, x, cfg);
      const cplx rhs = c.pair.eigenvalue(l0) * std::exp(2.0 * l0) * poly_eval(fit.poly, x);
      EXPECT_LT(std::abs(lhs - rhs) / std::abs(rhs), 1e-9);
    }
  }
}

TEST(Lbar, VacuumIsTheBarredEigenvalue) {
  const SpectralConfig cfg = cfg_for(3, 0);
  const auto pairs = spectrum(cfg, 0);
  const cplx l0{0.21, -0.17};
  const cplx x0 = std::exp(2.0 * l0);
  const MultiPoly one = MultiPoly::constant(0, 2, 1.0);
  const cplx expected = pairs[0].eigenvalue(l0) * std::exp(3.0 * l0);
  EXPECT_LT(std::abs(apply_Lbar(one, x0, {}, cfg) - expected) / std::abs(expected), 1e-12);
}

TEST(Lbar, PointwiseSlicesMatchOperators) {
  const SpectralConfig cfg = cfg_for(3, 2);
  const LbarOperator op = build_Lbar(cfg);
  ComplexSampler draw(5);
  MultiPoly p(2, 2);
  for (auto& c : p.coeffs()) c = draw();
  p = symmetrize(p);
  const std::vector<cplx> x{{0.8, 0.3}, {-0.4, 1.1}};
  for (int k = 0; k <= cfg.L; ++k) {
    const cplx a = omega_pointwise(p, k, x, cfg);
    const cplx b = poly_eval(op.coefficients[static_cast<std::size_t>(k)].apply(p), x);
    EXPECT_LT(std::abs(a - b) / std::max(1.0, std::abs(a)), 1e-9) << "k=" << k;
  }
}

TEST(Lbar, CapacityLimit) { EXPECT_THROW(build_Lbar(cfg_for(4, 3), 5), CapacityError); }

TEST(Omegas, CommuteAndTopIsScalar) {
  for (int L = 2; L <= 4; ++L)
    for (int n = 1; n <= std::min(3, L); ++n) {
      const OmegaFamily fam = extract_omegas(cfg_for(L, n));
      EXPECT_EQ(fam.omegas.size(), static_cast<std::size_t>(L + 1));
      EXPECT_LT(fam.max_commutator, 1e-9) << "n=" << n << " L=" << L;
      EXPECT_LT(fam.top_scalar_residual, 1e-9) << "n=" << n << " L=" << L;
      EXPECT_EQ(fam.joint.size(), symmetric_dim(n, L));
      EXPECT_EQ(fam.defect, 0);
    }
}

TEST(Omegas, TopScalarIsLeadingEigenvalueCoefficient) {
  const SpectralConfig cfg = cfg_for(2, 1);
  const OmegaFamily fam = extract_omegas(cfg);
  for (const auto& c : eigen_choices(cfg, 1)) {
    const LambdaBarFit lb = lambda_bar_coefficients(c.pair, cfg);
    EXPECT_LT(std::abs(lb.delta[2] - fam.top_scalar) / std::abs(fam.top_scalar), 1e-9);
  }
}

TEST(EigK, TwoSites) {
  const EigKReport r = check_eigK(cfg_for(2, 1));
  EXPECT_EQ(r.entries.size(), 2u);
  EXPECT_LT(r.max_residual, 1e-9);
  EXPECT_LT(r.max_containment, 1e-7);
}

TEST(EigK, FourSitesTwoExcitations) {
  const EigKReport r = check_eigK(cfg_for(4, 2));
  EXPECT_LT(r.max_residual, 1e-8);
  EXPECT_LT(r.max_containment, 1e-7);
  // Δ_L is shared by the whole sector.
  for (const auto& e : r.entries)
    EXPECT_LT(std::abs(e.delta.back() - r.entries[0].delta.back()) / std::abs(e.delta.back()), 1e-9);
  EXPECT_GE(r.surplus, 0);
}

TEST(EigK, WholeGridContainment) {
  for (int L = 2; L <= 4; ++L)
    for (int n = 1; n <= std::min(3, L); ++n) {
      const EigKReport r = check_eigK(cfg_for(L, n, 71));
      EXPECT_LT(r.max_residual, 1e-7) << "n=" << n << " L=" << L;
      EXPECT_LT(r.max_containment, 1e-7) << "n=" << n << " L=" << L;
    }
}

TEST(DeltaDistance, RelativeAboveOne) {
  const std::vector<cplx> a{0.5, 100.0};
  const std::vector<cplx> b{0.5 + 1e-3, 100.05};
  EXPECT_NEAR(delta_distance(a, b), 1e-3, 1e-9);
}
