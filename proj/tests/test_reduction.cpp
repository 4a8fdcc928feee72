#include <gtest/gtest.h>

#include "bpl/omega.hpp"
#include "bpl/pde.hpp"
#include "bpl/reduction.hpp"

using namespace bpl;

namespace {

SpectralConfig cfg_for(int L, int n, std::uint64_t seed = 97) { return make_config(L, n, {0.37, 0.21}, seed); }

MultiPoly random_poly(int nvars, int m, std::uint64_t seed) {
  ComplexSampler draw(seed);
  MultiPoly p(nvars, m);
  for (auto& c : p.coeffs()) c = draw();
  return p;
}

MultiPoly unit(MultiPoly p) {
  p *= cplx(1.0 / p.max_coefficient());
  return p;
}

}  // namespace

TEST(BuildPsi, ThreeSitesOneVariable) {
  const MultiPoly f = random_poly(1, 2, 1);
  const auto psi = build_psi(f, 3);
  ASSERT_EQ(psi.size(), 2u);
  const MultiPoly d = partial_derivative(f, 0, 1);
  for (std::size_t k = 0; k < d.size(); ++k) EXPECT_EQ(psi[1][k], d[k]);
}

TEST(BuildPsi, FourSitesTwoVariables) {
  const MultiPoly f = random_poly(2, 3, 2);
  const auto psi = build_psi(f, 4);
  ASSERT_EQ(psi.size(), 5u);
  for (int k = 1; k <= 2; ++k)
    for (int i = 0; i < 2; ++i) {
      const MultiPoly direct = partial_derivative(f, i, k);
      const MultiPoly& got = psi[static_cast<std::size_t>(1 + (k - 1) * 2 + i)];
      for (std::size_t c = 0; c < direct.size(); ++c) EXPECT_LT(std::abs(direct[c] - got[c]), 1e-14);
    }
  // The top block differentiated once more is ∂_i^{L−1} f.
  const MultiPoly top = partial_derivative(psi[3], 0, 1);
  const MultiPoly direct = partial_derivative(f, 0, 3);
  for (std::size_t c = 0; c < top.size(); ++c) EXPECT_LT(std::abs(top[c] - direct[c]), 1e-13);
}

TEST(BuildPsi, TwoSitesUnsupported) { EXPECT_THROW(build_psi(random_poly(1, 1, 3), 2), InvalidArgument); }

TEST(System, ShapeAudit) {
  for (auto [n, L] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {2, 4}, {3, 5}}) {
    const ReductionSystem sys = reduction_system(cfg_for(L, n), 0.0);
    EXPECT_EQ(sys.dim(), (L - 2) * n + 1);
    using K = ReductionSystem::EntryKind;
    const int last = 1 + (L - 3) * n;
    EXPECT_EQ(sys.entry(0, 0).kind, K::Multiply);
    for (int c = 1; c < sys.dim(); ++c) {
      const auto e = sys.entry(0, c);
      if (c >= last) {
        EXPECT_EQ(e.kind, K::Derivative);
        EXPECT_EQ(e.var, c - last);
      } else {
        EXPECT_EQ(e.kind, K::Zero);
      }
    }
    for (int r = 1; r < sys.dim(); ++r)
      for (int c = 0; c < sys.dim(); ++c) {
        const auto e = sys.entry(r, c);
        const int i = (r - 1) % n;
        if (r == c) EXPECT_EQ(e.kind, K::Multiply);
        else if ((r <= n && c == 0) || (r > n && c == r - n)) {
          EXPECT_EQ(e.kind, K::Derivative);
          EXPECT_EQ(e.var, i);
        } else {
          EXPECT_EQ(e.kind, K::Zero) << r << "," << c;
        }
      }
  }
}

TEST(System, DefiningRowsVanishForAnyPolynomial) {
  const SpectralConfig cfg = cfg_for(4, 2);
  const ReductionSystem sys = reduction_system(cfg, {0.3, -0.1});
  const UpsilonResidual r = upsilon_residual(sys, random_poly(2, 3, 4), random_points(2, 5, 5));
  EXPECT_EQ(r.defining_rows, 0.0);
}

TEST(System, PdeRowEqualsDirectEquation) {
  for (auto [n, L] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {2, 4}}) {
    const SpectralConfig cfg = cfg_for(L, n);
    const MultiPoly f = random_poly(n, L - 1, 6);
    const cplx delta{0.4, 0.9};
    const ReductionSystem sys = reduction_system(cfg, delta);
    const auto psi = build_psi(f, L);
    for (const auto& x : random_points(n, 5, 7)) {
      const cplx direct = apply_closedform(cfg, f, x) - delta * poly_eval(f, x);
      EXPECT_LT(std::abs(sys.apply(psi, x)(0) - direct), 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST(Upsilon, AnnihilatesJointEigenfunctions) {
  for (auto [n, L] : std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 4}}) {
    const SpectralConfig cfg = cfg_for(L, n);
    const OmegaFamily fam = extract_omegas(cfg);
    const auto pts = random_points(n, 5, 8);
    for (const auto& j : fam.joint) {
      const MultiPoly f = unit(from_basis_coordinates(n, L - 1, PolyBasis::Symmetric, j.vector));
      const UpsilonResidual r = upsilon_residual(reduction_system(cfg, j.delta[static_cast<std::size_t>(L - 1)]), f, pts);
      EXPECT_LT(std::max(r.relative, r.defining_rows), 1e-8) << "n=" << n << " L=" << L;
    }
  }
}

TEST(Upsilon, ShiftedEigenvalueIsDetected) {
  const SpectralConfig cfg = cfg_for(3, 1);
  const OmegaFamily fam = extract_omegas(cfg);
  const auto& j = fam.joint[0];
  const MultiPoly f = unit(from_basis_coordinates(1, 2, PolyBasis::Symmetric, j.vector));
  const UpsilonResidual r = upsilon_residual(reduction_system(cfg, j.delta[2] + 1.0), f, random_points(1, 5, 9));
  EXPECT_GT(r.relative, 1e-3);
}
