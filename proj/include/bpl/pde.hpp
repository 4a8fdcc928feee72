#pragma once

#include <span>
#include <vector>

#include "bpl/config.hpp"
#include "bpl/omega.hpp"
#include "bpl/poly.hpp"

namespace bpl {

/// Σ_{k=0}^{upper} q^k by explicit summation; 0 when upper < 0.
cplx geometric_sum(cplx q, int upper);

/// (1 − q^{upper+1}) / (1 − q), the closed form of the same sum.
cplx geometric_sum_closed(cplx q, int upper);

/// e_m(values): the m-th elementary symmetric polynomial (e_0 = 1).
cplx elementary_symmetric(std::span<const cplx> values, int m);

/// Which case of ψ_{l,d} applies, relative to the edge d = L − (n+1) + 2l.
enum class PsiBranch { Above, EdgeLarge, EdgeSmall, Below };

PsiBranch psi_branch(int l, int d, int L, int n);
cplx psi(int l, int d, int L, int n, cplx q);

/// Potential of the Ω_{L−1} equation, affine in Σx_i:
/// V(x) = constant + slope · Σ_i x_i.
struct PotentialAffine {
  cplx constant;
  cplx slope;
};

PotentialAffine potential_affine(const SpectralConfig& cfg);

/// 𝒱^{(n)} at xs (n = xs.size()).
cplx eval_V(const SpectralConfig& cfg, std::span<const cplx> xs);

/// 𝒢^{(n)}_{L−d}(x_i; rest).
cplx eval_G(const SpectralConfig& cfg, int i, int d, std::span<const cplx> xs);

/// 𝒬^{(n)}_i at xs. Throws SingularCoefficientError when x_j ≈ x_i.
cplx eval_Q(const SpectralConfig& cfg, int i, std::span<const cplx> xs);

/// Precomputed pieces of the closed-form Ω_{L−1} equation.
struct PdeCoefficients {
  SpectralConfig cfg;
  PotentialAffine V;
  /// psi_table[l][d] = ψ_{l,d}, 0 ≤ l ≤ n−1, 0 ≤ d ≤ L.
  std::vector<std::vector<cplx>> psi_table;
};

PdeCoefficients pde_coefficients(const SpectralConfig& cfg);

/// (𝒱 + Σ_i 𝒬_i ∂_i^{L−1}) f at x.
cplx apply_closedform(const SpectralConfig& cfg, const MultiPoly& f, std::span<const cplx> xs);

struct ClosedformResidual {
  double relative = 0.0;
  double max_abs = 0.0;
};

/// max over `points` of |𝒱f + Σ𝒬_i∂_i^{L−1}f − Δf|, relative to the largest
/// term at each point.
ClosedformResidual closedform_residual(const SpectralConfig& cfg, const MultiPoly& f, cplx delta,
                                       std::span<const std::vector<cplx>> points);

/// `count` random points with pairwise distinct coordinates.
std::vector<std::vector<cplx>> random_points(int nvars, int count, std::uint64_t seed);

struct ClosedformComparison {
  /// Relative max-difference between the closed-form operator matrix and the
  /// extracted Ω_{L−1} on the symmetric subspace.
  double matrix_difference = 0.0;
  /// Same comparison pointwise on random non-symmetric polynomials.
  double pointwise_difference = 0.0;
  PolyOperator closedform;
};

/// Closed-form operator on the symmetric subspace of K^{L−1}[x], built by
/// sampling and interpolation like build_Lbar.
PolyOperator closedform_operator(const SpectralConfig& cfg);

ClosedformComparison compare_omega_closedform(const SpectralConfig& cfg, const OmegaFamily& family);
ClosedformComparison compare_omega_closedform(const SpectralConfig& cfg);

enum class SpecialCase { N0, N1L2, N2L2 };

struct SpecialSolutions {
  std::vector<MultiPoly> eigenfunctions;
  std::vector<cplx> deltas;
};

/// Polynomial eigenfunctions and Δ_{L−1} values of the three solvable cases:
/// n = 0 (any L), n = 1 with L = 2 (two solutions, upper sign first), and
/// n = 2 with L = 2.
SpecialSolutions special_solutions(SpecialCase which, const SpectralConfig& cfg);

/// n = 0: Δ_{L−1} = −(1 + q^{L−2}) Σ y_k / (2^L ∏ √y_k).
cplx n0_delta(const SpectralConfig& cfg);

/// n = 1, L = 2: the exponent −q/(q²−1)² [(1+q²)(y_1+y_2)/√(y_1y_2) + 4qΔ].
cplx n1l2_exponent(const SpectralConfig& cfg, cplx delta);

/// The general n = 1, L = 2 solution (q²x² − y_1y_2)^{1/2} exp(E·artanh(qx/√(y_1y_2)))
/// with unit integration constant and principal branches.
cplx n1l2_general_solution(const SpectralConfig& cfg, cplx delta, cplx x);

/// n = 2, L = 2: ζ(x_1, x_2) = q²(y_1+y_2)(x_1+x_2) − (1+q²)(y_1y_2 + q²x_1x_2).
cplx n2l2_zeta(const SpectralConfig& cfg, cplx x1, cplx x2);

/// n = 2, L = 2: exponent of ζ in the characteristic solution.
cplx n2l2_exponent(const SpectralConfig& cfg, cplx delta);

}  // namespace bpl
