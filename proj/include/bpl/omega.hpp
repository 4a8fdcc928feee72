#pragma once

#include <span>
#include <vector>

#include "bpl/config.hpp"
#include "bpl/functional.hpp"
#include "bpl/poly.hpp"

namespace bpl {

/// J̄_0 = J_0 x_0^{L/2} and K̄_{x_i} = K_{λ_i} x_0^{1/2} x_i^{(L−1)/2}, with the
/// half-integer powers taken as exponentials of λ = log(x)/2.
struct BarredCoefficients {
  cplx J0;
  std::vector<cplx> K;
};

BarredCoefficients barred_coefficients(cplx x0, std::span<const cplx> xs, const SpectralConfig& cfg);

/// (𝔏̄(x_0) p)(x) = J̄_0 p(x) − Σ_i K̄_{x_i} (D^{x_0}_{x_i} p)(x), with D realized
/// by the truncated Taylor sum.
cplx apply_Lbar(const MultiPoly& p, cplx x0, std::span<const cplx> xs, const SpectralConfig& cfg);

/// Coefficient of x_0^k in (𝔏̄(x_0) p)(x). Defined for any p, including
/// non-symmetric ones where the result is rational in x.
cplx omega_pointwise(const MultiPoly& p, int k, std::span<const cplx> xs, const SpectralConfig& cfg);

/// 𝔏̄(x_0) = Σ_k x_0^k Ω_k as PolyOperators on the symmetric subspace of
/// K^{L−1}[x].
struct LbarOperator {
  int n = 0;
  int L = 0;
  std::vector<PolyOperator> coefficients;
  /// Size of the x_0^{L+1} coefficient relative to the others (should be 0).
  double degree_excess = 0.0;
  /// Held-out mismatch between Σ_k x_0^k Ω_k p and direct evaluation.
  double polynomiality_residual = 0.0;
  /// Worst asymmetry of an interpolated image of a symmetric basis element.
  double symmetry_residual = 0.0;
  double condition = 1.0;
};

/// Builds 𝔏̄ by sampling on grids whose coordinates never coincide and
/// interpolating. Requires the symmetric dimension to stay within
/// `max_dim` (CapacityError otherwise).
LbarOperator build_Lbar(const SpectralConfig& cfg, std::size_t max_dim = 4096);

struct JointEigen {
  std::vector<cplx> delta;
  CVector vector;
  double residual = 0.0;
};

struct OmegaFamily {
  SpectralConfig cfg;
  std::vector<PolyOperator> omegas;
  /// Relative commutator norms ‖Ω_iΩ_j − Ω_jΩ_i‖ / max(‖Ω_iΩ_j‖, ‖Ω_jΩ_i‖).
  CMatrix commutator_norms;
  double max_commutator = 0.0;
  /// ‖Ω_L − c·1‖ / |c| with c the mean diagonal entry.
  double top_scalar_residual = 0.0;
  cplx top_scalar;
  std::vector<JointEigen> joint;
  /// Joint eigenvectors whose residual exceeds 1e-6.
  int defect = 0;
  LbarOperator lbar;
};

OmegaFamily extract_omegas(const SpectralConfig& cfg);

struct EigKEntry {
  std::size_t eigen_index = 0;
  bool vanishing = false;
  std::vector<cplx> delta;
  /// max_k ‖Ω_k F̄ − Δ_k F̄‖, relative.
  double residual = 0.0;
  /// Distance from (Δ_0..Δ_L) to the closest joint eigenvalue vector.
  double containment = 0.0;
  double fbar_holdout = 0.0;
};

struct EigKReport {
  std::vector<EigKEntry> entries;
  double max_residual = 0.0;
  double max_containment = 0.0;
  /// Joint eigenvalue vectors not matched by any transfer eigenvector.
  int surplus = 0;
};

EigKReport check_eigK(const SpectralConfig& cfg, const OmegaFamily& family);
EigKReport check_eigK(const SpectralConfig& cfg);

/// Relative distance between two Δ-vectors: max_k |a_k − b_k| / max(1, |b_k|).
double delta_distance(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace bpl
