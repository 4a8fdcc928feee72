#pragma once

#include <span>
#include <vector>

#include "bpl/config.hpp"
#include "bpl/functional.hpp"
#include "bpl/reduction.hpp"

namespace bpl {

/// Largest lattice the dense partition-function oracle accepts.
inline constexpr int kDwbcMaxL = 6;

/// ⟨⇓| B(λ_1)…B(λ_L) |0⟩ with ⟨⇓| the all-down dual vector. `cfg.L` is the
/// lattice size; cfg.n is ignored.
cplx dwbc_partition(std::span<const cplx> lambdas, const SpectralConfig& cfg);

/// The same quantity as a sum over arrow configurations of the L×L lattice
/// with domain-wall boundaries, one R-matrix weight per vertex.
cplx dwbc_configuration_sum(std::span<const cplx> lambdas, const SpectralConfig& cfg);

/// Number of configurations visited by the last sum (for reporting).
struct ConfigurationCount {
  cplx value;
  long configurations = 0;
};

ConfigurationCount dwbc_configuration_sum_counted(std::span<const cplx> lambdas, const SpectralConfig& cfg);

/// Sampler for ⟨⇓|B…B|0⟩ (n = L).
FnSampler dwbc_sampler(const SpectralConfig& cfg);

/// Polynomial part Z̄ in x_i = e^{2λ_i} of the partition function times
/// ∏ e^{(L−1)λ_i}, sampled with L+1 nodes per axis.
PolyFit extract_Zbar(const SpectralConfig& cfg);

/// ā(x, y) = x q − y / q.
cplx a_bar(cplx x, cplx y, cplx q);

/// 𝒱^{DW} = Σ_i ā(x_i, y_i).
cplx dwbc_V(const SpectralConfig& cfg, std::span<const cplx> xs);

/// 𝒬^{DW}_i = −1/(L−1)! ∏_j ā(x_i, y_j) ∏_{j≠i} ā(x_j, x_i)/(x_j − x_i).
cplx dwbc_Q(const SpectralConfig& cfg, int i, std::span<const cplx> xs);

struct DwbcResidual {
  double relative = 0.0;
  double zbar_holdout = 0.0;
  double zbar_asymmetry = 0.0;
  double zbar_excess_degree = 0.0;
};

/// [𝒱^{DW} + Σ 𝒬^{DW}_i ∂_i^{L−1}] Z at `points`, relative to the largest term.
double dwbc_pde_residual(const SpectralConfig& cfg, const MultiPoly& zbar,
                         std::span<const std::vector<cplx>> points);

/// Extracts Z̄ and evaluates the residual at `samples` random points.
DwbcResidual dwbc_pde_check(const SpectralConfig& cfg, int samples = 10);

/// Υ_DW: the reduction system with Δ → 0, 𝒱 → 𝒱^{DW}, 𝒬_i → 𝒬^{DW}_i, n → L.
ReductionSystem dwbc_upsilon(const SpectralConfig& cfg);

}  // namespace bpl
