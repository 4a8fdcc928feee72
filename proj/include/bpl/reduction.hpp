#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bpl/config.hpp"
#include "bpl/poly.hpp"

namespace bpl {

/// ψ⃗ = (ψ^{(0)}, ψ^{(1)}_1..ψ^{(1)}_n, ..., ψ^{(L−2)}_1..ψ^{(L−2)}_n) with
/// ψ^{(0)} = f and ψ^{(k)}_i = ∂_i ψ^{(k−1)}_i. Throws InvalidArgument for L < 3.
std::vector<MultiPoly> build_psi(const MultiPoly& fbar, int L);

/// First-order system Υψ⃗ = 0 equivalent to (𝒱 − Δ) f + Σ_i 𝒬_i ∂_i^{L−1} f = 0.
class ReductionSystem {
 public:
  using Potential = std::function<cplx(std::span<const cplx>)>;
  using DerivativeCoefficient = std::function<cplx(int, std::span<const cplx>)>;

  enum class EntryKind { Zero, Multiply, Derivative };

  struct Entry {
    EntryKind kind = EntryKind::Zero;
    /// Variable differentiated (Derivative) or -1.
    int var = -1;
  };

  ReductionSystem(int nvars, int L, Potential V, DerivativeCoefficient Q, cplx delta);

  int nvars() const { return n_; }
  int L() const { return L_; }
  cplx delta() const { return delta_; }
  int dim() const { return (L_ - 2) * n_ + 1; }

  cplx potential(std::span<const cplx> point) const { return V_(point); }
  cplx derivative_coefficient(int i, std::span<const cplx> point) const { return Q_(i, point); }

  /// Structural shape of Υ at (row, col).
  Entry entry(int row, int col) const;

  /// Υψ⃗ evaluated at a point.
  CVector apply(std::span<const MultiPoly> psi, std::span<const cplx> point) const;

 private:
  int n_;
  int L_;
  Potential V_;
  DerivativeCoefficient Q_;
  cplx delta_;
};

struct UpsilonResidual {
  double max_abs = 0.0;
  /// PDE row relative to the largest of its terms.
  double relative = 0.0;
  double pde_row = 0.0;
  double defining_rows = 0.0;
};

UpsilonResidual upsilon_residual(const ReductionSystem& sys, const MultiPoly& fbar,
                                 std::span<const std::vector<cplx>> points);

/// Υ for the eigenvalue problem of Ω_{L−1}, with the closed-form 𝒱 and 𝒬_i.
ReductionSystem reduction_system(const SpectralConfig& cfg, cplx delta);

}  // namespace bpl
