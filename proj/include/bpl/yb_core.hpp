#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "bpl/common.hpp"
#include "bpl/config.hpp"

namespace bpl {

// Boltzmann weights of the trigonometric six-vertex model.
inline cplx weight_a(cplx x, cplx gamma) { return std::sinh(x + gamma); }
inline cplx weight_b(cplx x) { return std::sinh(x); }
inline cplx weight_c(cplx gamma) { return std::sinh(gamma); }

/// Complex square matrix on (C^2)^{⊗k}. Basis index bits are read with site 1
/// as the most significant bit; a set bit is a down spin, so |0⟩ is index 0.
///
/// `down_shift`, when present, records how many down spins the operator adds
/// (A, D: 0; B: +1; C: −1). Entries outside that block must vanish.
struct DenseOperator {
  CMatrix entries;
  std::optional<int> down_shift;

  Eigen::Index dim() const { return entries.rows(); }
};

/// Largest entry of `op` that violates its declared down_shift block
/// structure; 0 when no metadata is present.
double sector_leakage(const DenseOperator& op);

/// Indices of basis states with exactly `downs` down spins among L sites.
std::vector<Eigen::Index> sector_indices(int L, int downs);

/// The 4×4 R-matrix with a(x) in the corners and the middle block rows
/// (c, b), (b, c).
DenseOperator r_matrix(cplx x, cplx gamma);

/// Max-norm of the difference between the two sides of the braid-form
/// Yang-Baxter equation on C^2⊗C^2⊗C^2, relative to the larger side.
double check_ybe(cplx x, cplx y, cplx gamma);

struct MonodromyEntries {
  DenseOperator A, B, C, D;
};

/// Ordered product P·R_{Aj}(λ − μ_j), j = 1..L (j = 1 leftmost), sliced into
/// its auxiliary-space blocks.
MonodromyEntries monodromy(cplx lambda, const SpectralConfig& cfg);

/// T(λ) = A(λ) + D(λ).
DenseOperator transfer(cplx lambda, const SpectralConfig& cfg);

/// Transfer matrix restricted to the sector with `downs` down spins.
CMatrix transfer_sector(cplx lambda, const SpectralConfig& cfg, int downs);

/// Relative residual of R(x−y)[T(x)⊗T(y)] − [T(y)⊗T(x)]R(x−y) on the
/// 4·2^L-dimensional space.
double check_rtt(cplx x, cplx y, const SpectralConfig& cfg);

struct BProduct {
  DenseOperator op;
  /// Set when more B operators than sites were multiplied; the product then
  /// annihilates |0⟩.
  bool annihilates_vacuum = false;
};

/// B(λ_1)…B(λ_n); the empty product is the identity.
BProduct b_product(std::span<const cplx> lambdas, const SpectralConfig& cfg);

/// B(λ_1)…B(λ_n)|0⟩ computed by successive matrix-vector products.
CVector b_product_on_vacuum(std::span<const cplx> lambdas, const SpectralConfig& cfg);

/// Coefficients of the summed degree-(n+1) relation. `lambda0` is λ_0 and
/// `lambdas` holds λ_1..λ_n; the vectors are indexed like `lambdas`.
struct MCoefficients {
  cplx A0;
  cplx D0;
  std::vector<cplx> A;
  std::vector<cplx> D;
};

/// Throws SingularCoefficientError if any pair among {λ_0, …, λ_n} has
/// |sinh(λ_i − λ_j)| below kCoincidenceGuard. Indices in the error are
/// positions in {λ_0, …, λ_n}.
void guard_distinct(cplx lambda0, std::span<const cplx> lambdas);

MCoefficients m_coefficients(cplx lambda0, std::span<const cplx> lambdas, cplx gamma);

struct OffResiduals {
  double a_relation = 0.0;
  double d_relation = 0.0;
  double summed = 0.0;
};

/// Evaluates both sides of the A- and D-relations of degree n+1 and their sum
/// as dense operators; residuals are relative max-norms.
OffResiduals check_off_relations(cplx lambda0, std::span<const cplx> lambdas,
                                 const SpectralConfig& cfg);

/// A simultaneous eigenvector of the commuting family T(λ) in one S^z sector.
class Eigenpair {
 public:
  Eigenpair(const SpectralConfig& cfg, int sector, CVector right, CVector left);

  int sector() const { return sector_; }
  /// Right eigenvector |Λ⟩ embedded in the full 2^L space.
  const CVector& right() const { return right_; }
  /// Dual eigenvector ⟨Λ| (an eigenvector of T^t), unit norm, full space.
  const CVector& left() const { return left_; }

  /// Λ(λ) = ⟨Λ|T(λ)|Λ⟩ / ⟨Λ|Λ⟩.
  cplx eigenvalue(cplx lambda) const;

  /// max(‖T|Λ⟩ − Λ|Λ⟩‖, ‖T^t⟨Λ| − Λ⟨Λ|‖) relative to ‖T‖ at λ.
  double residual(cplx lambda) const;

 private:
  SpectralConfig cfg_;
  int sector_;
  std::vector<Eigen::Index> indices_;
  CVector right_;
  CVector left_;
  CVector right_s_;
  CVector left_s_;
};

inline constexpr std::array<cplx, 2> kDefaultProbes{cplx{0.231, 0.117}, cplx{-0.413, 0.071}};

/// Eigenpairs of T restricted to `sector`, separated by diagonalizing a
/// generic combination of T at two probe points. Throws DegeneracyError if a
/// pair fails the residual test at either probe.
std::vector<Eigenpair> spectrum(const SpectralConfig& cfg, int sector,
                                std::array<cplx, 2> probes = kDefaultProbes);

}  // namespace bpl
