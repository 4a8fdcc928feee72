#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bpl/config.hpp"
#include "bpl/poly.hpp"
#include "bpl/yb_core.hpp"

namespace bpl {

/// A sector-n eigenpair selected from spectrum().
struct EigenChoice {
  std::size_t index = 0;
  Eigenpair pair;
};

/// All eigenpairs of sector `sector`. Each dual vector is additionally checked
/// to stay an eigenvector at three extra spectral points (λ-independence of
/// ⟨Λ|); a failure raises DegeneracyError.
std::vector<EigenChoice> eigen_choices(const SpectralConfig& cfg, int sector);

/// Samples F_n(λ_1..λ_n) = ⟨v| B(λ_1)…B(λ_n) |0⟩ for a fixed dual vector ⟨v|.
///
/// B(λ) matrices for the points passed to warm() are cached; after warm-up the
/// sampler is only read, so concurrent sampling is safe.
class FnSampler {
 public:
  FnSampler(SpectralConfig cfg, CVector dual, int n);
  explicit FnSampler(const SpectralConfig& cfg, const Eigenpair& pair);

  const SpectralConfig& cfg() const { return cfg_; }
  int n() const { return n_; }
  const CVector& dual() const { return dual_; }
  const std::optional<Eigenpair>& eigenpair() const { return pair_; }

  /// Non-empty when the dual vector has no weight in the n-down sector, so F_n
  /// vanishes identically.
  const std::vector<std::string>& warnings() const { return warnings_; }

  void warm(std::span<const cplx> lambdas);
  cplx operator()(std::span<const cplx> lambdas) const;

 private:
  const CMatrix& b_matrix(cplx lambda, CMatrix& scratch) const;

  SpectralConfig cfg_;
  CVector dual_;
  int n_;
  std::optional<Eigenpair> pair_;
  std::vector<std::string> warnings_;
  std::map<std::pair<double, double>, CMatrix> cache_;
};

/// ⟨Λ| B(λ_1)…B(λ_n) |0⟩.
cplx compute_Fn(const FnSampler& s, std::span<const cplx> lambdas);

/// J_0 and K_{λ_i} of the functional equation; K is indexed like `lambdas`.
struct FzCoefficients {
  cplx J0;
  std::vector<cplx> K;
};

FzCoefficients fz_coefficients(cplx lambda0, std::span<const cplx> lambdas, const SpectralConfig& cfg);

struct FzResidual {
  double relative = 0.0;
  /// Largest magnitude among the terms of the equation.
  double scale = 0.0;
  /// All terms vanish: F_n is zero at these points.
  bool vanishing = false;
};

/// |J_0 F_n(X) − Σ_i K_i F_n(X^0_i) − Λ(λ_0) F_n(X)| over the largest term.
/// The sampler must carry an eigenpair.
FzResidual check_fz_residual(const FnSampler& s, cplx lambda0, std::span<const cplx> lambdas);

/// Result of sampling and interpolating a polynomial part.
struct PolyFit {
  MultiPoly poly;
  /// Relative mismatch at held-out random points.
  double holdout_error = 0.0;
  /// Vandermonde condition number of the interpolation grid.
  double condition = 1.0;
};

/// Σ|c_e||x^e|: the natural magnitude of evaluating p at x.
double poly_abs_scale(const MultiPoly& p, std::span<const cplx> point);

/// Polynomial part F̄_n in x_i = e^{2λ_i} of F_n · ∏ e^{(L−1)λ_i}, sampled on a
/// tensor grid with `degree_bound`+1 nodes per axis (default L−1).
PolyFit extract_Fbar(const FnSampler& s, std::optional<int> degree_bound = std::nullopt,
                     std::uint64_t holdout_seed = 7);

/// Largest coefficient carrying an exponent above `bound` in some variable,
/// relative to the largest coefficient.
double excess_degree_coefficient(const MultiPoly& p, int bound);

/// Coefficients Δ_0..Δ_L of Λ̄(x_0) = Λ(λ_0) e^{Lλ_0}, interpolated from L+2
/// samples (the extra node gives `top_excess`, the x_0^{L+1} coefficient).
struct LambdaBarFit {
  std::vector<cplx> delta;
  double top_excess = 0.0;
  double holdout_error = 0.0;
};

LambdaBarFit lambda_bar_coefficients(const Eigenpair& pair, const SpectralConfig& cfg);

}  // namespace bpl
