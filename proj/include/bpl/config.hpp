#pragma once

#include <cstdint>
#include <vector>

#include "bpl/common.hpp"

namespace bpl {

/// Global problem instance: lattice length, excitation number, anisotropy and
/// inhomogeneities. q = e^γ and y_j = e^{2μ_j}; square roots of y_j are always
/// taken as e^{μ_j}.
struct SpectralConfig {
  int L = 3;
  int n = 1;
  cplx gamma{0.37, 0.21};
  std::vector<cplx> mu;
  double tol = 1e-9;
  std::uint64_t seed = 20140707;

  cplx q() const { return std::exp(gamma); }
  cplx y(int j) const { return std::exp(2.0 * mu.at(static_cast<std::size_t>(j))); }
  cplx sqrt_y(int j) const { return std::exp(mu.at(static_cast<std::size_t>(j))); }
  std::vector<cplx> ys() const;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

/// Dense capacity cap on L; BPL_MAX_L overrides the default of 12.
int max_dense_L();

/// Throws CapacityError when L exceeds max_dense_L().
void require_dense_capacity(int L);

/// Config with μ_j drawn from the seed (real parts in [−1, 1], imaginary parts
/// in [−0.5, 0.5]).
SpectralConfig make_config(int L, int n, cplx gamma, std::uint64_t seed);

/// Config with γ drawn as well, redrawn while |sinh γ| < 0.1.
SpectralConfig random_config(int L, int n, std::uint64_t seed);

}  // namespace bpl
