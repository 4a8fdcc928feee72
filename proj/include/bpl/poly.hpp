#pragma once

#include <span>
#include <vector>

#include "bpl/common.hpp"

namespace bpl {

/// Polynomial in `nvars` variables with degree at most `m` in each variable.
/// Coefficients are stored densely, indexed by exponent tuples (e_1, …, e_n)
/// in lexicographic order: index = Σ e_i (m+1)^{n-1-i}.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(int nvars, int degree_bound);

  static MultiPoly constant(int nvars, int degree_bound, cplx value);
  static MultiPoly monomial(int nvars, int degree_bound, std::span<const int> exponents, cplx value = 1.0);

  int nvars() const { return nvars_; }
  int degree_bound() const { return m_; }
  std::size_t size() const { return coeffs_.size(); }

  std::size_t index_of(std::span<const int> exponents) const;
  std::vector<int> exponents_of(std::size_t index) const;

  cplx& operator[](std::size_t index) { return coeffs_[index]; }
  cplx operator[](std::size_t index) const { return coeffs_[index]; }
  cplx coefficient(std::span<const int> exponents) const { return coeffs_[index_of(exponents)]; }
  cplx& coefficient(std::span<const int> exponents) { return coeffs_[index_of(exponents)]; }

  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }

  /// Largest exponent of `var` with a coefficient above `threshold`; −1 for
  /// the zero polynomial.
  int degree_in(int var, double threshold = 0.0) const;

  double max_coefficient() const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(cplx s);

 private:
  int nvars_ = 0;
  int m_ = 0;
  std::vector<cplx> coeffs_;
};

MultiPoly operator+(MultiPoly a, const MultiPoly& b);
MultiPoly operator-(MultiPoly a, const MultiPoly& b);
MultiPoly operator*(cplx s, MultiPoly p);

/// Horner evaluation, one variable at a time.
cplx poly_eval(const MultiPoly& p, std::span<const cplx> point);

/// k-th partial derivative in `var`; the degree bound is kept and orders above
/// it give the zero polynomial.
MultiPoly partial_derivative(const MultiPoly& p, int var, int order);

/// f(…, z_var, …) ↦ f(…, alpha, …); the arity is kept with z_var pinned.
MultiPoly substitute(const MultiPoly& p, int var, cplx alpha);

/// Σ_{k=0}^{order} (alpha − z_var)^k / k! ∂^k/∂z_var^k p. Equals
/// substitute(p, var, alpha) whenever deg_var(p) ≤ order; throws
/// ContractViolation otherwise.
MultiPoly taylor_substitution(const MultiPoly& p, int var, cplx alpha, int order);

/// Symmetrization over all permutations of the variables.
MultiPoly symmetrize(const MultiPoly& p);

/// Largest coefficient difference between p and its symmetrization.
double asymmetry(const MultiPoly& p);

/// Basis of a PolyOperator's domain. `Monomial` is the full lexicographic
/// monomial basis of K^m[x]. `Symmetric` spans the symmetric subspace with
/// monomial symmetric functions m_e (e non-increasing, lexicographic order).
enum class PolyBasis { Monomial, Symmetric };

/// Exponent tuples labelling the basis vectors.
std::vector<std::vector<int>> basis_exponents(int nvars, int m, PolyBasis basis);

/// The k-th basis polynomial.
MultiPoly basis_element(int nvars, int m, PolyBasis basis, std::size_t k);

/// Coordinates of p in `basis`. For the symmetric basis these are the
/// coefficients of the canonical (non-increasing) monomials; p is assumed
/// symmetric.
CVector basis_coordinates(const MultiPoly& p, PolyBasis basis);

MultiPoly from_basis_coordinates(int nvars, int m, PolyBasis basis, const CVector& coords);

/// Linear map on K^m[x] (or its symmetric subspace) stored as a matrix in the
/// chosen basis.
class PolyOperator {
 public:
  PolyOperator() = default;
  PolyOperator(int nvars, int m, PolyBasis basis, CMatrix matrix);

  int nvars() const { return nvars_; }
  int degree_bound() const { return m_; }
  PolyBasis basis() const { return basis_; }
  const CMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  MultiPoly apply(const MultiPoly& p) const;

 private:
  int nvars_ = 0;
  int m_ = 0;
  PolyBasis basis_ = PolyBasis::Monomial;
  CMatrix matrix_;
};

/// Coefficient operators C_j of D^{x0}_{x_var} = Σ_{j=0}^{m} x0^j C_j on
/// K^m[x], obtained by expanding (x0 − x_var)^k in the truncated Taylor sum.
std::vector<PolyOperator> substitution_operator_coefficients(int nvars, int m, int var);

/// `count` points on a circle of `radius`, rotated by `phase` (in units of
/// the spacing).
std::vector<cplx> circle_nodes(int count, double radius, double phase);

/// 2-norm condition number of the Vandermonde matrix on `nodes`.
double vandermonde_condition(std::span<const cplx> nodes);

/// Coefficients c_k of the degree-(nodes−1) polynomial through the samples.
std::vector<cplx> interpolate_1d(std::span<const cplx> nodes, std::span<const cplx> values);

/// Per-variable interpolation nodes for a tensor grid; axis i holds the
/// nodes of variable i.
struct TensorGrid {
  std::vector<std::vector<cplx>> axes;

  std::size_t points() const;
  /// Coordinates of the grid point with flat index `k` (lexicographic in the
  /// per-axis node indices).
  std::vector<cplx> point(std::size_t k) const;
  double worst_condition() const;
};

/// Polynomial with per-variable degree bound (nodes per axis − 1) matching
/// `values` on the grid. All axes must have the same number of nodes.
MultiPoly interpolate_tensor(const TensorGrid& grid, std::span<const cplx> values);

/// Grid with `per_axis` nodes per variable on circles of distinct phase so
/// that no two coordinates of a grid point coincide.
TensorGrid disjoint_circle_grid(int nvars, int per_axis, double radius);

}  // namespace bpl
