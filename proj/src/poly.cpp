#include "bpl/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bpl {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Stride of variable `var` in the flat coefficient array.
std::size_t stride(int nvars, int m, int var) {
  return ipow(static_cast<std::size_t>(m + 1), nvars - 1 - var);
}

void check_var(const MultiPoly& p, int var) {
  if (var < 0 || var >= p.nvars())
    throw InvalidArgument("variable index " + std::to_string(var) + " out of range");
}

}  // namespace

MultiPoly::MultiPoly(int nvars, int degree_bound)
    : nvars_(nvars), m_(degree_bound), coeffs_(ipow(static_cast<std::size_t>(degree_bound + 1), nvars)) {
  if (nvars < 0 || degree_bound < 0) throw InvalidArgument("MultiPoly: negative arity or degree bound");
}

MultiPoly MultiPoly::constant(int nvars, int degree_bound, cplx value) {
  MultiPoly p(nvars, degree_bound);
  p.coeffs_[0] = value;
  return p;
}

MultiPoly MultiPoly::monomial(int nvars, int degree_bound, std::span<const int> exponents, cplx value) {
  MultiPoly p(nvars, degree_bound);
  p.coefficient(exponents) = value;
  return p;
}

std::size_t MultiPoly::index_of(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != nvars_) throw InvalidArgument("exponent tuple has wrong arity");
  std::size_t idx = 0;
  for (const int e : exponents) {
    if (e < 0 || e > m_) throw InvalidArgument("exponent outside the degree bound");
    idx = idx * static_cast<std::size_t>(m_ + 1) + static_cast<std::size_t>(e);
  }
  return idx;
}

std::vector<int> MultiPoly::exponents_of(std::size_t index) const {
  std::vector<int> e(static_cast<std::size_t>(nvars_));
  for (int i = nvars_ - 1; i >= 0; --i) {
    e[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(m_ + 1));
    index /= static_cast<std::size_t>(m_ + 1);
  }
  return e;
}

int MultiPoly::degree_in(int var, double threshold) const {
  int deg = -1;
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (std::abs(coeffs_[k]) > threshold) deg = std::max(deg, exponents_of(k)[static_cast<std::size_t>(var)]);
  return deg;
}

double MultiPoly::max_coefficient() const {
  double r = 0.0;
  for (const cplx c : coeffs_) r = std::max(r, std::abs(c));
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  if (other.nvars_ != nvars_ || other.m_ != m_) throw InvalidArgument("MultiPoly shape mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  if (other.nvars_ != nvars_ || other.m_ != m_) throw InvalidArgument("MultiPoly shape mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

MultiPoly& MultiPoly::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
MultiPoly operator*(cplx s, MultiPoly p) { return p *= s; }

cplx poly_eval(const MultiPoly& p, std::span<const cplx> point) {
  if (static_cast<int>(point.size()) != p.nvars()) throw InvalidArgument("poly_eval: point has wrong arity");
  // Contract the last variable first: each pass folds blocks of m+1 coefficients.
  std::vector<cplx> work(p.coeffs().begin(), p.coeffs().end());
  const std::size_t w = static_cast<std::size_t>(p.degree_bound() + 1);
  for (int var = p.nvars() - 1; var >= 0; --var) {
    const cplx x = point[static_cast<std::size_t>(var)];
    const std::size_t blocks = work.size() / w;
    for (std::size_t b = 0; b < blocks; ++b) {
      cplx acc = 0.0;
      for (std::size_t e = w; e-- > 0;) acc = acc * x + work[b * w + e];
      work[b] = acc;
    }
    work.resize(blocks);
  }
  return work.at(0);
}

MultiPoly partial_derivative(const MultiPoly& p, int var, int order) {
  check_var(p, var);
  if (order < 0) throw InvalidArgument("partial_derivative: negative order");
  const int m = p.degree_bound();
  MultiPoly out(p.nvars(), m);
  if (order > m) return out;
  const std::size_t s = stride(p.nvars(), m, var);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const int e = p.exponents_of(k)[static_cast<std::size_t>(var)];
    if (e + order > m) continue;
    // out[e] = (e+order)!/e! · p[e+order]
    double f = 1.0;
    for (int t = e + 1; t <= e + order; ++t) f *= t;
    out[k] = f * p[k + static_cast<std::size_t>(order) * s];
  }
  return out;
}

MultiPoly substitute(const MultiPoly& p, int var, cplx alpha) {
  check_var(p, var);
  MultiPoly out(p.nvars(), p.degree_bound());
  const std::size_t s = stride(p.nvars(), p.degree_bound(), var);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const int e = p.exponents_of(k)[static_cast<std::size_t>(var)];
    out[k - static_cast<std::size_t>(e) * s] += p[k] * std::pow(alpha, e);
  }
  return out;
}

MultiPoly taylor_substitution(const MultiPoly& p, int var, cplx alpha, int order) {
  check_var(p, var);
  const int deg = p.degree_in(var);
  if (deg > order)
    throw ContractViolation("taylor_substitution: truncation order " + std::to_string(order) +
                            " is below the degree " + std::to_string(deg) + " of the polynomial");
  const int m = p.degree_bound();
  const std::size_t s = stride(p.nvars(), m, var);
  MultiPoly out(p.nvars(), m);
  for (int k = 0; k <= std::min(order, m); ++k) {
    MultiPoly term = partial_derivative(p, var, k);
    // Multiply by (alpha − z_var) k times; degrees never exceed m because
    // ∂^k p has degree ≤ m − k in z_var.
    for (int r = 0; r < k; ++r) {
      MultiPoly next(p.nvars(), m);
      for (std::size_t idx = 0; idx < term.size(); ++idx) {
        const cplx c = term[idx];
        if (c == cplx{}) continue;
        next[idx] += alpha * c;
        const int e = term.exponents_of(idx)[static_cast<std::size_t>(var)];
        if (e < m) next[idx + s] -= c;
      }
      term = std::move(next);
    }
    out += (1.0 / factorial(k)) * term;
  }
  return out;
}

MultiPoly symmetrize(const MultiPoly& p) {
  std::vector<int> perm(static_cast<std::size_t>(p.nvars()));
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  MultiPoly out(p.nvars(), p.degree_bound());
  std::size_t count = 0;
  std::vector<int> permuted(perm.size());
  do {
    for (std::size_t k = 0; k < p.size(); ++k) {
      const auto e = p.exponents_of(k);
      for (std::size_t i = 0; i < e.size(); ++i) permuted[static_cast<std::size_t>(perm[i])] = e[i];
      out.coefficient(permuted) += p[k];
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return (1.0 / static_cast<double>(count)) * out;
}

double asymmetry(const MultiPoly& p) { return (p - symmetrize(p)).max_coefficient(); }

std::vector<std::vector<int>> basis_exponents(int nvars, int m, PolyBasis basis) {
  std::vector<std::vector<int>> out;
  const MultiPoly shape(nvars, m);
  for (std::size_t k = 0; k < shape.size(); ++k) {
    auto e = shape.exponents_of(k);
    if (basis == PolyBasis::Symmetric && !std::is_sorted(e.begin(), e.end(), std::greater<>())) continue;
    out.push_back(std::move(e));
  }
  return out;
}

MultiPoly basis_element(int nvars, int m, PolyBasis basis, std::size_t k) {
  const auto exps = basis_exponents(nvars, m, basis);
  auto e = exps.at(k);
  if (basis == PolyBasis::Monomial) return MultiPoly::monomial(nvars, m, e);
  MultiPoly out(nvars, m);
  std::sort(e.begin(), e.end());
  do {
    out.coefficient(e) = 1.0;
  } while (std::next_permutation(e.begin(), e.end()));
  return out;
}

CVector basis_coordinates(const MultiPoly& p, PolyBasis basis) {
  const auto exps = basis_exponents(p.nvars(), p.degree_bound(), basis);
  CVector out(static_cast<Eigen::Index>(exps.size()));
  for (std::size_t k = 0; k < exps.size(); ++k) out(static_cast<Eigen::Index>(k)) = p.coefficient(exps[k]);
  return out;
}

MultiPoly from_basis_coordinates(int nvars, int m, PolyBasis basis, const CVector& coords) {
  MultiPoly out(nvars, m);
  for (Eigen::Index k = 0; k < coords.size(); ++k)
    out += coords(k) * basis_element(nvars, m, basis, static_cast<std::size_t>(k));
  return out;
}

PolyOperator::PolyOperator(int nvars, int m, PolyBasis basis, CMatrix matrix)
    : nvars_(nvars), m_(m), basis_(basis), matrix_(std::move(matrix)) {
  const auto dim = static_cast<Eigen::Index>(basis_exponents(nvars, m, basis).size());
  if (matrix_.rows() != dim || matrix_.cols() != dim)
    throw InvalidArgument("PolyOperator: matrix does not match the basis dimension");
}

MultiPoly PolyOperator::apply(const MultiPoly& p) const {
  if (p.nvars() != nvars_ || p.degree_bound() != m_) throw InvalidArgument("PolyOperator: shape mismatch");
  return from_basis_coordinates(nvars_, m_, basis_, matrix_ * basis_coordinates(p, basis_));
}

std::vector<PolyOperator> substitution_operator_coefficients(int nvars, int m, int var) {
  const MultiPoly shape(nvars, m);
  const auto dim = static_cast<Eigen::Index>(shape.size());
  const std::size_t s = stride(nvars, m, var);
  std::vector<CMatrix> mats(static_cast<std::size_t>(m + 1), CMatrix::Zero(dim, dim));
  for (std::size_t col = 0; col < shape.size(); ++col) {
    MultiPoly basis = MultiPoly(nvars, m);
    basis[col] = 1.0;
    for (int k = 0; k <= m; ++k) {
      const MultiPoly dk = partial_derivative(basis, var, k);
      // (x0 − x_var)^k / k! = Σ_j binom(k, j) x0^j (−x_var)^{k−j} / k!
      for (int j = 0; j <= k; ++j) {
        double coef = 1.0 / (factorial(j) * factorial(k - j));
        if ((k - j) % 2 == 1) coef = -coef;
        for (std::size_t idx = 0; idx < dk.size(); ++idx) {
          if (dk[idx] == cplx{}) continue;
          const int e = dk.exponents_of(idx)[static_cast<std::size_t>(var)];
          if (e + (k - j) > m) continue;
          const std::size_t row = idx + static_cast<std::size_t>(k - j) * s;
          mats[static_cast<std::size_t>(j)](static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
              coef * dk[idx];
        }
      }
    }
  }
  std::vector<PolyOperator> out;
  for (auto& mat : mats) out.emplace_back(nvars, m, PolyBasis::Monomial, std::move(mat));
  return out;
}

std::vector<cplx> circle_nodes(int count, double radius, double phase) {
  std::vector<cplx> out;
  for (int k = 0; k < count; ++k)
    out.push_back(std::polar(radius, 2.0 * std::numbers::pi * (k + phase) / count));
  return out;
}

namespace {
CMatrix vandermonde(std::span<const cplx> nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  CMatrix v(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx p = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      v(i, j) = p;
      p *= nodes[static_cast<std::size_t>(i)];
    }
  }
  return v;
}
}  // namespace

double vandermonde_condition(std::span<const cplx> nodes) {
  Eigen::JacobiSVD<CMatrix> svd(vandermonde(nodes));
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

std::vector<cplx> interpolate_1d(std::span<const cplx> nodes, std::span<const cplx> values) {
  if (nodes.size() != values.size()) throw InvalidArgument("interpolate_1d: size mismatch");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (std::abs(nodes[i] - nodes[j]) < 1e-12) throw InvalidArgument("interpolate_1d: coincident nodes");
  const CVector rhs = Eigen::Map<const CVector>(values.data(), static_cast<Eigen::Index>(values.size()));
  const CVector c = vandermonde(nodes).fullPivLu().solve(rhs);
  return {c.data(), c.data() + c.size()};
}

std::size_t TensorGrid::points() const {
  std::size_t r = 1;
  for (const auto& a : axes) r *= a.size();
  return r;
}

std::vector<cplx> TensorGrid::point(std::size_t k) const {
  std::vector<cplx> out(axes.size());
  for (std::size_t i = axes.size(); i-- > 0;) {
    out[i] = axes[i][k % axes[i].size()];
    k /= axes[i].size();
  }
  return out;
}

double TensorGrid::worst_condition() const {
  double worst = 1.0;
  for (const auto& a : axes) worst = std::max(worst, vandermonde_condition(a));
  return worst;
}

MultiPoly interpolate_tensor(const TensorGrid& grid, std::span<const cplx> values) {
  const int nvars = static_cast<int>(grid.axes.size());
  const int per_axis = nvars == 0 ? 1 : static_cast<int>(grid.axes[0].size());
  for (const auto& a : grid.axes)
    if (static_cast<int>(a.size()) != per_axis) throw InvalidArgument("interpolate_tensor: ragged grid");
  MultiPoly out(nvars, per_axis - 1);
  if (values.size() != out.size()) throw InvalidArgument("interpolate_tensor: wrong number of samples");
  std::vector<cplx> work(values.begin(), values.end());
  const auto w = static_cast<std::size_t>(per_axis);
  for (int var = 0; var < nvars; ++var) {
    const CMatrix inv = vandermonde(grid.axes[static_cast<std::size_t>(var)]).fullPivLu().inverse();
    const std::size_t s = stride(nvars, per_axis - 1, var);
    std::vector<cplx> next(work.size());
    for (std::size_t k = 0; k < work.size(); ++k) {
      const std::size_t e = (k / s) % w;
      const std::size_t base = k - e * s;
      cplx acc = 0.0;
      for (std::size_t t = 0; t < w; ++t)
        acc += inv(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(t)) * work[base + t * s];
      next[k] = acc;
    }
    work = std::move(next);
  }
  std::copy(work.begin(), work.end(), out.coeffs().begin());
  return out;
}

TensorGrid disjoint_circle_grid(int nvars, int per_axis, double radius) {
  TensorGrid g;
  for (int i = 0; i < nvars; ++i)
    g.axes.push_back(circle_nodes(per_axis, radius, 0.11 + static_cast<double>(i) / (nvars + 1)));
  return g;
}

}  // namespace bpl
