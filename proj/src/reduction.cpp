#include "bpl/reduction.hpp"

#include <algorithm>
#include <string>

#include "bpl/pde.hpp"

namespace bpl {

std::vector<MultiPoly> build_psi(const MultiPoly& fbar, int L) {
  if (L < 3) throw InvalidArgument("build_psi: the first-order form needs L >= 3, got L = " + std::to_string(L));
  const int n = fbar.nvars();
  std::vector<MultiPoly> psi{fbar};
  for (int k = 1; k <= L - 2; ++k)
    for (int i = 0; i < n; ++i) {
      const MultiPoly& prev = k == 1 ? fbar : psi[static_cast<std::size_t>(1 + (k - 2) * n + i)];
      psi.push_back(partial_derivative(prev, i, 1));
    }
  return psi;
}

ReductionSystem::ReductionSystem(int nvars, int L, Potential V, DerivativeCoefficient Q, cplx delta)
    : n_(nvars), L_(L), V_(std::move(V)), Q_(std::move(Q)), delta_(delta) {
  if (L < 3) throw InvalidArgument("ReductionSystem: the first-order form needs L >= 3, got L = " + std::to_string(L));
  if (nvars < 1) throw InvalidArgument("ReductionSystem: needs at least one variable");
}

ReductionSystem::Entry ReductionSystem::entry(int row, int col) const {
  if (row < 0 || col < 0 || row >= dim() || col >= dim()) throw InvalidArgument("ReductionSystem::entry: out of range");
  if (row == 0) {
    if (col == 0) return {EntryKind::Multiply, -1};
    const int last = 1 + (L_ - 3) * n_;
    if (col >= last) return {EntryKind::Derivative, col - last};
    return {};
  }
  if (row == col) return {EntryKind::Multiply, -1};
  const int i = (row - 1) % n_;
  const int block = (row - 1) / n_;
  if (block == 0 && col == 0) return {EntryKind::Derivative, i};
  if (block > 0 && col == row - n_) return {EntryKind::Derivative, i};
  return {};
}

CVector ReductionSystem::apply(std::span<const MultiPoly> psi, std::span<const cplx> point) const {
  if (static_cast<int>(psi.size()) != dim())
    throw InvalidArgument("ReductionSystem::apply: expected " + std::to_string(dim()) + " components");
  CVector out = CVector::Zero(dim());
  // PDE row: (𝒱 − Δ)ψ^{(0)} + Σ_i 𝒬_i ∂_i ψ^{(L−2)}_i.
  const int last = 1 + (L_ - 3) * n_;
  out(0) = (V_(point) - delta_) * poly_eval(psi[0], point);
  for (int i = 0; i < n_; ++i)
    out(0) += Q_(i, point) * poly_eval(partial_derivative(psi[static_cast<std::size_t>(last + i)], i, 1), point);
  for (int row = 1; row < dim(); ++row) {
    const int i = (row - 1) % n_;
    const int src = row <= n_ ? 0 : row - n_;
    out(row) = poly_eval(partial_derivative(psi[static_cast<std::size_t>(src)], i, 1), point) -
               poly_eval(psi[static_cast<std::size_t>(row)], point);
  }
  return out;
}

UpsilonResidual upsilon_residual(const ReductionSystem& sys, const MultiPoly& fbar,
                                 std::span<const std::vector<cplx>> points) {
  const std::vector<MultiPoly> psi = build_psi(fbar, sys.L());
  const int n = sys.nvars();
  const int last = 1 + (sys.L() - 3) * n;
  UpsilonResidual r;
  for (const auto& x : points) {
    const CVector v = sys.apply(psi, x);
    r.max_abs = std::max(r.max_abs, v.cwiseAbs().maxCoeff());
    r.pde_row = std::max(r.pde_row, std::abs(v(0)));
    if (v.size() > 1) r.defining_rows = std::max(r.defining_rows, v.tail(v.size() - 1).cwiseAbs().maxCoeff());

    // Scale of the PDE row: the largest of its individual terms.
    double scale = std::abs((sys.potential(x) - sys.delta()) * poly_eval(psi[0], x));
    for (int i = 0; i < n; ++i)
      scale = std::max(scale, std::abs(sys.derivative_coefficient(i, x) *
                                       poly_eval(partial_derivative(psi[static_cast<std::size_t>(last + i)], i, 1), x)));
    if (scale > 0.0) r.relative = std::max(r.relative, std::abs(v(0)) / scale);
  }
  return r;
}

ReductionSystem reduction_system(const SpectralConfig& cfg, cplx delta) {
  return ReductionSystem(
      cfg.n, cfg.L, [cfg](std::span<const cplx> x) { return eval_V(cfg, x); },
      [cfg](int i, std::span<const cplx> x) { return eval_Q(cfg, i, x); }, delta);
}

}  // namespace bpl
