#include "bpl/pde.hpp"

#include <algorithm>
#include <cmath>

namespace bpl {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

cplx prod_inv_sqrt_y(const SpectralConfig& cfg) {
  cplx s = 0.0;
  for (const cplx m : cfg.mu) s += m;
  return std::exp(-s);
}

// Sign (−1)^e for possibly negative e.
double sign_pow(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

cplx geometric_sum(cplx q, int upper) {
  cplx s = 0.0;
  cplx p = 1.0;
  for (int k = 0; k <= upper; ++k) {
    s += p;
    p *= q;
  }
  return s;
}

cplx geometric_sum_closed(cplx q, int upper) {
  if (upper < 0) return 0.0;
  return (1.0 - std::pow(q, upper + 1)) / (1.0 - q);
}

cplx elementary_symmetric(std::span<const cplx> values, int m) {
  if (m < 0 || m > static_cast<int>(values.size())) return 0.0;
  std::vector<cplx> e(static_cast<std::size_t>(m) + 1, 0.0);
  e[0] = 1.0;
  for (const cplx v : values)
    for (int k = m; k >= 1; --k) e[static_cast<std::size_t>(k)] += v * e[static_cast<std::size_t>(k) - 1];
  return e[static_cast<std::size_t>(m)];
}

PsiBranch psi_branch(int l, int d, int L, int n) {
  const int edge = L - (n + 1) + 2 * l;
  if (d > edge) return PsiBranch::Above;
  if (d < edge) return PsiBranch::Below;
  return L >= 5 ? PsiBranch::EdgeLarge : PsiBranch::EdgeSmall;
}

cplx psi(int l, int d, int L, int n, cplx q) {
  switch (psi_branch(l, d, L, n)) {
    case PsiBranch::Above:
      return sign_pow(L + d + l) * std::pow(q, L + 2 * l) * geometric_sum(q, 2 * d + 2 * n - 3 - L - 4 * l);
    case PsiBranch::EdgeLarge:
      return sign_pow(3 * l - n - 1) * std::pow(q, L + 2 * l) * geometric_sum(q, L - 5);
    case PsiBranch::EdgeSmall:
      return sign_pow(3 * l - n) * std::pow(q, 2 * L + 2 * l - 4) * geometric_sum(q, 3 - L);
    case PsiBranch::Below:
      return sign_pow(L + d + l + 1) * std::pow(q, 2 * d + 2 * n - 2 - 2 * l) *
             geometric_sum(q, L - 2 * d - 2 * n + 1 + 4 * l);
  }
  return 0.0;
}

PotentialAffine potential_affine(const SpectralConfig& cfg) {
  const int L = cfg.L;
  const int n = cfg.n;
  const cplx q = cfg.q();
  cplx ysum = 0.0;
  for (const cplx y : cfg.ys()) ysum += y;
  const cplx v1 = (std::pow(q, n) + std::pow(q, L - n - 2)) * ysum;
  const cplx common = (q - 1.0) * (q - 1.0) * (q + 1.0);
  // Boundary L = 2(n−1) belongs to the first case.
  const cplx v2_slope = L >= 2 * (n - 1) ? std::pow(q, n - 2) * common * geometric_sum(q, L + 1 - 2 * n)
                                         : -std::pow(q, L - n) * common * geometric_sum(q, 2 * n - 3 - L);
  const cplx pref = -std::pow(2.0, -L) * prod_inv_sqrt_y(cfg);
  return {pref * v1, pref * v2_slope};
}

cplx eval_V(const SpectralConfig& cfg, std::span<const cplx> xs) {
  const PotentialAffine v = potential_affine(cfg);
  cplx s = 0.0;
  for (const cplx x : xs) s += x;
  return v.constant + v.slope * s;
}

cplx eval_G(const SpectralConfig& cfg, int i, int d, std::span<const cplx> xs) {
  const int n = static_cast<int>(xs.size());
  const cplx xi = xs[static_cast<std::size_t>(i)];
  std::vector<cplx> rest;
  for (int j = 0; j < n; ++j)
    if (j != i) rest.push_back(xs[static_cast<std::size_t>(j)]);
  cplx s = 0.0;
  for (int l = 0; l < n; ++l)
    s += std::pow(xi, l) * psi(l, d, cfg.L, n, cfg.q()) * elementary_symmetric(rest, n - 1 - l);
  return std::pow(xi, d) * s;
}

cplx eval_Q(const SpectralConfig& cfg, int i, std::span<const cplx> xs) {
  const int L = cfg.L;
  const int n = static_cast<int>(xs.size());
  const cplx q = cfg.q();
  const cplx xi = xs[static_cast<std::size_t>(i)];
  cplx denom = 1.0;
  double scale = std::abs(xi);
  for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(xs[static_cast<std::size_t>(j)]));
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const cplx diff = xs[static_cast<std::size_t>(j)] - xi;
    if (std::abs(diff) < 1e-12 * std::max(scale, 1.0))
      throw SingularCoefficientError(i, j, "eval_Q: coincident variables x_" + std::to_string(i + 1) + " and x_" +
                                               std::to_string(j + 1));
    denom *= diff;
  }
  const std::vector<cplx> ys = cfg.ys();
  cplx bracket = 0.0;
  for (int m = 0; m <= L; ++m) bracket += eval_G(cfg, i, L - m, xs) * elementary_symmetric(ys, m);
  const cplx pref = (q - 1.0) * (q - 1.0) * (q + 1.0) /
                    (std::pow(2.0, L) * std::pow(q, L + n) * factorial(L - 1));
  return pref * prod_inv_sqrt_y(cfg) / denom * bracket;
}

PdeCoefficients pde_coefficients(const SpectralConfig& cfg) {
  PdeCoefficients c{cfg, potential_affine(cfg), {}};
  for (int l = 0; l < cfg.n; ++l) {
    std::vector<cplx> row;
    for (int d = 0; d <= cfg.L; ++d) row.push_back(psi(l, d, cfg.L, cfg.n, cfg.q()));
    c.psi_table.push_back(std::move(row));
  }
  return c;
}

cplx apply_closedform(const SpectralConfig& cfg, const MultiPoly& f, std::span<const cplx> xs) {
  cplx out = eval_V(cfg, xs) * poly_eval(f, xs);
  for (int i = 0; i < static_cast<int>(xs.size()); ++i)
    out += eval_Q(cfg, i, xs) * poly_eval(partial_derivative(f, i, cfg.L - 1), xs);
  return out;
}

ClosedformResidual closedform_residual(const SpectralConfig& cfg, const MultiPoly& f, cplx delta,
                                       std::span<const std::vector<cplx>> points) {
  ClosedformResidual r;
  for (const auto& xs : points) {
    const cplx fv = poly_eval(f, xs);
    const cplx pot = eval_V(cfg, xs) * fv;
    cplx total = pot - delta * fv;
    double scale = std::max(std::abs(pot), std::abs(delta * fv));
    for (int i = 0; i < static_cast<int>(xs.size()); ++i) {
      const cplx term = eval_Q(cfg, i, xs) * poly_eval(partial_derivative(f, i, cfg.L - 1), xs);
      total += term;
      scale = std::max(scale, std::abs(term));
    }
    r.max_abs = std::max(r.max_abs, std::abs(total));
    if (scale > 0.0) r.relative = std::max(r.relative, std::abs(total) / scale);
  }
  return r;
}

std::vector<std::vector<cplx>> random_points(int nvars, int count, std::uint64_t seed) {
  ComplexSampler draw(seed, 0.5, 1.5);
  std::vector<std::vector<cplx>> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<cplx> xs;
    for (int i = 0; i < nvars; ++i) xs.push_back(std::exp(2.0 * draw()));
    bool distinct = true;
    for (int i = 0; i < nvars; ++i)
      for (int j = i + 1; j < nvars; ++j)
        if (std::abs(xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)]) < 0.05) distinct = false;
    if (distinct) out.push_back(std::move(xs));
  }
  return out;
}

PolyOperator closedform_operator(const SpectralConfig& cfg) {
  const int n = cfg.n;
  const int m = cfg.L - 1;
  const auto dim = static_cast<Eigen::Index>(basis_exponents(n, m, PolyBasis::Symmetric).size());
  const TensorGrid grid = disjoint_circle_grid(n, cfg.L, 1.0);
  CMatrix mat(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const MultiPoly p = basis_element(n, m, PolyBasis::Symmetric, static_cast<std::size_t>(b));
    std::vector<cplx> values(grid.points());
    for (std::size_t g = 0; g < values.size(); ++g) values[g] = apply_closedform(cfg, p, grid.point(g));
    const MultiPoly image = n == 0 ? MultiPoly::constant(0, m, values[0]) : interpolate_tensor(grid, values);
    mat.col(b) = basis_coordinates(image, PolyBasis::Symmetric);
  }
  return {n, m, PolyBasis::Symmetric, std::move(mat)};
}

ClosedformComparison compare_omega_closedform(const SpectralConfig& cfg, const OmegaFamily& family) {
  ClosedformComparison out;
  out.closedform = closedform_operator(cfg);
  out.matrix_difference =
      relative_difference(out.closedform.matrix(), family.omegas[static_cast<std::size_t>(cfg.L - 1)].matrix());

  ComplexSampler draw(cfg.seed ^ 0xc105edULL);
  const auto points = random_points(cfg.n, 3, cfg.seed ^ 0x90175ULL);
  for (const auto& xs : points) {
    MultiPoly p(cfg.n, cfg.L - 1);
    for (auto& c : p.coeffs()) c = draw();
    const cplx extracted = omega_pointwise(p, cfg.L - 1, xs, cfg);
    const cplx closed = apply_closedform(cfg, p, xs);
    const double scale = std::max(std::abs(extracted), std::abs(closed));
    if (scale > 0.0) out.pointwise_difference = std::max(out.pointwise_difference, std::abs(extracted - closed) / scale);
  }
  return out;
}

ClosedformComparison compare_omega_closedform(const SpectralConfig& cfg) {
  return compare_omega_closedform(cfg, extract_omegas(cfg));
}

cplx n0_delta(const SpectralConfig& cfg) {
  cplx ysum = 0.0;
  for (const cplx y : cfg.ys()) ysum += y;
  return -(1.0 + std::pow(cfg.q(), cfg.L - 2)) * ysum * prod_inv_sqrt_y(cfg) / std::pow(2.0, cfg.L);
}

cplx n1l2_exponent(const SpectralConfig& cfg, cplx delta) {
  const cplx q = cfg.q();
  const cplx q2m1 = q * q - 1.0;
  const cplx sq = cfg.sqrt_y(0) * cfg.sqrt_y(1);
  return -q / (q2m1 * q2m1) * ((1.0 + q * q) * (cfg.y(0) + cfg.y(1)) / sq + 4.0 * q * delta);
}

cplx n1l2_general_solution(const SpectralConfig& cfg, cplx delta, cplx x) {
  const cplx q = cfg.q();
  const cplx sq = cfg.sqrt_y(0) * cfg.sqrt_y(1);
  const cplx xi = std::atanh(q * x / sq);
  return std::sqrt(q * q * x * x - sq * sq) * std::exp(n1l2_exponent(cfg, delta) * xi);
}

cplx n2l2_zeta(const SpectralConfig& cfg, cplx x1, cplx x2) {
  const cplx q2 = cfg.q() * cfg.q();
  const cplx y1 = cfg.y(0), y2 = cfg.y(1);
  return q2 * (y1 + y2) * (x1 + x2) - (1.0 + q2) * (y1 * y2 + q2 * x1 * x2);
}

cplx n2l2_exponent(const SpectralConfig& cfg, cplx delta) {
  const cplx q = cfg.q();
  const cplx q2 = q * q;
  const cplx y1 = cfg.y(0), y2 = cfg.y(1);
  const cplx sq = cfg.sqrt_y(0) * cfg.sqrt_y(1);
  return ((1.0 + q2 * q2) * (y1 + y2) + 4.0 * q2 * sq * delta) / ((q2 - 1.0) * (q2 - 1.0) * (y1 + y2));
}

SpecialSolutions special_solutions(SpecialCase which, const SpectralConfig& cfg) {
  SpecialSolutions out;
  const cplx q = cfg.q();
  switch (which) {
    case SpecialCase::N0:
      out.eigenfunctions.push_back(MultiPoly::constant(0, cfg.L - 1, 1.0));
      out.deltas.push_back(n0_delta(cfg));
      break;
    case SpecialCase::N1L2: {
      if (cfg.L != 2) throw InvalidArgument("special_solutions: the n = 1 case needs L = 2");
      const cplx sq = cfg.sqrt_y(0) * cfg.sqrt_y(1);
      const cplx base = -(1.0 + q * q) * (cfg.y(0) + cfg.y(1)) / (4.0 * q * sq);
      const cplx shift = (q * q - 1.0) * (q * q - 1.0) / (4.0 * q * q);
      // Exponent +1 collapses the solution to q x + √(y1 y2); −1 to q x − √(y1 y2).
      for (const double sign : {1.0, -1.0}) {
        MultiPoly f(1, 1);
        f[0] = sign * sq;
        f[1] = q;
        out.eigenfunctions.push_back(f);
        out.deltas.push_back(base - sign * shift);
      }
      break;
    }
    case SpecialCase::N2L2: {
      if (cfg.L != 2) throw InvalidArgument("special_solutions: the n = 2 case needs L = 2");
      const cplx q2 = q * q;
      const cplx y1 = cfg.y(0), y2 = cfg.y(1);
      MultiPoly f(2, 1);
      f.coefficient(std::vector<int>{0, 0}) = -(1.0 + q2) * y1 * y2;
      f.coefficient(std::vector<int>{1, 0}) = q2 * (y1 + y2);
      f.coefficient(std::vector<int>{0, 1}) = q2 * (y1 + y2);
      f.coefficient(std::vector<int>{1, 1}) = -(1.0 + q2) * q2;
      out.eigenfunctions.push_back(f);
      out.deltas.push_back(-(y1 + y2) / (2.0 * cfg.sqrt_y(0) * cfg.sqrt_y(1)));
      break;
    }
  }
  return out;
}

}  // namespace bpl
