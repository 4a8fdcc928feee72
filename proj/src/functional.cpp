#include "bpl/functional.hpp"

#include <algorithm>
#include <cmath>

namespace bpl {

std::vector<EigenChoice> eigen_choices(const SpectralConfig& cfg, int sector) {
  auto pairs = spectrum(cfg, sector);
  const std::array<cplx, 3> extra{cplx{0.517, -0.193}, cplx{-0.088, 0.311}, cplx{0.902, 0.045}};
  std::vector<EigenChoice> out;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    for (const cplx l : extra)
      if (!(pairs[k].residual(l) < cfg.tol))
        throw DegeneracyError("eigenpair " + std::to_string(k) + " is not an eigenvector at an extra point");
    out.push_back({k, std::move(pairs[k])});
  }
  return out;
}

FnSampler::FnSampler(SpectralConfig cfg, CVector dual, int n) : cfg_(std::move(cfg)), dual_(std::move(dual)), n_(n) {
  cfg_.validate();
  require_dense_capacity(cfg_.L);
  if (dual_.size() != (Eigen::Index{1} << cfg_.L)) throw InvalidArgument("FnSampler: dual vector has wrong size");
  if (n_ < 0) throw InvalidArgument("FnSampler: negative n");
  double weight = 0.0;
  if (n_ <= cfg_.L)
    for (const auto i : sector_indices(cfg_.L, n_)) weight = std::max(weight, std::abs(dual_(i)));
  if (weight == 0.0)
    warnings_.push_back("dual vector has no component with " + std::to_string(n_) +
                        " down spins; F_n vanishes identically");
}

FnSampler::FnSampler(const SpectralConfig& cfg, const Eigenpair& pair) : FnSampler(cfg, pair.left(), pair.sector()) {
  pair_ = pair;
}

void FnSampler::warm(std::span<const cplx> lambdas) {
  for (const cplx l : lambdas) {
    const auto key = std::make_pair(l.real(), l.imag());
    if (!cache_.contains(key)) cache_.emplace(key, monodromy(l, cfg_).B.entries);
  }
}

const CMatrix& FnSampler::b_matrix(cplx lambda, CMatrix& scratch) const {
  if (auto it = cache_.find({lambda.real(), lambda.imag()}); it != cache_.end()) return it->second;
  scratch = monodromy(lambda, cfg_).B.entries;
  return scratch;
}

cplx FnSampler::operator()(std::span<const cplx> lambdas) const {
  if (static_cast<int>(lambdas.size()) != n_) throw InvalidArgument("FnSampler: expected n rapidities");
  CVector v = CVector::Zero(dual_.size());
  v(0) = 1.0;
  CMatrix scratch;
  for (auto it = lambdas.rbegin(); it != lambdas.rend(); ++it) v = b_matrix(*it, scratch) * v;
  return dual_.transpose() * v;
}

cplx compute_Fn(const FnSampler& s, std::span<const cplx> lambdas) { return s(lambdas); }

FzCoefficients fz_coefficients(cplx lambda0, std::span<const cplx> lambdas, const SpectralConfig& cfg) {
  const MCoefficients m = m_coefficients(lambda0, lambdas, cfg.gamma);
  const auto prod_a = [&](cplx l) {
    cplx p = 1.0;
    for (const cplx mu : cfg.mu) p *= weight_a(l - mu, cfg.gamma);
    return p;
  };
  const auto prod_b = [&](cplx l) {
    cplx p = 1.0;
    for (const cplx mu : cfg.mu) p *= weight_b(l - mu);
    return p;
  };
  FzCoefficients out{prod_a(lambda0) * m.A0 + prod_b(lambda0) * m.D0, {}};
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    out.K.push_back(prod_a(lambdas[i]) * m.A[i] + prod_b(lambdas[i]) * m.D[i]);
  return out;
}

FzResidual check_fz_residual(const FnSampler& s, cplx lambda0, std::span<const cplx> lambdas) {
  if (!s.eigenpair()) throw InvalidArgument("check_fz_residual: sampler has no eigenpair");
  const FzCoefficients c = fz_coefficients(lambda0, lambdas, s.cfg());
  const cplx f = s(lambdas);
  const cplx eig = s.eigenpair()->eigenvalue(lambda0);
  cplx total = c.J0 * f - eig * f;
  double scale = std::max(std::abs(c.J0 * f), std::abs(eig * f));
  std::vector<cplx> swapped(lambdas.begin(), lambdas.end());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    swapped[i] = lambda0;
    const cplx term = c.K[i] * s(swapped);
    swapped[i] = lambdas[i];
    total -= term;
    scale = std::max(scale, std::abs(term));
  }
  FzResidual out;
  out.scale = scale;
  if (scale < 1e-13) {
    out.vanishing = true;
    return out;
  }
  out.relative = std::abs(total) / scale;
  return out;
}

double poly_abs_scale(const MultiPoly& p, std::span<const cplx> point) {
  MultiPoly mag(p.nvars(), p.degree_bound());
  for (std::size_t k = 0; k < p.size(); ++k) mag[k] = std::abs(p[k]);
  std::vector<cplx> absolute;
  for (const cplx x : point) absolute.emplace_back(std::abs(x));
  return std::abs(poly_eval(mag, absolute));
}

double excess_degree_coefficient(const MultiPoly& p, int bound) {
  double top = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto e = p.exponents_of(k);
    if (std::any_of(e.begin(), e.end(), [bound](int v) { return v > bound; })) top = std::max(top, std::abs(p[k]));
  }
  const double scale = p.max_coefficient();
  return scale == 0.0 ? 0.0 : top / scale;
}

PolyFit extract_Fbar(const FnSampler& s, std::optional<int> degree_bound, std::uint64_t holdout_seed) {
  const int L = s.cfg().L;
  const int n = s.n();
  const int m = degree_bound.value_or(L - 1);
  // x-nodes on the unit circle; λ = (i·arg x)/2 keeps the exponentials exact.
  const std::vector<cplx> xnodes = circle_nodes(m + 1, 1.0, 0.173);
  std::vector<cplx> lnodes;
  for (const cplx x : xnodes) lnodes.push_back(0.5 * std::log(x));
  TensorGrid grid;
  grid.axes.assign(static_cast<std::size_t>(n), xnodes);

  FnSampler warmed = s;
  warmed.warm(lnodes);
  std::vector<cplx> values(grid.points());
  const std::size_t w = static_cast<std::size_t>(m + 1);
  std::vector<cplx> lams(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < values.size(); ++k) {
    std::size_t rest = k;
    cplx lsum = 0.0;
    for (std::size_t i = static_cast<std::size_t>(n); i-- > 0;) {
      lams[i] = lnodes[rest % w];
      lsum += lams[i];
      rest /= w;
    }
    values[k] = warmed(lams) * std::exp(static_cast<double>(L - 1) * lsum);
  }
  PolyFit fit;
  fit.poly = n == 0 ? MultiPoly::constant(0, m, values.at(0)) : interpolate_tensor(grid, values);
  fit.condition = n == 0 ? 1.0 : vandermonde_condition(xnodes);

  ComplexSampler draw(holdout_seed, 0.6, 1.5);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<cplx> l = draw.draw(static_cast<std::size_t>(n));
    std::vector<cplx> x;
    cplx lsum = 0.0;
    for (const cplx li : l) {
      x.push_back(std::exp(2.0 * li));
      lsum += li;
    }
    const cplx direct = warmed(l) * std::exp(static_cast<double>(L - 1) * lsum);
    const double scale = std::max(poly_abs_scale(fit.poly, x), std::abs(direct));
    if (scale > 0.0) fit.holdout_error = std::max(fit.holdout_error, std::abs(poly_eval(fit.poly, x) - direct) / scale);
  }
  return fit;
}

LambdaBarFit lambda_bar_coefficients(const Eigenpair& pair, const SpectralConfig& cfg) {
  const int L = cfg.L;
  const std::vector<cplx> nodes = circle_nodes(L + 2, 1.1, 0.29);
  std::vector<cplx> values;
  for (const cplx x0 : nodes) {
    const cplx l0 = 0.5 * std::log(x0);
    values.push_back(pair.eigenvalue(l0) * std::exp(static_cast<double>(L) * l0));
  }
  const std::vector<cplx> c = interpolate_1d(nodes, values);
  LambdaBarFit fit;
  fit.delta.assign(c.begin(), c.begin() + L + 1);
  double scale = 0.0;
  for (const cplx d : fit.delta) scale = std::max(scale, std::abs(d));
  fit.top_excess = scale == 0.0 ? 0.0 : std::abs(c.back()) / scale;

  const cplx l0{0.3127, -0.4411};
  const cplx x0 = std::exp(2.0 * l0);
  cplx interp = 0.0;
  double mag = 0.0;
  for (int k = L; k >= 0; --k) {
    interp = interp * x0 + fit.delta[static_cast<std::size_t>(k)];
    mag = mag * std::abs(x0) + std::abs(fit.delta[static_cast<std::size_t>(k)]);
  }
  const cplx direct = pair.eigenvalue(l0) * std::exp(static_cast<double>(L) * l0);
  fit.holdout_error = std::abs(interp - direct) / std::max(mag, std::abs(direct));
  return fit;
}

}  // namespace bpl
