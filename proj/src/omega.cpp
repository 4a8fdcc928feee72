#include "bpl/omega.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bpl {

namespace {

std::vector<cplx> to_lambdas(std::span<const cplx> xs) {
  std::vector<cplx> out;
  for (const cplx x : xs) out.push_back(0.5 * std::log(x));
  return out;
}

// x_0 samples sit on a circle well outside the x coordinates.
std::vector<cplx> x0_nodes(int count, std::span<const cplx> xs) {
  double r = 1.0;
  for (const cplx x : xs) r = std::max(r, std::abs(x));
  return circle_nodes(count, 1.6 * r, 0.41);
}

// Lemma-4 operators C^{(i)}_j applied to p, for every variable i.
std::vector<std::vector<MultiPoly>> substitution_images(const MultiPoly& p) {
  std::vector<std::vector<MultiPoly>> out;
  for (int i = 0; i < p.nvars(); ++i) {
    std::vector<MultiPoly> images;
    for (const auto& op : substitution_operator_coefficients(p.nvars(), p.degree_bound(), i))
      images.push_back(op.apply(p));
    out.push_back(std::move(images));
  }
  return out;
}

cplx apply_with_images(const MultiPoly& p, const std::vector<std::vector<MultiPoly>>& images, cplx x0,
                       std::span<const cplx> xs, const SpectralConfig& cfg) {
  const BarredCoefficients c = barred_coefficients(x0, xs, cfg);
  cplx out = c.J0 * poly_eval(p, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cplx sub = 0.0;
    cplx pw = 1.0;
    for (const auto& img : images[i]) {
      sub += pw * poly_eval(img, xs);
      pw *= x0;
    }
    out -= c.K[i] * sub;
  }
  return out;
}

}  // namespace

BarredCoefficients barred_coefficients(cplx x0, std::span<const cplx> xs, const SpectralConfig& cfg) {
  const cplx l0 = 0.5 * std::log(x0);
  const std::vector<cplx> ls = to_lambdas(xs);
  const FzCoefficients c = fz_coefficients(l0, ls, cfg);
  const double L = cfg.L;
  BarredCoefficients out{c.J0 * std::exp(L * l0), {}};
  for (std::size_t i = 0; i < ls.size(); ++i) out.K.push_back(c.K[i] * std::exp(l0 + (L - 1.0) * ls[i]));
  return out;
}

cplx apply_Lbar(const MultiPoly& p, cplx x0, std::span<const cplx> xs, const SpectralConfig& cfg) {
  const BarredCoefficients c = barred_coefficients(x0, xs, cfg);
  cplx out = c.J0 * poly_eval(p, xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    out -= c.K[i] * poly_eval(taylor_substitution(p, static_cast<int>(i), x0, p.degree_bound()), xs);
  return out;
}

cplx omega_pointwise(const MultiPoly& p, int k, std::span<const cplx> xs, const SpectralConfig& cfg) {
  const int L = cfg.L;
  if (k < 0 || k > L) throw InvalidArgument("omega_pointwise: k outside [0, L]");
  const auto images = substitution_images(p);
  const std::vector<cplx> nodes = x0_nodes(L + 1, xs);
  std::vector<cplx> values;
  for (const cplx x0 : nodes) values.push_back(apply_with_images(p, images, x0, xs, cfg));
  return interpolate_1d(nodes, values)[static_cast<std::size_t>(k)];
}

LbarOperator build_Lbar(const SpectralConfig& cfg, std::size_t max_dim) {
  cfg.validate();
  const int n = cfg.n;
  const int L = cfg.L;
  const int m = L - 1;
  const auto exps = basis_exponents(n, m, PolyBasis::Symmetric);
  if (exps.size() > max_dim)
    throw CapacityError("build_Lbar: symmetric dimension " + std::to_string(exps.size()) + " exceeds " +
                        std::to_string(max_dim));
  const auto dim = static_cast<Eigen::Index>(exps.size());

  const TensorGrid grid = disjoint_circle_grid(n, L, 1.0);
  const std::vector<cplx> nodes = circle_nodes(L + 2, 1.6, 0.41);
  LbarOperator out;
  out.n = n;
  out.L = L;
  out.condition = std::max(grid.worst_condition(), vandermonde_condition(nodes));
  std::vector<CMatrix> mats(static_cast<std::size_t>(L + 1), CMatrix::Zero(dim, dim));

  // Precompute the barred coefficients on the full (x_0, x) grid.
  const std::size_t npts = grid.points();
  std::vector<std::vector<cplx>> points(npts);
  std::vector<std::vector<BarredCoefficients>> coeff(npts);
  for (std::size_t g = 0; g < npts; ++g) {
    points[g] = grid.point(g);
    for (const cplx x0 : nodes) coeff[g].push_back(barred_coefficients(x0, points[g], cfg));
  }

  double top_scale = 0.0;
  double excess = 0.0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    const MultiPoly p = basis_element(n, m, PolyBasis::Symmetric, static_cast<std::size_t>(b));
    const auto images = substitution_images(p);
    // samples[k][g]: coefficient of x_0^k at grid point g.
    std::vector<std::vector<cplx>> samples(static_cast<std::size_t>(L + 1), std::vector<cplx>(npts));
    for (std::size_t g = 0; g < npts; ++g) {
      const auto& xs = points[g];
      const cplx pval = poly_eval(p, xs);
      std::vector<cplx> values;
      for (std::size_t t = 0; t < nodes.size(); ++t) {
        const auto& c = coeff[g][t];
        cplx v = c.J0 * pval;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          cplx sub = 0.0;
          cplx pw = 1.0;
          for (const auto& img : images[i]) {
            sub += pw * poly_eval(img, xs);
            pw *= nodes[t];
          }
          v -= c.K[i] * sub;
        }
        values.push_back(v);
      }
      const std::vector<cplx> cx = interpolate_1d(nodes, values);
      for (int k = 0; k <= L; ++k) {
        samples[static_cast<std::size_t>(k)][g] = cx[static_cast<std::size_t>(k)];
        top_scale = std::max(top_scale, std::abs(cx[static_cast<std::size_t>(k)]) * std::pow(1.6, k));
      }
      excess = std::max(excess, std::abs(cx.back()) * std::pow(1.6, L + 1));
    }
    for (int k = 0; k <= L; ++k) {
      MultiPoly image = n == 0 ? MultiPoly::constant(0, m, samples[static_cast<std::size_t>(k)][0])
                               : interpolate_tensor(grid, samples[static_cast<std::size_t>(k)]);
      const double scale = image.max_coefficient();
      if (scale > 0.0) out.symmetry_residual = std::max(out.symmetry_residual, asymmetry(image) / scale);
      mats[static_cast<std::size_t>(k)].col(b) = basis_coordinates(image, PolyBasis::Symmetric);
    }
  }
  out.degree_excess = top_scale == 0.0 ? 0.0 : excess / top_scale;
  for (auto& mat : mats) out.coefficients.emplace_back(n, m, PolyBasis::Symmetric, std::move(mat));

  // Held-out polynomiality check at random (x_0, x) with distinct coordinates.
  ComplexSampler draw(cfg.seed ^ 0x51ed2701ULL, 0.4, 1.5);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<cplx> xs;
    for (int i = 0; i < n; ++i) xs.push_back(std::exp(2.0 * draw()));
    const cplx x0 = std::exp(2.0 * draw());
    for (Eigen::Index b = 0; b < dim; ++b) {
      const MultiPoly p = basis_element(n, m, PolyBasis::Symmetric, static_cast<std::size_t>(b));
      const cplx direct = apply_Lbar(p, x0, xs, cfg);
      cplx interp = 0.0;
      double mag = 0.0;
      for (int k = L; k >= 0; --k) {
        const MultiPoly img = out.coefficients[static_cast<std::size_t>(k)].apply(p);
        interp = interp * x0 + poly_eval(img, xs);
        mag = mag * std::abs(x0) + poly_abs_scale(img, xs);
      }
      const double scale = std::max(mag, std::abs(direct));
      if (scale > 0.0)
        out.polynomiality_residual = std::max(out.polynomiality_residual, std::abs(interp - direct) / scale);
    }
  }
  return out;
}

OmegaFamily extract_omegas(const SpectralConfig& cfg) {
  OmegaFamily fam;
  fam.cfg = cfg;
  fam.lbar = build_Lbar(cfg);
  fam.omegas = fam.lbar.coefficients;
  const int L = cfg.L;
  const auto count = static_cast<Eigen::Index>(fam.omegas.size());
  fam.commutator_norms = CMatrix::Zero(count, count);
  for (Eigen::Index i = 0; i < count; ++i)
    for (Eigen::Index j = i + 1; j < count; ++j) {
      const CMatrix& a = fam.omegas[static_cast<std::size_t>(i)].matrix();
      const CMatrix& b = fam.omegas[static_cast<std::size_t>(j)].matrix();
      const double r = relative_difference(a * b, b * a);
      fam.commutator_norms(i, j) = fam.commutator_norms(j, i) = r;
      fam.max_commutator = std::max(fam.max_commutator, r);
    }

  const CMatrix& top = fam.omegas[static_cast<std::size_t>(L)].matrix();
  fam.top_scalar = top.trace() / static_cast<double>(top.rows());
  fam.top_scalar_residual =
      max_abs(CMatrix(top - fam.top_scalar * CMatrix::Identity(top.rows(), top.cols()))) / std::abs(fam.top_scalar);

  // Joint diagonalization through a generic linear combination.
  ComplexSampler draw(cfg.seed ^ 0xa11ce5ULL);
  CMatrix mix = CMatrix::Zero(top.rows(), top.cols());
  for (const auto& om : fam.omegas) mix += draw() * om.matrix() / std::max(max_abs(om.matrix()), 1e-300);
  Eigen::ComplexEigenSolver<CMatrix> solver(mix);
  const CMatrix vecs = solver.eigenvectors();
  for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
    JointEigen je;
    je.vector = vecs.col(c).normalized();
    for (const auto& om : fam.omegas) {
      const CVector w = om.matrix() * je.vector;
      const cplx d = je.vector.dot(w);
      je.delta.push_back(d);
      const double scale = std::max(max_abs(om.matrix()), 1e-300);
      je.residual = std::max(je.residual, (w - d * je.vector).norm() / scale);
    }
    if (je.residual > 1e-6) ++fam.defect;
    fam.joint.push_back(std::move(je));
  }
  return fam;
}

double delta_distance(std::span<const cplx> a, std::span<const cplx> b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k)
    worst = std::max(worst, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
  return worst;
}

EigKReport check_eigK(const SpectralConfig& cfg, const OmegaFamily& family) {
  EigKReport report;
  std::vector<bool> matched(family.joint.size(), false);
  for (auto& choice : eigen_choices(cfg, cfg.n)) {
    EigKEntry e;
    e.eigen_index = choice.index;
    const FnSampler sampler(cfg, choice.pair);
    const PolyFit fit = extract_Fbar(sampler);
    e.fbar_holdout = fit.holdout_error;
    e.delta = lambda_bar_coefficients(choice.pair, cfg).delta;
    const double fscale = fit.poly.max_coefficient();
    if (fscale < 1e-10) {
      e.vanishing = true;
      report.entries.push_back(std::move(e));
      continue;
    }
    const CVector f = basis_coordinates((1.0 / fscale) * fit.poly, PolyBasis::Symmetric);
    for (std::size_t k = 0; k < family.omegas.size(); ++k) {
      const CVector w = family.omegas[k].matrix() * f;
      const CVector rhs = e.delta[k] * f;
      const double scale = std::max({max_abs(w), max_abs(rhs), 1e-300});
      e.residual = std::max(e.residual, max_abs(CVector(w - rhs)) / scale);
    }
    e.containment = std::numeric_limits<double>::infinity();
    std::size_t best = 0;
    for (std::size_t j = 0; j < family.joint.size(); ++j) {
      const double d = delta_distance(family.joint[j].delta, e.delta);
      if (d < e.containment) {
        e.containment = d;
        best = j;
      }
    }
    if (!family.joint.empty()) matched[best] = true;
    report.max_residual = std::max(report.max_residual, e.residual);
    report.max_containment = std::max(report.max_containment, e.containment);
    report.entries.push_back(std::move(e));
  }
  report.surplus = static_cast<int>(std::count(matched.begin(), matched.end(), false));
  return report;
}

EigKReport check_eigK(const SpectralConfig& cfg) { return check_eigK(cfg, extract_omegas(cfg)); }

}  // namespace bpl
