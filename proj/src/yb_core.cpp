#include "bpl/yb_core.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace bpl {

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// 2x2 site operators making up P·R(x): block(a', a)(s', s) = (PR)[(a',s'),(a,s)].
using LOperator = std::array<std::array<CMatrix, 2>, 2>;

LOperator l_operator(cplx x, cplx gamma) {
  const CMatrix r = r_matrix(x, gamma).entries;
  LOperator out;
  for (int ap = 0; ap < 2; ++ap) {
    for (int a = 0; a < 2; ++a) {
      CMatrix m(2, 2);
      for (int sp = 0; sp < 2; ++sp)
        for (int s = 0; s < 2; ++s)
          // P swaps the two tensor factors: (PR)[(a',s'),(a,s)] = R[(s',a'),(a,s)].
          m(sp, s) = r(sp * 2 + ap, a * 2 + s);
      out[ap][a] = std::move(m);
    }
  }
  return out;
}

using Blocks = std::array<std::array<CMatrix, 2>, 2>;

Blocks monodromy_blocks(cplx lambda, const SpectralConfig& cfg) {
  Blocks t = l_operator(lambda - cfg.mu[0], cfg.gamma);
  for (int j = 1; j < cfg.L; ++j) {
    const LOperator lj = l_operator(lambda - cfg.mu[static_cast<std::size_t>(j)], cfg.gamma);
    Blocks next;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) next[a][b] = kron(t[a][0], lj[0][b]) + kron(t[a][1], lj[1][b]);
    t = std::move(next);
  }
  return t;
}

void check_lambda(cplx lambda) {
  if (!finite(lambda)) throw InvalidArgument("spectral parameter must be finite");
}

}  // namespace

std::vector<Eigen::Index> sector_indices(int L, int downs) {
  std::vector<Eigen::Index> out;
  const unsigned dim = 1u << L;
  for (unsigned s = 0; s < dim; ++s)
    if (std::popcount(s) == downs) out.push_back(static_cast<Eigen::Index>(s));
  return out;
}

double sector_leakage(const DenseOperator& op) {
  if (!op.down_shift) return 0.0;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < op.entries.cols(); ++j)
    for (Eigen::Index i = 0; i < op.entries.rows(); ++i) {
      const int shift = std::popcount(static_cast<unsigned>(i)) - std::popcount(static_cast<unsigned>(j));
      if (shift != *op.down_shift) worst = std::max(worst, std::abs(op.entries(i, j)));
    }
  return worst;
}

DenseOperator r_matrix(cplx x, cplx gamma) {
  if (!finite(x) || !finite(gamma)) throw InvalidArgument("r_matrix: non-finite argument");
  const cplx a = weight_a(x, gamma);
  const cplx b = weight_b(x);
  const cplx c = weight_c(gamma);
  CMatrix r = CMatrix::Zero(4, 4);
  r(0, 0) = a;
  r(1, 1) = c;
  r(1, 2) = b;
  r(2, 1) = b;
  r(2, 2) = c;
  r(3, 3) = a;
  return {std::move(r), 0};
}

double check_ybe(cplx x, cplx y, cplx gamma) {
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix rx = r_matrix(x, gamma).entries;
  const CMatrix ry = r_matrix(y, gamma).entries;
  const CMatrix rxy = r_matrix(x + y, gamma).entries;
  const CMatrix lhs = kron(rx, id) * kron(id, rxy) * kron(ry, id);
  const CMatrix rhs = kron(id, ry) * kron(rxy, id) * kron(id, rx);
  return relative_difference(lhs, rhs);
}

MonodromyEntries monodromy(cplx lambda, const SpectralConfig& cfg) {
  check_lambda(lambda);
  require_dense_capacity(cfg.L);
  Blocks t = monodromy_blocks(lambda, cfg);
  return {{std::move(t[0][0]), 0}, {std::move(t[0][1]), 1}, {std::move(t[1][0]), -1}, {std::move(t[1][1]), 0}};
}

DenseOperator transfer(cplx lambda, const SpectralConfig& cfg) {
  auto m = monodromy(lambda, cfg);
  return {m.A.entries + m.D.entries, 0};
}

CMatrix transfer_sector(cplx lambda, const SpectralConfig& cfg, int downs) {
  const CMatrix t = transfer(lambda, cfg).entries;
  const auto idx = sector_indices(cfg.L, downs);
  return t(idx, idx);
}

double check_rtt(cplx x, cplx y, const SpectralConfig& cfg) {
  check_lambda(x);
  check_lambda(y);
  require_dense_capacity(cfg.L);
  const Blocks tx = monodromy_blocks(x, cfg);
  const Blocks ty = monodromy_blocks(y, cfg);
  const CMatrix r = r_matrix(x - y, cfg.gamma).entries;
  const Eigen::Index d = Eigen::Index{1} << cfg.L;
  CMatrix lhs = CMatrix::Zero(4 * d, 4 * d);
  CMatrix rhs = CMatrix::Zero(4 * d, 4 * d);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const int a1 = a / 2, a2 = a % 2, b1 = b / 2, b2 = b % 2;
      auto lblock = lhs.block(a * d, b * d, d, d);
      auto rblock = rhs.block(a * d, b * d, d, d);
      for (int c = 0; c < 4; ++c) {
        const int c1 = c / 2, c2 = c % 2;
        // Structurally zero R entries are skipped so that x == y compares
        // identical floating-point expressions.
        if (r(a, c) != cplx{}) lblock += r(a, c) * (tx[c1][b1] * ty[c2][b2]);
        if (r(c, b) != cplx{}) rblock += (ty[a1][c1] * tx[a2][c2]) * r(c, b);
      }
    }
  }
  return relative_difference(lhs, rhs);
}

BProduct b_product(std::span<const cplx> lambdas, const SpectralConfig& cfg) {
  require_dense_capacity(cfg.L);
  const Eigen::Index d = Eigen::Index{1} << cfg.L;
  CMatrix prod = CMatrix::Identity(d, d);
  for (const cplx l : lambdas) prod = prod * monodromy(l, cfg).B.entries;
  BProduct out{{std::move(prod), static_cast<int>(lambdas.size())}, false};
  out.annihilates_vacuum = static_cast<int>(lambdas.size()) > cfg.L;
  return out;
}

CVector b_product_on_vacuum(std::span<const cplx> lambdas, const SpectralConfig& cfg) {
  require_dense_capacity(cfg.L);
  const Eigen::Index d = Eigen::Index{1} << cfg.L;
  CVector v = CVector::Zero(d);
  v(0) = 1.0;
  for (auto it = lambdas.rbegin(); it != lambdas.rend(); ++it) v = monodromy(*it, cfg).B.entries * v;
  return v;
}

void guard_distinct(cplx lambda0, std::span<const cplx> lambdas) {
  std::vector<cplx> all{lambda0};
  all.insert(all.end(), lambdas.begin(), lambdas.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (std::abs(std::sinh(all[i] - all[j])) < kCoincidenceGuard)
        throw SingularCoefficientError(static_cast<int>(i), static_cast<int>(j),
                                       "coincident rapidities lambda_" + std::to_string(i) + " and lambda_" +
                                           std::to_string(j) + ": b-denominator vanishes");
}

MCoefficients m_coefficients(cplx lambda0, std::span<const cplx> lambdas, cplx gamma) {
  guard_distinct(lambda0, lambdas);
  const auto ratio = [gamma](cplx u) { return weight_a(u, gamma) / weight_b(u); };
  const cplx c = weight_c(gamma);
  MCoefficients m{1.0, 1.0, {}, {}};
  for (const cplx l : lambdas) {
    m.A0 *= ratio(l - lambda0);
    m.D0 *= ratio(lambda0 - l);
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const cplx l = lambdas[i];
    cplx pa = c / weight_b(l - lambda0);
    cplx pd = c / weight_b(lambda0 - l);
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      if (k == i) continue;
      pa *= ratio(lambdas[k] - l);
      pd *= ratio(l - lambdas[k]);
    }
    m.A.push_back(pa);
    m.D.push_back(pd);
  }
  return m;
}

OffResiduals check_off_relations(cplx lambda0, std::span<const cplx> lambdas, const SpectralConfig& cfg) {
  const MCoefficients m = m_coefficients(lambda0, lambdas, cfg.gamma);
  const std::size_t n = lambdas.size();
  const auto m0 = monodromy(lambda0, cfg);
  std::vector<MonodromyEntries> mi;
  for (const cplx l : lambdas) mi.push_back(monodromy(l, cfg));

  const Eigen::Index d = Eigen::Index{1} << cfg.L;
  const auto product_without = [&](std::optional<std::size_t> skip) {
    // [X^{1,n}] when skip is empty, otherwise [X^{0,n} \ {λ_skip}] with λ_0 first.
    CMatrix p = CMatrix::Identity(d, d);
    if (skip) p = m0.B.entries;
    for (std::size_t k = 0; k < n; ++k)
      if (!skip || k != *skip) p = p * mi[k].B.entries;
    return p;
  };
  const CMatrix bx = product_without(std::nullopt);

  const CMatrix lhs_a = m0.A.entries * bx;
  const CMatrix lhs_d = m0.D.entries * bx;
  CMatrix rhs_a = m.A0 * (bx * m0.A.entries);
  CMatrix rhs_d = m.D0 * (bx * m0.D.entries);
  CMatrix rhs_t = bx * (m.A0 * m0.A.entries + m.D0 * m0.D.entries);
  for (std::size_t i = 0; i < n; ++i) {
    const CMatrix bxi = product_without(i);
    rhs_a -= m.A[i] * (bxi * mi[i].A.entries);
    rhs_d -= m.D[i] * (bxi * mi[i].D.entries);
    rhs_t -= bxi * (m.A[i] * mi[i].A.entries + m.D[i] * mi[i].D.entries);
  }
  const CMatrix lhs_t = (m0.A.entries + m0.D.entries) * bx;
  return {relative_difference(lhs_a, rhs_a), relative_difference(lhs_d, rhs_d),
          relative_difference(lhs_t, rhs_t)};
}

Eigenpair::Eigenpair(const SpectralConfig& cfg, int sector, CVector right, CVector left)
    : cfg_(cfg), sector_(sector), indices_(sector_indices(cfg.L, sector)) {
  right_s_ = std::move(right);
  left_s_ = std::move(left);
  left_s_ /= left_s_.norm();
  right_s_ /= right_s_.norm();
  const Eigen::Index d = Eigen::Index{1} << cfg.L;
  right_ = CVector::Zero(d);
  left_ = CVector::Zero(d);
  right_(indices_) = right_s_;
  left_(indices_) = left_s_;
}

cplx Eigenpair::eigenvalue(cplx lambda) const {
  const CMatrix t = transfer_sector(lambda, cfg_, sector_);
  const cplx num = (left_s_.transpose() * t * right_s_).value();
  return num / cplx((left_s_.transpose() * right_s_).value());
}

double Eigenpair::residual(cplx lambda) const {
  const CMatrix t = transfer_sector(lambda, cfg_, sector_);
  const cplx value = eigenvalue(lambda);
  const double scale = std::max(t.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
  const double r = (t * right_s_ - value * right_s_).norm();
  const double l = (t.transpose() * left_s_ - value * left_s_).norm();
  return std::max(r, l) / scale;
}

std::vector<Eigenpair> spectrum(const SpectralConfig& cfg, int sector, std::array<cplx, 2> probes) {
  cfg.validate();
  if (sector < 0 || sector > cfg.L)
    throw InvalidArgument("spectrum: sector " + std::to_string(sector) + " outside [0, L]");
  const CMatrix t1 = transfer_sector(probes[0], cfg, sector);
  const CMatrix t2 = transfer_sector(probes[1], cfg, sector);
  const cplx mix{0.7317, 0.1234};
  Eigen::ComplexEigenSolver<CMatrix> solver(t1 + mix * t2);
  if (solver.info() != Eigen::Success) throw DegeneracyError("spectrum: eigensolver did not converge");
  const CMatrix right = solver.eigenvectors();
  const CMatrix left = right.fullPivLu().inverse();

  std::vector<Eigenpair> out;
  for (Eigen::Index k = 0; k < right.cols(); ++k) {
    Eigenpair pair(cfg, sector, right.col(k), left.row(k).transpose());
    for (const cplx p : probes) {
      const double res = pair.residual(p);
      if (!(res < cfg.tol))
        throw DegeneracyError("spectrum: eigenpair " + std::to_string(k) + " in sector " + std::to_string(sector) +
                              " has residual " + std::to_string(res) +
                              " at a probe point; retry with different probe points");
    }
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace bpl
