#include "bpl/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "bpl/config.hpp"

namespace bpl {

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const CVector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double relative_difference(const CMatrix& a, const CMatrix& b) {
  const double scale = std::max(max_abs(a), max_abs(b));
  if (scale == 0.0) return 0.0;
  return max_abs(CMatrix(a - b)) / scale;
}

cplx ComplexSampler::operator()() {
  std::uniform_real_distribution<double> re(-re_, re_);
  std::uniform_real_distribution<double> im(-im_, im_);
  const double r = re(engine_);
  return {r, im(engine_)};
}

std::vector<cplx> ComplexSampler::draw(std::size_t count) {
  std::vector<cplx> out(count);
  for (auto& z : out) z = (*this)();
  return out;
}

double ComplexSampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

std::vector<cplx> SpectralConfig::ys() const {
  std::vector<cplx> out;
  out.reserve(mu.size());
  for (const auto& m : mu) out.push_back(std::exp(2.0 * m));
  return out;
}

namespace {
bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace

void SpectralConfig::validate() const {
  if (L < 1) throw ConfigError("L", "must be a positive integer, got " + std::to_string(L));
  if (n < 0) throw ConfigError("n", "must be non-negative, got " + std::to_string(n));
  if (n > L)
    throw ConfigError("n", "must not exceed L (" + std::to_string(n) + " > " + std::to_string(L) + ")");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ConfigError("tol", "must be a positive real");
  if (!finite(gamma)) throw ConfigError("gamma", "must be finite");
  if (std::abs(std::sinh(gamma)) <= tol)
    throw ConfigError("gamma", "sinh(gamma) vanishes; the c-weight is degenerate");
  if (mu.size() != static_cast<std::size_t>(L))
    throw ConfigError("mu", "expected a list of L = " + std::to_string(L) + " inhomogeneities, got " +
                                std::to_string(mu.size()));
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const cplx yj = std::exp(2.0 * mu[j]);
    if (!finite(mu[j]) || !finite(yj) || yj == cplx{})
      throw ConfigError("mu", "entry " + std::to_string(j) + " gives a non-finite or zero y_j");
  }
}

int max_dense_L() {
  if (const char* env = std::getenv("BPL_MAX_L")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0 && v < 30) return static_cast<int>(v);
  }
  return 12;
}

void require_dense_capacity(int L) {
  if (L > max_dense_L())
    throw CapacityError("L = " + std::to_string(L) + " exceeds the dense capacity cap of " +
                        std::to_string(max_dense_L()) + " (set BPL_MAX_L to raise it)");
}

SpectralConfig make_config(int L, int n, cplx gamma, std::uint64_t seed) {
  SpectralConfig cfg;
  cfg.L = L;
  cfg.n = n;
  cfg.gamma = gamma;
  cfg.seed = seed;
  ComplexSampler draw(seed);
  cfg.mu = draw.draw(static_cast<std::size_t>(L));
  return cfg;
}

SpectralConfig random_config(int L, int n, std::uint64_t seed) {
  ComplexSampler draw(seed ^ 0x9e3779b97f4a7c15ULL);
  cplx gamma = draw();
  while (std::abs(std::sinh(gamma)) < 0.1) gamma = draw();
  return make_config(L, n, gamma, seed);
}

}  // namespace bpl
