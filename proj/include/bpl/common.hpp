#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bpl {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Error hierarchy. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error("config field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Raised when a coefficient with a b(λ_i − λ_j) denominator is evaluated at
/// (nearly) coincident rapidities. Carries the offending index pair.
class SingularCoefficientError : public Error {
 public:
  SingularCoefficientError(int i, int j, const std::string& what)
      : Error(what), first_(i), second_(j) {}
  int first() const noexcept { return first_; }
  int second() const noexcept { return second_; }

 private:
  int first_;
  int second_;
};

class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Rapidities closer than this (in |sinh(λ_i − λ_j)|) are rejected.
inline constexpr double kCoincidenceGuard = 1e-7;

/// Largest absolute entry; 0 for empty input.
double max_abs(const CMatrix& m);
double max_abs(const CVector& v);

/// |a − b|_max / max(|a|_max, |b|_max), with 0/0 := 0.
double relative_difference(const CMatrix& a, const CMatrix& b);

/// Seeded source of complex draws: real part in [−re, re], imaginary part in
/// [−im, im].
class ComplexSampler {
 public:
  explicit ComplexSampler(std::uint64_t seed, double re = 1.0, double im = 0.5)
      : engine_(seed), re_(re), im_(im) {}

  cplx operator()();
  std::vector<cplx> draw(std::size_t count);
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
  double re_;
  double im_;
};

}  // namespace bpl
