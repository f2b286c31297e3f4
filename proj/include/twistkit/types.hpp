// Shared scalar/matrix aliases, tolerance policy and seeded sampling helpers
// used across the library.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace twistkit {

using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline constexpr const char* kVersion = "0.1.0";

// Tolerance policy.  kIdentityTol is the absolute floor for algebraic
// identities on unit-scale inputs; checks on larger operands scale it by the
// natural magnitude of the identity's terms (see scaled_tol below), since a
// product of k matrices of norm ~1e3 cannot be expected to close an identity
// to 1e-9 in double precision.
inline constexpr double kIdentityTol = 1e-9;
// Eigenvalues within this relative band around zero make a signature
// (or taming index) decision indeterminate rather than silently signed.
inline constexpr double kSignatureBand = 1e-7;
// Relative singular value cutoff for rank decisions, and the spectral gap
// that must separate retained from discarded values for the decision to count.
inline constexpr double kRankRelTol = 1e-8;
inline constexpr double kRankGapFactor = 1e3;
// Imaginary parts below this are truncated when a matrix is known to be real.
inline constexpr double kImagTol = 1e-10;
// Positive definiteness: smallest eigenvalue must exceed this times the norm.
inline constexpr double kPosDefFloor = 1e-10;
// Fiber coordinate guard: |w| >= 1 - kFiberGuard is rejected.
inline constexpr double kFiberGuard = 1e-12;
// Default step for finite-difference derivative fallbacks.
inline constexpr double kFdStep = 1e-5;

// Numerical breakdown distinct from a precondition violation: singular
// denominators, degenerate pivots, loss of rank mid-algorithm.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rank or signature decision fell inside the undecidable band.  Suites map
// this to an "indeterminate" check status (which still fails the run).
class IndeterminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

// Absolute tolerance for an identity whose terms have the given natural
// scale.  Unit-scale inputs get kIdentityTol exactly.
inline double scaled_tol(double scale, double base = kIdentityTol) {
  return base * std::max(1.0, scale);
}

// Deterministic uniform sampling.  std::uniform_real_distribution is
// implementation-defined, so draws are mapped from raw mt19937_64 output by
// hand; identical seeds give bitwise-identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform on [-1, 1) with 53-bit resolution
  double unit() {
    return static_cast<double>(gen_() >> 11) * (2.0 / 9007199254740992.0) - 1.0;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Derives the seed for one sample of a batch.  splitmix64-style mixing keeps
// per-sample streams independent of each other and of the batch size, so a
// batch of 2m samples extends a batch of m instead of reshuffling it.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace twistkit
