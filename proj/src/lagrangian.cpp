#include "twistkit/lagrangian.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace twistkit {

namespace {

using LComplex = std::complex<long double>;
using LCMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;

void check_plane_form(const ComplexPlane& w, const SymplecticForm& form, const char* who) {
  if (w.n != form.n)
    throw std::invalid_argument(std::string(who) + ": plane and form dimensions differ");
}

double isotropy_defect(const ComplexPlane& w, const SymplecticForm& form) {
  const CMatrix om = form.omega.cast<Complex>();
  return max_abs(CMatrix(w.basis.transpose() * om * w.basis));
}

int stacked_rank(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankRelTol * sv(0)) ++r;
  return r;
}

}  // namespace

ComplexPlane::ComplexPlane(CMatrix basis_) : basis(std::move(basis_)) {
  n = static_cast<int>(basis.cols());
  if (n == 0 || basis.rows() != 2 * basis.cols())
    throw std::invalid_argument("ComplexPlane: basis must be 2n x n with n > 0");
  Eigen::JacobiSVD<CMatrix> svd(basis);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(sv.size() - 1) <= kRankRelTol * sv(0))
    throw std::invalid_argument("ComplexPlane: basis is rank deficient");
}

int index_from_signature(const Signature& s) {
  return kIndexCountsPositive ? s.positive : s.negative;
}

ComplexPlane j_to_plane(const CompatibleStructure& j) {
  const int n = j.structure.n;
  const CMatrix pm = projectors(j.structure).minus;
  Eigen::JacobiSVD<CMatrix> svd(pm, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  // an idempotent's nonzero singular values are >= 1, so the spectral gap at
  // position n is wide for any honest input
  if (sv(n - 1) <= kRankRelTol * sv(0) || sv(n) > kRankRelTol * sv(0))
    throw NumericalError("j_to_plane: eigenprojector does not have rank n");
  return ComplexPlane(svd.matrixU().leftCols(n));
}

bool is_real_lagrangian(const ComplexPlane& w, const SymplecticForm& form) {
  check_plane_form(w, form, "is_real_lagrangian");
  const double scale = max_abs(w.basis);
  if (isotropy_defect(w, form) > scaled_tol(scale * scale * max_abs(form.omega)))
    return false;
  CMatrix stacked(2 * w.n, 2 * w.n);
  stacked << w.basis, w.basis.conjugate();
  return stacked_rank(stacked) == 2 * w.n;
}

PlaneReconstruction plane_to_j_detailed(const ComplexPlane& w, const SymplecticForm& form) {
  check_plane_form(w, form, "plane_to_j");
  const int n = w.n, d = 2 * n;
  const double scale = max_abs(w.basis);
  if (isotropy_defect(w, form) > scaled_tol(scale * scale * max_abs(form.omega)))
    throw std::invalid_argument("plane_to_j: plane is not omega-isotropic");

  LCMatrix m(d, d);
  m.leftCols(n) = w.basis.cast<LComplex>();
  m.rightCols(n) = w.basis.conjugate().cast<LComplex>();
  Eigen::FullPivLU<LCMatrix> lu(m.transpose());
  if (lu.rank() < d)
    throw std::invalid_argument(
        "plane_to_j: [W | conj(W)] is singular, the plane meets its conjugate");

  LCMatrix md = m;
  md.leftCols(n) *= LComplex(0.0L, -1.0L);
  md.rightCols(n) *= LComplex(0.0L, 1.0L);
  // j = (m diag) m^-1 through the transposed system
  const LCMatrix j = lu.solve(md.transpose()).transpose();

  double imag_res = 0.0;
  Matrix jr(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      imag_res = std::max(imag_res, static_cast<double>(std::abs(j(r, c).imag())));
      jr(r, c) = static_cast<double>(j(r, c).real());
    }
  if (imag_res > kImagTol)
    throw NumericalError("plane_to_j: reality failure, imaginary residue " +
                         std::to_string(imag_res));
  return PlaneReconstruction{make_compatible(ComplexStructure(n, jr), form), imag_res};
}

CompatibleStructure plane_to_j(const ComplexPlane& w, const SymplecticForm& form) {
  return plane_to_j_detailed(w, form).j;
}

Signature hermitian_signature(const ComplexPlane& w, const SymplecticForm& form) {
  check_plane_form(w, form, "hermitian_signature");
  if (!is_real_lagrangian(w, form))
    throw std::invalid_argument("hermitian_signature: plane is not real-Lagrangian");
  const CMatrix om = form.omega.cast<Complex>();
  CMatrix h = Complex(0.0, 1.0) * (w.basis.transpose() * om * w.basis.conjugate());
  const double dev = max_abs(CMatrix(h - h.adjoint()));
  if (dev > scaled_tol(max_abs(h)))
    throw NumericalError("hermitian_signature: form failed to be Hermitian (deviation " +
                         std::to_string(dev) + ")");
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success)
    throw NumericalError("hermitian_signature: eigensolver failed");
  const Vector& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  Signature sig;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= kSignatureBand * top)
      throw IndeterminateError("hermitian_signature: eigenvalue " + std::to_string(ev(i)) +
                               " inside the undecidable band");
    ++(ev(i) > 0 ? sig.positive : sig.negative);
  }
  return sig;
}

ComplexPlane canonical_plane(int n, int l) {
  if (n <= 0 || l < 0 || l > n)
    throw std::invalid_argument("canonical_plane: need n > 0 and 0 <= l <= n");
  CMatrix w = CMatrix::Zero(2 * n, n);
  for (int j = 0; j < n; ++j) {
    w(j, j) = Complex(1.0, 0.0);
    w(n + j, j) = j < n - l ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
  }
  return ComplexPlane(w);
}

bool same_plane(const ComplexPlane& a, const ComplexPlane& b) {
  if (a.n != b.n)
    throw std::invalid_argument("same_plane: planes live in different dimensions");
  CMatrix stacked(2 * a.n, 2 * a.n);
  stacked << a.basis, b.basis;
  return stacked_rank(stacked) == a.n;
}

std::optional<ParabolicFactors> parabolic_decompose(const CMatrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0 || g.rows() % 2 != 0)
    throw std::invalid_argument("parabolic_decompose: matrix must be square of even size");
  const int n = static_cast<int>(g.rows()) / 2;
  const CMatrix j0 = standard_j(n).cast<Complex>();
  const double scale = max_abs(g);
  if (max_abs(CMatrix(g.transpose() * j0 * g - j0)) > scaled_tol(scale * scale))
    throw std::invalid_argument("parabolic_decompose: matrix is not complex-symplectic");

  if (max_abs(CMatrix(g.bottomLeftCorner(n, n))) > kIdentityTol * std::max(1.0, scale))
    return std::nullopt;  // not block-triangular: rejected, not an error

  const CMatrix a = g.topLeftCorner(n, n);
  Eigen::FullPivLU<CMatrix> lu(a);
  if (lu.rank() < n)
    throw NumericalError("parabolic_decompose: leading block is numerically singular");
  const CMatrix e = lu.solve(g.topRightCorner(n, n));
  if (max_abs(CMatrix(e - e.transpose())) > scaled_tol(max_abs(e)))
    throw NumericalError("parabolic_decompose: factor e failed to be symmetric");
  return ParabolicFactors{a, 0.5 * (e + e.transpose())};
}

CMatrix assemble_parabolic(const CMatrix& a, const CMatrix& e) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || n == 0 || e.rows() != n || e.cols() != n)
    throw std::invalid_argument("assemble_parabolic: blocks must be square of equal size");
  if (max_abs(CMatrix(e - e.transpose())) > scaled_tol(max_abs(e)))
    throw std::invalid_argument("assemble_parabolic: e must be symmetric");
  Eigen::FullPivLU<CMatrix> lu(a);
  if (lu.rank() < n)
    throw std::invalid_argument("assemble_parabolic: a must be invertible");
  CMatrix g = CMatrix::Zero(2 * n, 2 * n);
  g.topLeftCorner(n, n) = a;
  g.topRightCorner(n, n) = a * e;
  g.bottomRightCorner(n, n) = lu.inverse().transpose();
  return g;
}

CMatrix random_pseudo_unitary(int p, int q, std::uint64_t seed) {
  const int n = p + q;
  if (p < 0 || q < 0 || n == 0)
    throw std::invalid_argument("random_pseudo_unitary: need p, q >= 0 with p + q > 0");
  Rng rng(seed);
  CMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = Complex(rng.unit(), rng.unit());
  Vector eta(n);
  for (int i = 0; i < n; ++i) eta(i) = i < p ? 1.0 : -1.0;
  const CMatrix k = eta.asDiagonal().toDenseMatrix().cast<Complex>() * (0.5 * (b - b.adjoint()));
  return k.exp();
}

CMatrix random_invertible(int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("random_invertible: n must be positive");
  Rng rng(seed);
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(rng.unit(), rng.unit());
  Eigen::FullPivLU<CMatrix> lu(a);
  if (lu.rank() < n) a += 1.5 * CMatrix::Identity(n, n);  // vanishing-measure fallback
  return a;
}

CMatrix random_complex_symmetric(int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("random_complex_symmetric: n must be positive");
  Rng rng(seed);
  CMatrix e(n, n);
  for (int i = 0; i < n; ++i) {
    e(i, i) = Complex(rng.unit(), rng.unit());
    for (int j = i + 1; j < n; ++j) {
      e(i, j) = Complex(rng.unit(), rng.unit());
      e(j, i) = e(i, j);
    }
  }
  return e;
}

}  // namespace twistkit
