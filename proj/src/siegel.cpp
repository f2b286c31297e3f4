#include "twistkit/siegel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace twistkit {

namespace {

using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// symmetry to 1e-9 absolute, positive definiteness through the smallest
// eigenvalue; shared by the constructor, is_in_domain and mobius
bool domain_parts_ok(const Matrix& x, const Matrix& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows() ||
      x.rows() == 0)
    return false;
  if (max_abs(Matrix(x - x.transpose())) > kIdentityTol) return false;
  if (max_abs(Matrix(y - y.transpose())) > kIdentityTol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (y + y.transpose()));
  if (es.info() != Eigen::Success) return false;
  return es.eigenvalues()(0) > kPosDefFloor * std::max(1.0, max_abs(y));
}

// phi as a function of the real and imaginary parts, templated on the scalar
// so the finite-difference residuals can run in extended precision
template <typename Mat>
Mat phi_blocks(const Mat& x, const Mat& y) {
  using Sc = typename Mat::Scalar;
  const int n = static_cast<int>(x.rows());
  Mat yinv = y.ldlt().solve(Mat::Identity(n, n));
  yinv = (Sc(0.5) * (yinv + yinv.transpose())).eval();
  const Mat a = x * yinv;
  Mat out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = a;
  out.topRightCorner(n, n) = -a * x - y;
  out.bottomLeftCorner(n, n) = yinv;
  out.bottomRightCorner(n, n) = -yinv * x;
  return out;
}

void check_direction(const SiegelPoint& z, const CMatrix& h, double step) {
  if (h.rows() != z.n || h.cols() != z.n)
    throw std::invalid_argument("antiholomorphy: direction has wrong dimensions");
  if (max_abs(CMatrix(h - h.transpose())) > scaled_tol(max_abs(h)))
    throw std::invalid_argument("antiholomorphy: direction must be complex symmetric");
  if (!(step > 0.0) || step > 1e-3)
    throw std::invalid_argument("antiholomorphy: step must lie in (0, 1e-3]");
}

// the four shifted evaluation points of the two central differences, as
// (x, y) pairs in extended precision
struct FdPoints {
  LMatrix xp, yp, xm, ym;    // z +- step * h
  LMatrix xip, yip, xim, yim;  // z +- step * (i h)
};

FdPoints shifted_points(const SiegelPoint& z, const CMatrix& h, double step) {
  const Matrix hr = h.real(), hi = h.imag();
  FdPoints p;
  const LMatrix x = z.x.cast<long double>(), y = z.y.cast<long double>();
  const LMatrix lhr = hr.cast<long double>(), lhi = hi.cast<long double>();
  const long double s = step;
  p.xp = x + s * lhr;
  p.yp = y + s * lhi;
  p.xm = x - s * lhr;
  p.ym = y - s * lhi;
  p.xip = x - s * lhi;  // i h = -Im h + i Re h
  p.yip = y + s * lhr;
  p.xim = x + s * lhi;
  p.yim = y - s * lhr;
  auto ok = [](const LMatrix& a, const LMatrix& b) {
    return domain_parts_ok(a.cast<double>(), b.cast<double>());
  };
  if (!ok(p.xp, p.yp) || !ok(p.xm, p.ym) || !ok(p.xip, p.yip) || !ok(p.xim, p.yim))
    throw NumericalError("antiholomorphy: step pushes an evaluation point out of the domain");
  return p;
}

}  // namespace

SiegelPoint::SiegelPoint(Matrix x_, Matrix y_) : x(std::move(x_)), y(std::move(y_)) {
  if (!domain_parts_ok(x, y))
    throw std::invalid_argument(
        "SiegelPoint: parts must be symmetric with positive definite imaginary part");
  n = static_cast<int>(x.rows());
}

CMatrix SiegelPoint::z() const {
  return x.cast<Complex>() + Complex(0.0, 1.0) * y.cast<Complex>();
}

bool is_in_domain(const CMatrix& z) {
  if (z.rows() != z.cols() || z.rows() == 0) return false;
  return domain_parts_ok(z.real(), z.imag());
}

SiegelPoint mobius(const Matrix& g, const SiegelPoint& z) {
  const int n = z.n;
  if (!sp_membership(g, standard_form(n)))
    throw std::invalid_argument("mobius: g is not symplectic for the standard form");
  const CMatrix zc = z.z();
  const CMatrix a = g.topLeftCorner(n, n).cast<Complex>();
  const CMatrix b = g.topRightCorner(n, n).cast<Complex>();
  const CMatrix c = g.bottomLeftCorner(n, n).cast<Complex>();
  const CMatrix d = g.bottomRightCorner(n, n).cast<Complex>();
  const CMatrix den = c * zc + d;
  Eigen::FullPivLU<CMatrix> lu(den.transpose());
  if (lu.rank() < n)
    throw NumericalError("mobius: denominator c z + d is numerically singular");
  // (a z + b) den^-1, solved through the transposed system
  CMatrix w = lu.solve(CMatrix((a * zc + b).transpose())).transpose();
  const double asym = max_abs(CMatrix(w - w.transpose()));
  if (asym > scaled_tol(max_abs(w)))
    throw NumericalError("mobius: result lost symmetry (asymmetry " + std::to_string(asym) + ")");
  w = 0.5 * (w + w.transpose()).eval();
  if (!is_in_domain(w))
    throw NumericalError("mobius: result left the domain");
  return SiegelPoint(w.real(), w.imag());
}

CompatibleStructure phi(const SiegelPoint& z) {
  const Matrix j = phi_blocks<Matrix>(z.x, z.y);
  return make_compatible(ComplexStructure(z.n, j), standard_form(z.n));
}

SiegelPoint phi_inverse(const ComplexStructure& j) {
  const int n = j.n;
  const SymplecticForm form = standard_form(n);
  if (!is_compatible(j, form))
    throw std::invalid_argument("phi_inverse: j is not compatible with the standard form");
  const Matrix j21 = j.j.bottomLeftCorner(n, n);
  Eigen::FullPivLU<Matrix> lu(j21);
  if (lu.rank() < n)
    throw NumericalError("phi_inverse: lower-left block of j is numerically singular");
  const int l = taming_index(j, form);
  if (l != 0)
    throw std::invalid_argument("phi_inverse: taming index is " + std::to_string(l) +
                                "; the map covers the index-0 component only");
  Matrix y = lu.solve(Matrix::Identity(n, n));
  if (max_abs(Matrix(y - y.transpose())) > scaled_tol(max_abs(y)))
    throw NumericalError("phi_inverse: recovered y is not symmetric");
  y = 0.5 * (y + y.transpose()).eval();
  Matrix x = j.j.topLeftCorner(n, n) * y;
  if (max_abs(Matrix(x - x.transpose())) > scaled_tol(max_abs(x)))
    throw NumericalError("phi_inverse: recovered x is not symmetric");
  x = 0.5 * (x + x.transpose()).eval();
  return SiegelPoint(x, y);
}

double antiholomorphy_residual(const SiegelPoint& z, const CMatrix& h, double step) {
  check_direction(z, h, step);
  const FdPoints p = shifted_points(z, h, step);
  const long double s2 = 2.0L * static_cast<long double>(step);
  const LMatrix dh = (phi_blocks<LMatrix>(p.xp, p.yp) - phi_blocks<LMatrix>(p.xm, p.ym)) / s2;
  const LMatrix dih =
      (phi_blocks<LMatrix>(p.xip, p.yip) - phi_blocks<LMatrix>(p.xim, p.yim)) / s2;
  const LMatrix phi0 = phi_blocks<LMatrix>(z.x.cast<long double>(), z.y.cast<long double>());
  const LMatrix r = dih + phi0 * dh;
  return static_cast<double>(r.cwiseAbs().maxCoeff());
}

double antiholomorphy_residual_right(const SiegelPoint& z, const CMatrix& h, double step) {
  check_direction(z, h, step);
  const FdPoints p = shifted_points(z, h, step);
  const long double s2 = 2.0L * static_cast<long double>(step);
  const LMatrix dh = (phi_blocks<LMatrix>(p.xp, p.yp) - phi_blocks<LMatrix>(p.xm, p.ym)) / s2;
  const LMatrix dih =
      (phi_blocks<LMatrix>(p.xip, p.yip) - phi_blocks<LMatrix>(p.xim, p.yim)) / s2;
  const LMatrix phi0 = phi_blocks<LMatrix>(z.x.cast<long double>(), z.y.cast<long double>());
  const LMatrix r = dih + dh * phi0;
  return static_cast<double>(r.cwiseAbs().maxCoeff());
}

double tangency_residual(const SiegelPoint& z, const CMatrix& h, double step) {
  check_direction(z, h, step);
  const FdPoints p = shifted_points(z, h, step);
  const long double s2 = 2.0L * static_cast<long double>(step);
  const LMatrix dh = (phi_blocks<LMatrix>(p.xp, p.yp) - phi_blocks<LMatrix>(p.xm, p.ym)) / s2;
  const LMatrix phi0 = phi_blocks<LMatrix>(z.x.cast<long double>(), z.y.cast<long double>());
  const LMatrix r = dh * phi0 + phi0 * dh;
  return static_cast<double>(r.cwiseAbs().maxCoeff());
}

Matrix embed_unitary(const CMatrix& a, bool check) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || n == 0)
    throw std::invalid_argument("embed_unitary: a must be square and nonempty");
  if (check) {
    const double dev =
        max_abs(CMatrix(a.adjoint() * a - CMatrix::Identity(n, n)));
    if (dev > scaled_tol(max_abs(a) * max_abs(a)))
      throw std::invalid_argument("embed_unitary: a is not unitary (deviation " +
                                  std::to_string(dev) + ")");
  }
  const Matrix p = a.real(), q = a.imag();
  Matrix g(2 * n, 2 * n);
  g.topLeftCorner(n, n) = p;
  g.topRightCorner(n, n) = q;
  g.bottomLeftCorner(n, n) = -q;
  g.bottomRightCorner(n, n) = p;
  return g;
}

bool has_unitary_block_shape(const Matrix& g, double tol) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0 || g.rows() == 0) return false;
  const int n = static_cast<int>(g.rows()) / 2;
  const double scale = std::max(1.0, max_abs(g));
  return max_abs(Matrix(g.bottomRightCorner(n, n) - g.topLeftCorner(n, n))) <= tol * scale &&
         max_abs(Matrix(g.bottomLeftCorner(n, n) + g.topRightCorner(n, n))) <= tol * scale;
}

CMatrix random_unitary(int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("random_unitary: n must be positive");
  Rng rng(seed);
  CMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = Complex(rng.unit(), rng.unit());
  const CMatrix k = 0.5 * (b - b.adjoint());
  return k.exp();
}

SiegelPoint random_siegel_point(int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("random_siegel_point: n must be positive");
  Rng rng(seed);
  Matrix x(n, n);
  for (int i = 0; i < n; ++i) {
    x(i, i) = rng.unit();
    for (int j = i + 1; j < n; ++j) x(i, j) = x(j, i) = rng.unit();
  }
  Matrix l(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) l(i, j) = 0.5 * rng.unit();
  const Matrix y = l * l.transpose() + 0.25 * Matrix::Identity(n, n);
  return SiegelPoint(x, y);
}

CMatrix random_symmetric_direction(int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("random_symmetric_direction: n must be positive");
  Rng rng(seed);
  CMatrix h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = Complex(rng.unit(), rng.unit());
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = Complex(rng.unit(), rng.unit());
      h(j, i) = h(i, j);
    }
  }
  return h;
}

}  // namespace twistkit
