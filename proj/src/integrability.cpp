#include "twistkit/integrability.hpp"

#include <cmath>

namespace twistkit {

namespace {

void check_antisym_pairblock(const Matrix& m, double tol, const char* who) {
  if (max_abs(Matrix(m + m.transpose())) > tol)
    throw std::invalid_argument(std::string(who) + ": components not antisymmetric in (i, j)");
}

// complex-bilinear evaluation R(x, y) = sum_{i<j} (x_i y_j - x_j y_i) R_ij
CMatrix curvature_eval(const CurvatureTensor& r, const CVector& x, const CVector& y) {
  const int d = 2 * r.n;
  CMatrix out = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Complex c = x(i) * y(j) - x(j) * y(i);
      if (c != Complex(0.0, 0.0)) out += c * r.at(i, j).cast<Complex>();
    }
  return out;
}

}  // namespace

TorsionTensor::TorsionTensor(int n_, std::vector<Matrix> comp_)
    : n(n_), comp(std::move(comp_)) {
  if (n <= 0) throw std::invalid_argument("TorsionTensor: n must be positive");
  const int d = 2 * n;
  if (static_cast<int>(comp.size()) != d)
    throw std::invalid_argument("TorsionTensor: expected 2n component matrices");
  double scale = 0.0;
  for (const Matrix& m : comp) {
    if (m.rows() != d || m.cols() != d)
      throw std::invalid_argument("TorsionTensor: component matrices must be 2n x 2n");
    scale = std::max(scale, max_abs(m));
  }
  for (const Matrix& m : comp) check_antisym_pairblock(m, scaled_tol(scale), "TorsionTensor");
}

CurvatureTensor::CurvatureTensor(int n_, std::vector<Matrix> val_)
    : n(n_), val(std::move(val_)) {
  if (n <= 0) throw std::invalid_argument("CurvatureTensor: n must be positive");
  const int d = 2 * n;
  if (val.size() != static_cast<size_t>(d) * d)
    throw std::invalid_argument("CurvatureTensor: expected (2n)^2 value matrices");
  double scale = 0.0;
  for (const Matrix& m : val) {
    if (m.rows() != d || m.cols() != d)
      throw std::invalid_argument("CurvatureTensor: values must be 2n x 2n");
    scale = std::max(scale, max_abs(m));
  }
  const Matrix om = standard_j(n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (max_abs(Matrix(at(i, j) + at(j, i))) > scaled_tol(scale))
        throw std::invalid_argument("CurvatureTensor: values not antisymmetric in (i, j)");
      const Matrix s = om * at(i, j);
      if (max_abs(Matrix(s - s.transpose())) > scaled_tol(scale))
        throw std::invalid_argument(
            "CurvatureTensor: values must lie in the symplectic Lie algebra");
    }
}

CVector torsion_residual_components(const TorsionTensor& t, const ComplexStructure& j) {
  if (t.n != j.n) throw std::invalid_argument("torsion_residual: dimension mismatch");
  const int d = 2 * t.n;
  const Projectors pr = projectors(j);
  const int pairs = d * (d - 1) / 2;
  CVector out(static_cast<Eigen::Index>(pairs) * d);
  Eigen::Index at = 0;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      const CVector ua = pr.minus.col(a), ub = pr.minus.col(b);
      CVector w(d);
      for (int k = 0; k < d; ++k)
        w(k) = (ua.transpose() * t.comp[k].cast<Complex>() * ub).value();
      out.segment(at, d) = pr.plus * w;
      at += d;
    }
  return out;
}

CVector curvature_residual_components(const CurvatureTensor& r, const ComplexStructure& j,
                                      bool sandwich) {
  if (r.n != j.n) throw std::invalid_argument("curvature_residual: dimension mismatch");
  const int d = 2 * r.n;
  const Projectors pr = projectors(j);
  const CMatrix& args = sandwich ? pr.plus : pr.minus;
  const int pairs = d * (d - 1) / 2;
  CVector out(static_cast<Eigen::Index>(pairs) * d * d);
  Eigen::Index at = 0;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      CMatrix rab = curvature_eval(r, args.col(a), args.col(b));
      if (sandwich) rab = pr.minus * rab * pr.plus;
      out.segment(at, d * d) = Eigen::Map<const CVector>(rab.data(), d * d);
      at += d * d;
    }
  return out;
}

CVector torsion_projected_value(const TorsionTensor& t, const ComplexStructure& j,
                                const CVector& x, const CVector& y) {
  if (t.n != j.n) throw std::invalid_argument("torsion_projected_value: dimension mismatch");
  const int d = 2 * t.n;
  const Projectors pr = projectors(j);
  const CVector u = pr.minus * x, v = pr.minus * y;
  CVector w(d);
  for (int k = 0; k < d; ++k) w(k) = (u.transpose() * t.comp[k].cast<Complex>() * v).value();
  return pr.plus * w;
}

CMatrix curvature_projected_value(const CurvatureTensor& r, const ComplexStructure& j,
                                  const CVector& x, const CVector& y, bool sandwich) {
  if (r.n != j.n) throw std::invalid_argument("curvature_projected_value: dimension mismatch");
  const Projectors pr = projectors(j);
  const CMatrix& p = sandwich ? pr.plus : pr.minus;
  CMatrix val = curvature_eval(r, CVector(p * x), CVector(p * y));
  if (sandwich) val = pr.minus * val * pr.plus;
  return val;
}

double torsion_residual(const TorsionTensor& t, const ComplexStructure& j) {
  return torsion_residual_components(t, j).cwiseAbs().maxCoeff();
}

double curvature_residual(const CurvatureTensor& r, const ComplexStructure& j) {
  return curvature_residual_components(r, j, true).cwiseAbs().maxCoeff();
}

double curvature_02_residual(const CurvatureTensor& r, const ComplexStructure& j) {
  return curvature_residual_components(r, j, false).cwiseAbs().maxCoeff();
}

int decide_rank(const Vector& singular_values, double rel_tol, double gap_factor) {
  const int m = static_cast<int>(singular_values.size());
  if (m == 0) return 0;
  const double top = singular_values(0);
  // conditions are built from O(1) tensors and projectors, so an all-noise
  // spectrum means the condition set is empty
  if (top <= 1e-12) return 0;
  const double cutoff = rel_tol * top;
  int rank = 0;
  while (rank < m && singular_values(rank) > cutoff) ++rank;
  if (rank < m) {
    const double kept = singular_values(rank - 1);
    const double dropped = singular_values(rank);
    if (dropped > 0.0 && kept / dropped < gap_factor)
      throw IndeterminateError(
          "decide_rank: no spectral gap at the cutoff (kept " + std::to_string(kept) +
          ", dropped " + std::to_string(dropped) + ")");
  }
  return rank;
}

KernelReport invariant_kernel(ResidualKind kind, int n, int l, int samples,
                              std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("invariant_kernel: n must be positive");
  if (l < 0 || l > n) throw std::invalid_argument("invariant_kernel: index out of range");
  if (samples < 1) throw std::invalid_argument("invariant_kernel: need at least one sample");

  const int d = 2 * n;
  const int pairs = d * (d - 1) / 2;
  const Matrix model = canonical_structure(n, l);

  const std::vector<Matrix> alg = kind == ResidualKind::torsion ? std::vector<Matrix>() : sp_basis(n);
  const int ncols = kind == ResidualKind::torsion ? pairs * d
                                                  : pairs * static_cast<int>(alg.size());
  const int block = kind == ResidualKind::torsion ? d : d * d;  // residual entries per pair
  Matrix a(static_cast<Eigen::Index>(samples) * pairs * block * 2, ncols);

  Eigen::Index row0 = 0;
  for (int s = 0; s < samples; ++s) {
    Matrix jmat = model;
    if (s > 0) {
      const Matrix g = random_sp(n, mix_seed(seed, static_cast<std::uint64_t>(s)));
      jmat = g * model * g.partialPivLu().solve(Matrix::Identity(d, d));
    }
    const ComplexStructure js(n, jmat);
    const Projectors pr = projectors(js);
    const CMatrix& args = kind == ResidualKind::curvature ? pr.plus : pr.minus;

    // sandwich maps per algebra basis element, fixed across pairs
    std::vector<CMatrix> mm;
    if (kind != ResidualKind::torsion) {
      mm.reserve(alg.size());
      for (const Matrix& am : alg)
        mm.push_back(kind == ResidualKind::curvature
                         ? CMatrix(pr.minus * am.cast<Complex>() * pr.plus)
                         : CMatrix(am.cast<Complex>()));
    }

    for (int pa = 0; pa < d; ++pa)
      for (int pb = pa + 1; pb < d; ++pb) {
        const CVector va = args.col(pa), vb = args.col(pb);
        // antisymmetrized argument coefficients, indexed like the (i < j) pairs
        CVector coef(pairs);
        int pidx = 0;
        for (int i = 0; i < d; ++i)
          for (int jj = i + 1; jj < d; ++jj) coef(pidx++) = va(i) * vb(jj) - va(jj) * vb(i);

        const int per = kind == ResidualKind::torsion ? d : static_cast<int>(alg.size());
        for (int col = 0; col < ncols; ++col) {
          const int cp = col / per;
          const int ck = col % per;
          const Complex c = coef(cp);
          for (int r = 0; r < block; ++r) {
            Complex v;
            if (kind == ResidualKind::torsion) {
              v = c * pr.plus(r, ck);
            } else {
              v = c * mm[ck](r % d, r / d);  // column-major flattening
            }
            a(row0 + 2 * r, col) = v.real();
            a(row0 + 2 * r + 1, col) = v.imag();
          }
        }
        row0 += 2 * block;
      }
  }

  Eigen::BDCSVD<Matrix> svd(a);
  const Vector sv = svd.singularValues();
  KernelReport rep;
  rep.space_dim = ncols;
  rep.rank = decide_rank(sv);
  rep.dimension = ncols - rep.rank;
  const int tail = std::min<int>(8, static_cast<int>(sv.size()));
  for (int i = static_cast<int>(sv.size()) - tail; i < static_cast<int>(sv.size()); ++i)
    rep.sv_tail.push_back(sv(i));
  return rep;
}

int invariant_kernel_dim(ResidualKind kind, int n, int l, int samples, std::uint64_t seed) {
  return invariant_kernel(kind, n, l, samples, seed).dimension;
}

TorsionTensor transform(const TorsionTensor& t, const Matrix& g) {
  const int d = 2 * t.n;
  if (g.rows() != d || g.cols() != d)
    throw std::invalid_argument("transform: matrix size does not match the tensor");
  const Matrix gi = g.partialPivLu().solve(Matrix::Identity(d, d));
  // pull the arguments back first, then push the value forward
  std::vector<Matrix> pulled(d);
  for (int k = 0; k < d; ++k) pulled[k] = gi.transpose() * t.comp[k] * gi;
  std::vector<Matrix> out(d, Matrix::Zero(d, d));
  for (int k = 0; k < d; ++k)
    for (int kp = 0; kp < d; ++kp) out[k] += g(k, kp) * pulled[kp];
  return TorsionTensor(t.n, std::move(out));
}

CurvatureTensor transform(const CurvatureTensor& r, const Matrix& g) {
  const int d = 2 * r.n;
  if (g.rows() != d || g.cols() != d)
    throw std::invalid_argument("transform: matrix size does not match the tensor");
  const Matrix gi = g.partialPivLu().solve(Matrix::Identity(d, d));
  std::vector<Matrix> conj(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) conj[static_cast<size_t>(i) * d + j] = g * r.at(i, j) * gi;
  std::vector<Matrix> out(static_cast<size_t>(d) * d, Matrix::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Matrix& m = out[static_cast<size_t>(i) * d + j];
      for (int ip = 0; ip < d; ++ip)
        for (int jp = 0; jp < d; ++jp) {
          const double w = gi(ip, i) * gi(jp, j);
          if (w != 0.0) m += w * conj[static_cast<size_t>(ip) * d + jp];
        }
    }
  return CurvatureTensor(r.n, std::move(out));
}

TorsionTensor random_torsion(int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("random_torsion: n must be positive");
  Rng rng(seed);
  const int d = 2 * n;
  std::vector<Matrix> comp(d);
  for (int k = 0; k < d; ++k) {
    Matrix b(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) b(i, j) = rng.unit();
    comp[k] = 0.5 * (b - b.transpose());
  }
  return TorsionTensor(n, std::move(comp));
}

CurvatureTensor random_curvature(int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("random_curvature: n must be positive");
  Rng rng(seed);
  const int d = 2 * n;
  const Matrix j0 = standard_j(n);
  std::vector<Matrix> val(static_cast<size_t>(d) * d, Matrix::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Matrix s(d, d);
      for (int r = 0; r < d; ++r) {
        s(r, r) = rng.unit();
        for (int c = r + 1; c < d; ++c) s(r, c) = s(c, r) = rng.unit();
      }
      const Matrix a = -j0 * s;  // omega0^-1 * symmetric
      val[static_cast<size_t>(i) * d + j] = a;
      val[static_cast<size_t>(j) * d + i] = -a;
    }
  return CurvatureTensor(n, std::move(val));
}

std::vector<Matrix> sp_basis(int n) {
  if (n <= 0) throw std::invalid_argument("sp_basis: n must be positive");
  const int d = 2 * n;
  const Matrix j0 = standard_j(n);
  std::vector<Matrix> basis;
  basis.reserve(static_cast<size_t>(d) * (d + 1) / 2);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Matrix s = Matrix::Zero(d, d);
      s(i, j) += 1.0;
      s(j, i) += 1.0;
      basis.push_back(-j0 * s);
    }
  return basis;
}

}  // namespace twistkit
