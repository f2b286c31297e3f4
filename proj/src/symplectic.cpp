#include "twistkit/symplectic.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <vector>

namespace twistkit {

namespace {

void require_square(const Matrix& m, int d, const char* who) {
  if (m.rows() != d || m.cols() != d)
    throw std::invalid_argument(std::string(who) + ": expected a " +
                                std::to_string(d) + " x " + std::to_string(d) +
                                " matrix, got " + std::to_string(m.rows()) +
                                " x " + std::to_string(m.cols()));
}

void require_positive_n(int n, const char* who) {
  if (n <= 0)
    throw std::invalid_argument(std::string(who) + ": n must be positive, got " +
                                std::to_string(n));
}

}  // namespace

SymplecticForm::SymplecticForm(int n_, Matrix omega_) : n(n_), omega(std::move(omega_)) {
  require_positive_n(n, "SymplecticForm");
  require_square(omega, 2 * n, "SymplecticForm");
  const double scale = max_abs(omega);
  if (max_abs(Matrix(omega + omega.transpose())) > scaled_tol(scale))
    throw std::invalid_argument("SymplecticForm: Gram matrix is not antisymmetric");
  Eigen::JacobiSVD<Matrix> svd(omega);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(sv.size() - 1) < 1e-12 * sv(0))
    throw std::invalid_argument("SymplecticForm: Gram matrix is degenerate");
}

bool SymplecticForm::is_standard(double tol) const {
  return max_abs(Matrix(omega - standard_j(n))) <= tol;
}

ComplexStructure::ComplexStructure(int n_, Matrix j_) : n(n_), j(std::move(j_)) {
  require_positive_n(n, "ComplexStructure");
  require_square(j, 2 * n, "ComplexStructure");
  const double s = max_abs(j);
  const Matrix jj = j * j;
  if (max_abs(Matrix(jj + Matrix::Identity(2 * n, 2 * n))) > scaled_tol(s * s))
    throw std::invalid_argument("ComplexStructure: j * j != -1");
}

Matrix standard_j(int n) {
  require_positive_n(n, "standard_j");
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Matrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return j;
}

SymplecticForm standard_form(int n) { return SymplecticForm(n, standard_j(n)); }

Matrix q_matrix(int n, int l) {
  require_positive_n(n, "q_matrix");
  if (l < 0 || l > n)
    throw std::invalid_argument("q_matrix: index l = " + std::to_string(l) +
                                " outside [0, " + std::to_string(n) + "]");
  Vector diag(2 * n);
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < n; ++i) diag(b * n + i) = i < n - l ? 1.0 : -1.0;
  return diag.asDiagonal();
}

Matrix canonical_structure(int n, int l) { return standard_j(n) * q_matrix(n, l); }

Matrix build_symplectic_basis(const SymplecticForm& form) {
  const int d = form.dim();
  const Matrix& om = form.omega;
  const double pivot_floor = 1e-10 * std::max(1.0, max_abs(om));

  Matrix c = Matrix::Identity(d, d);  // orthonormal basis of the working subspace
  std::vector<Vector> xs, ys;         // pairs with omega(x, y) = +1
  int step = 0;
  while (c.cols() > 0) {
    ++step;
    const int k = static_cast<int>(c.cols());
    Matrix m = c.transpose() * om * c;
    int pi = 0, pj = 1;
    double best = -1.0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (std::abs(m(i, j)) > best) {
          best = std::abs(m(i, j));
          pi = i;
          pj = j;
        }
    if (best <= pivot_floor)
      throw NumericalError("build_symplectic_basis: form degenerate at reduction step " +
                           std::to_string(step) + " (best pivot " + std::to_string(best) + ")");
    if (m(pi, pj) < 0) std::swap(pi, pj);  // orient the pair so omega(x, y) > 0
    const double r = std::sqrt(m(pi, pj));
    Vector x = c.col(pi) / r;
    Vector y = c.col(pj) / r;
    xs.push_back(x);
    ys.push_back(y);

    // pass to the omega-complement of span{x, y} inside the working subspace
    Matrix constraints(2, k);
    constraints.row(0) = x.transpose() * om * c;
    constraints.row(1) = y.transpose() * om * c;
    Eigen::JacobiSVD<Matrix> svd(constraints, Eigen::ComputeFullV);
    if (svd.singularValues()(1) <= pivot_floor)
      throw NumericalError("build_symplectic_basis: complement lost rank at step " +
                           std::to_string(step));
    c = c * svd.matrixV().rightCols(k - 2);
  }

  const int n = form.n;
  Matrix b(d, d);
  for (int a = 0; a < n; ++a) {
    b.col(a) = ys[a];      // omega(b_a, b_{n+a}) = omega(y, x) = -1
    b.col(n + a) = xs[a];  // matching the standard Gram matrix blockwise
  }
  return b;
}

bool is_compatible(const ComplexStructure& j, const SymplecticForm& form, double tol) {
  if (j.n != form.n) return false;
  const double sj = max_abs(j.j);
  const double so = max_abs(form.omega);
  return max_abs(Matrix(j.j.transpose() * form.omega * j.j - form.omega)) <=
         scaled_tol(sj * sj * so, tol);
}

namespace {

// Eigenvalues of the symmetric matrix -omega*j; shared by taming_index and
// canonical_conjugator.
Matrix taming_gram(const ComplexStructure& j, const SymplecticForm& form) {
  if (j.n != form.n)
    throw std::invalid_argument("taming: dimension mismatch between j and form");
  Matrix s = -form.omega * j.j;
  const double asym = max_abs(Matrix(s - s.transpose()));
  if (asym > scaled_tol(max_abs(s)))
    throw std::invalid_argument(
        "taming: -omega*j is not symmetric (j is not compatible with the form); "
        "asymmetry = " +
        std::to_string(asym));
  return 0.5 * (s + s.transpose());
}

}  // namespace

int taming_index(const ComplexStructure& j, const SymplecticForm& form) {
  const Matrix s = taming_gram(j, form);
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  if (es.info() != Eigen::Success)
    throw NumericalError("taming_index: eigensolver failed");
  const Vector& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  int neg = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= kSignatureBand * top)
      throw IndeterminateError("taming_index: eigenvalue " + std::to_string(ev(i)) +
                               " within the undecidable band (" +
                               std::to_string(kSignatureBand * top) + ")");
    if (ev(i) < 0) ++neg;
  }
  if (neg % 2 != 0)
    throw NumericalError("taming_index: odd negative count " + std::to_string(neg));
  return neg / 2;
}

CompatibleStructure make_compatible(ComplexStructure j, SymplecticForm form) {
  if (!is_compatible(j, form))
    throw std::invalid_argument("make_compatible: structure is not compatible with the form");
  const int l = taming_index(j, form);
  return CompatibleStructure{std::move(j), std::move(form), l};
}

CanonicalConjugator canonical_conjugator(const ComplexStructure& jc,
                                         const SymplecticForm& form) {
  if (!form.is_standard())
    throw std::invalid_argument(
        "canonical_conjugator: expects the standard form; reduce the form with "
        "build_symplectic_basis first");
  if (!is_compatible(jc, form))
    throw std::invalid_argument("canonical_conjugator: j is not compatible with the form");

  const int n = jc.n, d = 2 * n;
  const Matrix& j = jc.j;
  const Matrix& om = form.omega;
  const Matrix s = taming_gram(jc, form);
  const double floor = kPosDefFloor * std::max(1.0, max_abs(s));

  Matrix c = Matrix::Identity(d, d);
  std::vector<std::pair<Vector, Vector>> plus, minus;  // (u, v) with j u = +-v
  int step = 0;
  while (c.cols() > 0) {
    ++step;
    const int k = static_cast<int>(c.cols());
    Matrix sc = c.transpose() * s * c;
    sc = 0.5 * (sc + sc.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sc);
    if (es.info() != Eigen::Success)
      throw NumericalError("canonical_conjugator: eigensolver failed at step " +
                           std::to_string(step));
    int imax = 0;
    es.eigenvalues().cwiseAbs().maxCoeff(&imax);
    const double lam = es.eigenvalues()(imax);
    if (std::abs(lam) <= floor)
      throw NumericalError("canonical_conjugator: taming Gram degenerate at step " +
                           std::to_string(step));
    Vector x = c * es.eigenvectors().col(imax);
    x /= std::sqrt(std::abs(lam));  // now S(x, x) = sign(lam)
    const double eps = lam > 0 ? 1.0 : -1.0;
    Vector u = x;
    Vector v = eps * (j * x);  // omega(u, v) = -1 and j u = eps v, j v = -eps u
    (eps > 0 ? plus : minus).emplace_back(u, v);

    Matrix constraints(2, k);
    constraints.row(0) = u.transpose() * om * c;
    constraints.row(1) = v.transpose() * om * c;
    Eigen::JacobiSVD<Matrix> svd(constraints, Eigen::ComputeFullV);
    if (svd.singularValues()(1) <= 1e-10)
      throw NumericalError("canonical_conjugator: complement lost rank at step " +
                           std::to_string(step));
    c = c * svd.matrixV().rightCols(k - 2);
  }

  // positive pairs first, so the conjugated structure is exactly the model
  Matrix g(d, d);
  int a = 0;
  for (const auto& p : plus) {
    g.col(a) = p.first;
    g.col(n + a) = p.second;
    ++a;
  }
  for (const auto& p : minus) {
    g.col(a) = p.first;
    g.col(n + a) = p.second;
    ++a;
  }
  return CanonicalConjugator{g, static_cast<int>(minus.size())};
}

bool sp_membership(const Matrix& g, const SymplecticForm& form, double tol) {
  if (g.rows() != form.dim() || g.cols() != form.dim()) return false;
  const double sg = max_abs(g);
  const double so = max_abs(form.omega);
  return max_abs(Matrix(g.transpose() * form.omega * g - form.omega)) <=
         scaled_tol(sg * sg * so, tol);
}

Matrix sp_exp(int n, const Matrix& sym) {
  require_positive_n(n, "sp_exp");
  require_square(sym, 2 * n, "sp_exp");
  if (max_abs(Matrix(sym - sym.transpose())) > scaled_tol(max_abs(sym)))
    throw std::invalid_argument("sp_exp: generator seed matrix must be symmetric");
  // omega0^-1 = -standard_j, so a = -J0 * sym satisfies omega a + a^T omega = 0
  const Matrix a = -standard_j(n) * sym;
  return a.exp();
}

Matrix random_sp(int n, std::uint64_t seed) {
  require_positive_n(n, "random_sp");
  Rng rng(seed);
  const int d = 2 * n;
  Matrix sym(d, d);
  for (int i = 0; i < d; ++i) {
    sym(i, i) = rng.unit();
    for (int j = i + 1; j < d; ++j) sym(i, j) = sym(j, i) = rng.unit();
  }
  return sp_exp(n, sym);
}

Projectors projectors(const ComplexStructure& j) {
  const int d = j.dim();
  const CMatrix jd = j.j.cast<Complex>();
  const CMatrix id = CMatrix::Identity(d, d);
  const Complex i(0.0, 1.0);
  return Projectors{0.5 * (id - i * jd), 0.5 * (id + i * jd)};
}

}  // namespace twistkit
