#include "doctest.h"

#include "oracles.hpp"
#include "twistkit/integrability.hpp"

#include <stdexcept>
#include <vector>

using namespace twistkit;

namespace {

const Complex kI(0.0, 1.0);

ComplexStructure conjugated_structure(int n, int l, std::uint64_t seed) {
  const Matrix g = random_sp(n, seed);
  return ComplexStructure(n, g * canonical_structure(n, l) * g.inverse());
}

// curvature value table with R(X_0, X_1) = j0 and all other pairs zero;
// omega * j0 = -1 is symmetric, so the value lies in the symplectic algebra
CurvatureTensor constant_toy_curvature() {
  const Matrix j0 = standard_j(1);
  std::vector<Matrix> val(4, Matrix::Zero(2, 2));
  val[0 * 2 + 1] = j0;
  val[1 * 2 + 0] = -j0;
  return CurvatureTensor(1, val);
}

double rel_diff(const CVector& a, const CVector& b) {
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

double rel_diff(const CMatrix& a, const CMatrix& b) {
  const double scale = std::max(1.0, max_abs(b));
  return max_abs(CMatrix(a - b)) / scale;
}

}  // namespace

TEST_CASE("tensor constructors validate shape and symmetry") {
  SUBCASE("torsion") {
    CHECK_NOTHROW(random_torsion(2, 1));
    CHECK_THROWS_AS(TorsionTensor(1, std::vector<Matrix>(1, Matrix::Zero(2, 2))),
                    std::invalid_argument);
    CHECK_THROWS_AS(TorsionTensor(1, std::vector<Matrix>(2, Matrix::Zero(3, 3))),
                    std::invalid_argument);
    Matrix sym = Matrix::Zero(2, 2);
    sym(0, 1) = sym(1, 0) = 1.0;  // symmetric, not antisymmetric
    CHECK_THROWS_AS(TorsionTensor(1, std::vector<Matrix>{sym, Matrix::Zero(2, 2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(TorsionTensor(0, {}), std::invalid_argument);
  }

  SUBCASE("curvature") {
    CHECK_NOTHROW(constant_toy_curvature());
    CHECK_NOTHROW(random_curvature(2, 1));

    // breaking antisymmetry in the two form indices
    std::vector<Matrix> val(4, Matrix::Zero(2, 2));
    val[1] = standard_j(1);
    val[2] = standard_j(1);
    CHECK_THROWS_AS(CurvatureTensor(1, val), std::invalid_argument);

    // value outside the symplectic algebra: omega * 1 is antisymmetric
    val[1] = Matrix::Identity(2, 2);
    val[2] = -Matrix::Identity(2, 2);
    CHECK_THROWS_AS(CurvatureTensor(1, val), std::invalid_argument);

    CHECK_THROWS_AS(CurvatureTensor(1, std::vector<Matrix>(3, Matrix::Zero(2, 2))),
                    std::invalid_argument);
  }

  SUBCASE("value lookup is antisymmetric") {
    const CurvatureTensor r = constant_toy_curvature();
    CHECK(max_abs(Matrix(r.at(0, 1) + r.at(1, 0))) == 0.0);
  }
}

TEST_CASE("residuals of the zero tensors vanish identically") {
  const ComplexStructure j0(2, standard_j(2));
  const TorsionTensor t0(2, std::vector<Matrix>(4, Matrix::Zero(4, 4)));
  const CurvatureTensor r0(2, std::vector<Matrix>(16, Matrix::Zero(4, 4)));
  CHECK(torsion_residual(t0, j0) == 0.0);
  CHECK(curvature_residual(r0, j0) == 0.0);
  CHECK(curvature_02_residual(r0, j0) == 0.0);
}

TEST_CASE("dimension two kills every residual by rank-one antisymmetry") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const TorsionTensor t = random_torsion(1, seed);
    const CurvatureTensor r = random_curvature(1, seed + 10);
    for (int l = 0; l <= 1; ++l) {
      const ComplexStructure j = conjugated_structure(1, l, seed + 20);
      CHECK(torsion_residual(t, j) <= 1e-12);
      CHECK(curvature_residual(r, j) <= 1e-12);
      CHECK(curvature_02_residual(r, j) <= 1e-12);
    }
  }
}

TEST_CASE("constant-curvature toy value at the standard structure") {
  // the coefficient (J+e1, J+e2) wedge cancels exactly, so the fixture
  // value is zero with no roundoff at all
  const double res = curvature_residual(constant_toy_curvature(), ComplexStructure(1, standard_j(1)));
  CHECK(res == 0.0);
}

TEST_CASE("random tensors at n = 2 are generically obstructed") {
  const ComplexStructure j0(2, standard_j(2));
  CHECK(torsion_residual(random_torsion(2, 5), j0) > 1e-3);
  CHECK(curvature_residual(random_curvature(2, 6), j0) > 1e-3);
  CHECK(curvature_02_residual(random_curvature(2, 6), j0) > 1e-3);
}

TEST_CASE("residual components against a by-hand evaluation") {
  const int n = 2, d = 4;
  const TorsionTensor t = random_torsion(n, 31);
  const CurvatureTensor r = random_curvature(n, 32);
  const ComplexStructure j = conjugated_structure(n, 1, 33);

  // projectors written out directly rather than through the library helper
  const CMatrix jc = j.j.cast<Complex>();
  const CMatrix pp = 0.5 * (CMatrix::Identity(d, d) - kI * jc);
  const CMatrix pm = 0.5 * (CMatrix::Identity(d, d) + kI * jc);

  SUBCASE("torsion blocks pair by pair") {
    const CVector got = torsion_residual_components(t, j);
    int at = 0;
    double worst = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        const CVector expect =
            pp * oracles::torsion_eval(t.comp, pm.col(a), pm.col(b));
        worst = std::max(worst, (got.segment(at, d) - expect).cwiseAbs().maxCoeff());
        at += d;
      }
    CHECK(worst <= 1e-12);
    CHECK(torsion_residual(t, j) == got.cwiseAbs().maxCoeff());
  }

  SUBCASE("curvature blocks, plain and sandwiched") {
    for (bool sandwich : {false, true}) {
      const CMatrix& args = sandwich ? pp : pm;
      const CVector got = curvature_residual_components(r, j, sandwich);
      int at = 0;
      double worst = 0.0;
      for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
          CMatrix expect = CMatrix::Zero(d, d);
          for (int i = 0; i < d; ++i)
            for (int jj = i + 1; jj < d; ++jj)
              expect += (args(i, a) * args(jj, b) - args(jj, a) * args(i, b)) *
                        r.at(i, jj).cast<Complex>();
          if (sandwich) expect = pm * expect * pp;
          for (int col = 0; col < d; ++col)
            for (int row = 0; row < d; ++row) {
              const Complex v = got(at + col * d + row);  // column-major blocks
              worst = std::max(worst, std::abs(v - expect(row, col)));
            }
          at += d * d;
        }
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("rank decisions on explicit spectra") {
  auto vec = [](std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
  };

  CHECK(decide_rank(Vector()) == 0);
  CHECK(decide_rank(vec({1e-13, 5e-14})) == 0);  // all-noise spectrum
  CHECK(decide_rank(vec({1.0, 0.5, 1e-12})) == 2);
  CHECK(decide_rank(vec({1.0, 0.9, 0.8})) == 3);
  CHECK(decide_rank(vec({1.0, 0.5, 0.0})) == 2);  // exact zero needs no gap
  CHECK_THROWS_AS(decide_rank(vec({1.0, 1e-7, 1e-9})), IndeterminateError);
  // custom cutoff and gap demand
  CHECK(decide_rank(vec({1.0, 1e-5}), 1e-4, 10.0) == 1);
}

TEST_CASE("joint kernel dimensions at desk scale") {
  SUBCASE("dimension two: the conditions are empty and the kernel is everything") {
    for (int l = 0; l <= 1; ++l) {
      const KernelReport rep = invariant_kernel(ResidualKind::torsion, 1, l, 10, 3);
      CHECK(rep.space_dim == 2);
      CHECK(rep.rank == 0);
      CHECK(rep.dimension == 2);
      CHECK_FALSE(rep.sv_tail.empty());
    }
  }

  SUBCASE("dimension four: stabilized dimensions match the frozen values") {
    // measured once at samples >= 30 and pinned as regression values; the
    // point under test is that the dimension does not depend on the index
    const int expected[] = {8, 25, 10};
    const ResidualKind kinds[] = {ResidualKind::torsion, ResidualKind::curvature,
                                  ResidualKind::curvature02};
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l <= 2; ++l)
        for (std::uint64_t seed : {42u, 7u})
          CHECK(invariant_kernel_dim(kinds[k], 2, l, 30, seed) == expected[k]);
  }

  SUBCASE("a single structure cuts less than the family") {
    const int joint = invariant_kernel_dim(ResidualKind::torsion, 2, 0, 30, 42);
    const int single = invariant_kernel_dim(ResidualKind::torsion, 2, 0, 1, 42);
    CHECK(single >= joint);
    // one sample is the canonical structure itself, no randomness involved
    CHECK(invariant_kernel_dim(ResidualKind::torsion, 2, 0, 1, 999) == single);
  }

  SUBCASE("dimension is monotone in the sample count and stabilizes") {
    int prev = 1000;
    for (int s : {1, 2, 5, 30}) {
      const int dim = invariant_kernel_dim(ResidualKind::curvature02, 2, 1, s, 11);
      CHECK(dim <= prev);
      prev = dim;
    }
    CHECK(invariant_kernel_dim(ResidualKind::curvature02, 2, 1, 60, 11) == prev);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(invariant_kernel(ResidualKind::torsion, 0, 0, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(invariant_kernel(ResidualKind::torsion, 2, 3, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(invariant_kernel(ResidualKind::torsion, 2, -1, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(invariant_kernel(ResidualKind::torsion, 2, 0, 0, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("tensor actions compose and fix the identity") {
  const TorsionTensor t = random_torsion(2, 51);
  const CurvatureTensor r = random_curvature(2, 52);
  const Matrix id = Matrix::Identity(4, 4);

  SUBCASE("identity action") {
    const TorsionTensor ti = transform(t, id);
    const CurvatureTensor ri = transform(r, id);
    for (int k = 0; k < 4; ++k) CHECK(max_abs(Matrix(ti.comp[k] - t.comp[k])) <= 1e-14);
    for (int i = 0; i < 16; ++i) CHECK(max_abs(Matrix(ri.val[i] - r.val[i])) <= 1e-14);
  }

  SUBCASE("composition") {
    const Matrix g = random_sp(2, 53);
    const Matrix h = random_sp(2, 54);
    const TorsionTensor lhs = transform(transform(t, g), h);
    const TorsionTensor rhs = transform(t, Matrix(h * g));
    for (int k = 0; k < 4; ++k) {
      const double scale = std::max(1.0, max_abs(rhs.comp[k]));
      CHECK(max_abs(Matrix(lhs.comp[k] - rhs.comp[k])) <= 1e-9 * scale);
    }
    const CurvatureTensor clhs = transform(transform(r, g), h);
    const CurvatureTensor crhs = transform(r, Matrix(h * g));
    for (int i = 0; i < 16; ++i) {
      const double scale = std::max(1.0, max_abs(crhs.val[i]));
      CHECK(max_abs(Matrix(clhs.val[i] - crhs.val[i])) <= 1e-9 * scale);
    }
  }

  SUBCASE("size mismatch") {
    CHECK_THROWS_AS(transform(random_torsion(1, 0), id), std::invalid_argument);
    CHECK_THROWS_AS(transform(random_curvature(1, 0), id), std::invalid_argument);
  }
}

TEST_CASE("projected values intertwine the group action exactly") {
  const int n = 2, d = 4;
  const TorsionTensor t = random_torsion(n, 61);
  const CurvatureTensor r = random_curvature(n, 62);

  for (std::uint64_t seed : {63u, 64u}) {
    const Matrix g = random_sp(n, seed);
    const Matrix gi = g.inverse();
    const ComplexStructure j(n, canonical_structure(n, 1));
    const ComplexStructure jc(n, g * j.j * gi);

    Rng rng(seed + 5);
    CVector x(d), y(d);
    for (int i = 0; i < d; ++i) {
      x(i) = Complex(rng.unit(), rng.unit());
      y(i) = Complex(rng.unit(), rng.unit());
    }
    const CVector gx = g.cast<Complex>() * x, gy = g.cast<Complex>() * y;

    const CVector lhs_t = torsion_projected_value(transform(t, g), jc, gx, gy);
    const CVector rhs_t = g.cast<Complex>() * torsion_projected_value(t, j, x, y);
    CHECK(rel_diff(lhs_t, rhs_t) <= 1e-10);

    for (bool sandwich : {true, false}) {
      const CMatrix lhs_r = curvature_projected_value(transform(r, g), jc, gx, gy, sandwich);
      const CMatrix rhs_r = g.cast<Complex>() *
                            curvature_projected_value(r, j, x, y, sandwich) *
                            gi.cast<Complex>();
      CHECK(rel_diff(lhs_r, rhs_r) <= 1e-10);
    }
  }

  CHECK_THROWS_AS(torsion_projected_value(random_torsion(1, 0),
                                          ComplexStructure(2, standard_j(2)),
                                          CVector::Zero(2), CVector::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("symplectic algebra basis spans the right space") {
  const int n = 2, d = 4;
  const std::vector<Matrix> basis = sp_basis(n);
  CHECK(static_cast<int>(basis.size()) == n * (2 * n + 1));

  const Matrix om = standard_form(n).omega;
  Matrix stacked(static_cast<Eigen::Index>(basis.size()), d * d);
  for (size_t k = 0; k < basis.size(); ++k) {
    const Matrix s = om * basis[k];
    CHECK(max_abs(Matrix(s - s.transpose())) == 0.0);
    stacked.row(static_cast<Eigen::Index>(k)) =
        Eigen::Map<const Vector>(basis[k].data(), d * d).transpose();
  }
  Eigen::BDCSVD<Matrix> svd(stacked);
  CHECK(svd.singularValues()(static_cast<Eigen::Index>(basis.size()) - 1) > 1e-8);

  CHECK_THROWS_AS(sp_basis(0), std::invalid_argument);
}

TEST_CASE("seeded tensors are deterministic") {
  const TorsionTensor a = random_torsion(2, 77);
  const TorsionTensor b = random_torsion(2, 77);
  for (int k = 0; k < 4; ++k) CHECK((a.comp[k].array() == b.comp[k].array()).all());
  const CurvatureTensor c = random_curvature(2, 78);
  const CurvatureTensor e = random_curvature(2, 78);
  for (int i = 0; i < 16; ++i) CHECK((c.val[i].array() == e.val[i].array()).all());
}
