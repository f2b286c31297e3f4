#include "doctest.h"

#include "oracles.hpp"
#include "twistkit/symplectic.hpp"

#include <complex>
#include <stdexcept>
#include <string>

using namespace twistkit;

namespace {

Matrix random_antisymmetric(int d, std::uint64_t seed) {
  Rng rng(seed);
  Matrix r(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) r(i, j) = rng.unit();
  return r - r.transpose();
}

}  // namespace

TEST_CASE("standard form literals and exact antisymmetry") {
  const SymplecticForm f1 = standard_form(1);
  Matrix expect1(2, 2);
  expect1 << 0, -1, 1, 0;
  CHECK(max_abs(Matrix(f1.omega - expect1)) == 0.0);

  const SymplecticForm f2 = standard_form(2);
  CHECK(f2.dim() == 4);
  CHECK(max_abs(Matrix(f2.omega.block(0, 2, 2, 2) + Matrix::Identity(2, 2))) == 0.0);
  CHECK(max_abs(Matrix(f2.omega.block(2, 0, 2, 2) - Matrix::Identity(2, 2))) == 0.0);
  CHECK(max_abs(Matrix(f2.omega.block(0, 0, 2, 2))) == 0.0);
  CHECK(max_abs(Matrix(f2.omega.block(2, 2, 2, 2))) == 0.0);

  for (int n = 1; n <= 5; ++n) {
    const Matrix om = standard_form(n).omega;
    CHECK(max_abs(Matrix(om + om.transpose())) == 0.0);
  }
  CHECK(standard_form(3).is_standard());
  CHECK_THROWS_AS(standard_form(0), std::invalid_argument);
}

TEST_CASE("form constructor rejects asymmetric and degenerate Gram matrices") {
  Matrix bad(2, 2);
  bad << 0, 1, -0.5, 0;
  CHECK_THROWS_AS(SymplecticForm(1, bad), std::invalid_argument);

  Matrix deg = Matrix::Zero(4, 4);
  deg.block(0, 0, 2, 2) = standard_form(1).omega;
  CHECK_THROWS_AS(SymplecticForm(2, deg), std::invalid_argument);

  Matrix wrong_size = standard_form(1).omega;
  CHECK_THROWS_AS(SymplecticForm(2, wrong_size), std::invalid_argument);
}

TEST_CASE("q_matrix literals, range check, commutation with the standard j") {
  CHECK(max_abs(Matrix(q_matrix(2, 0) - Matrix::Identity(4, 4))) == 0.0);

  Matrix expect(4, 4);
  expect = Matrix::Zero(4, 4);
  expect.diagonal() << 1, -1, 1, -1;
  CHECK(max_abs(Matrix(q_matrix(2, 1) - expect)) == 0.0);

  for (int n = 1; n <= 4; ++n)
    for (int l = 0; l <= n; ++l) {
      const Matrix q = q_matrix(n, l);
      const Matrix j0 = standard_j(n);
      CHECK(max_abs(Matrix(q * j0 - j0 * q)) == 0.0);
    }

  CHECK_THROWS_AS(q_matrix(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(q_matrix(2, -1), std::invalid_argument);
}

TEST_CASE("canonical structures square to minus one") {
  for (int n = 1; n <= 4; ++n)
    for (int l = 0; l <= n; ++l) {
      const Matrix j = canonical_structure(n, l);
      CHECK(max_abs(Matrix(j - standard_j(n) * q_matrix(n, l))) == 0.0);
      CHECK(max_abs(Matrix(j * j + Matrix::Identity(2 * n, 2 * n))) == 0.0);
    }
}

TEST_CASE("build_symplectic_basis reduces forms to the standard Gram matrix") {
  SUBCASE("already standard") {
    const SymplecticForm f = standard_form(2);
    const Matrix b = build_symplectic_basis(f);
    CHECK(max_abs(Matrix(b.transpose() * f.omega * b - f.omega)) <= 1e-12);
  }

  SUBCASE("rescaled two by two form") {
    const Matrix om0 = standard_form(1).omega;
    const SymplecticForm f(1, 2.0 * om0);
    const Matrix b = build_symplectic_basis(f);
    // entrywise oracle evaluation, not the library's own residual
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(std::abs(oracles::form_eval(f.omega, b.col(i), b.col(j)) - om0(i, j)) <= 1e-12);
  }

  SUBCASE("random nondegenerate six by six forms") {
    for (std::uint64_t seed : {7u, 19u, 101u}) {
      const SymplecticForm f(3, random_antisymmetric(6, seed));
      const Matrix b = build_symplectic_basis(f);
      const Matrix om0 = standard_form(3).omega;
      double worst = 0.0;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          worst = std::max(
              worst, std::abs(oracles::form_eval(f.omega, b.col(i), b.col(j)) - om0(i, j)));
      CHECK(worst <= 1e-9);
    }
  }

  SUBCASE("nearly degenerate form fails at a named pivot step") {
    // passes the constructor's loose singular value gate but trips the
    // pivot floor once the healthy pair has been extracted
    Matrix om = Matrix::Zero(4, 4);
    om.block(0, 0, 2, 2) = standard_form(1).omega;
    om.block(2, 2, 2, 2) = 1e-11 * standard_form(1).omega;
    const SymplecticForm f(2, om);
    CHECK_THROWS_AS(build_symplectic_basis(f), NumericalError);
    try {
      build_symplectic_basis(f);
    } catch (const NumericalError& e) {
      CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
  }
}

TEST_CASE("complex structure constructor enforces j squared equals minus one") {
  CHECK_NOTHROW(ComplexStructure(2, standard_j(2)));
  // an involution is not a complex structure
  CHECK_THROWS_AS(ComplexStructure(2, q_matrix(2, 1)), std::invalid_argument);
  CHECK_THROWS_AS(ComplexStructure(1, Matrix::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("compatibility of canonical structures and failure off the group") {
  const SymplecticForm f2 = standard_form(2);
  CHECK(is_compatible(ComplexStructure(2, standard_j(2)), f2));
  for (int l = 0; l <= 2; ++l)
    CHECK(is_compatible(ComplexStructure(2, canonical_structure(2, l)), f2));

  // conjugation by a shear mixing e1 and e2 keeps j*j = -1 but breaks the
  // form (diagonal rescalings would not: they stay inside the compatible set)
  Matrix t = Matrix::Identity(4, 4);
  t(0, 1) = 1.0;
  const Matrix skew = t * standard_j(2) * t.inverse();
  const ComplexStructure j_skew(2, skew);
  CHECK_FALSE(is_compatible(j_skew, f2));
}

TEST_CASE("taming index on canonical structures and conjugates") {
  for (int n = 1; n <= 3; ++n) {
    const SymplecticForm f = standard_form(n);
    CHECK(taming_index(ComplexStructure(n, standard_j(n)), f) == 0);
    for (int l = 0; l <= n; ++l)
      CHECK(taming_index(ComplexStructure(n, canonical_structure(n, l)), f) == l);
    CHECK(taming_index(ComplexStructure(n, Matrix(-standard_j(n))), f) == n);
  }

  // invariance under symplectic conjugation
  const SymplecticForm f2 = standard_form(2);
  for (std::uint64_t seed : {3u, 11u, 42u}) {
    const Matrix g = random_sp(2, seed);
    const Matrix gi = g.inverse();
    for (int l = 0; l <= 2; ++l) {
      const ComplexStructure j(2, g * canonical_structure(2, l) * gi);
      CHECK(taming_index(j, f2) == l);
    }
  }
}

TEST_CASE("taming index error paths") {
  const SymplecticForm f2 = standard_form(2);

  SUBCASE("asymmetric Gram matrix means incompatibility") {
    Matrix t = Matrix::Identity(4, 4);
    t(0, 1) = 1.0;
    const ComplexStructure j(2, t * standard_j(2) * t.inverse());
    CHECK_THROWS_AS(taming_index(j, f2), std::invalid_argument);
  }

  SUBCASE("eigenvalue spread beyond the signature band is indeterminate") {
    // conjugating by diag(a, 1/a) puts eigenvalues a^2 and a^-2 on the Gram
    // matrix; a = 100 drives their ratio below the relative band
    const double a = 100.0;
    Matrix j(2, 2);
    j << 0.0, -a * a, 1.0 / (a * a), 0.0;
    CHECK_THROWS_AS(taming_index(ComplexStructure(1, j), standard_form(1)),
                    IndeterminateError);
  }

  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(taming_index(ComplexStructure(1, standard_j(1)), f2),
                    std::invalid_argument);
  }
}

TEST_CASE("make_compatible bundles the index and rejects incompatible input") {
  const CompatibleStructure c =
      make_compatible(ComplexStructure(2, canonical_structure(2, 1)), standard_form(2));
  CHECK(c.index == 1);

  Matrix t = Matrix::Identity(4, 4);
  t(0, 1) = 1.0;
  CHECK_THROWS_AS(make_compatible(ComplexStructure(2, t * standard_j(2) * t.inverse()),
                                  standard_form(2)),
                  std::invalid_argument);
}

TEST_CASE("canonical conjugator normal form") {
  const SymplecticForm f2 = standard_form(2);

  SUBCASE("fixed points of the reduction") {
    const CanonicalConjugator r0 = canonical_conjugator(ComplexStructure(2, standard_j(2)), f2);
    CHECK(r0.index == 0);
    CHECK(oracles::sp_defect(r0.g, f2.omega) <= 1e-9);
    CHECK(max_abs(Matrix(r0.g.inverse() * standard_j(2) * r0.g - canonical_structure(2, 0))) <=
          1e-9);

    for (int l = 0; l <= 2; ++l) {
      const CanonicalConjugator r =
          canonical_conjugator(ComplexStructure(2, canonical_structure(2, l)), f2);
      CHECK(r.index == l);
      CHECK(max_abs(Matrix(r.g.inverse() * canonical_structure(2, l) * r.g -
                           canonical_structure(2, l))) <= 1e-9);
    }
  }

  SUBCASE("conjugated structures of every index") {
    for (std::uint64_t seed : {5u, 23u}) {
      const Matrix h = random_sp(2, seed);
      const Matrix hi = h.inverse();
      for (int l = 0; l <= 2; ++l) {
        const ComplexStructure j(2, h * canonical_structure(2, l) * hi);
        const CanonicalConjugator r = canonical_conjugator(j, f2);
        CHECK(r.index == l);
        CHECK(oracles::sp_defect(r.g, f2.omega) <= 1e-8);
        CHECK(max_abs(Matrix(r.g.inverse() * j.j * r.g - canonical_structure(2, l))) <= 1e-8);
      }
    }
  }

  SUBCASE("rejects incompatible structures and nonstandard forms") {
    Matrix t = Matrix::Identity(4, 4);
    t(0, 1) = 1.0;
    CHECK_THROWS_AS(
        canonical_conjugator(ComplexStructure(2, t * standard_j(2) * t.inverse()), f2),
        std::invalid_argument);
    const SymplecticForm doubled(1, Matrix(2.0 * standard_form(1).omega));
    CHECK_THROWS_AS(canonical_conjugator(ComplexStructure(1, standard_j(1)), doubled),
                    std::invalid_argument);
  }
}

TEST_CASE("group membership test") {
  const SymplecticForm f1 = standard_form(1);
  CHECK(sp_membership(Matrix::Identity(2, 2), f1));
  CHECK(sp_membership(standard_j(1), f1));

  Matrix g(2, 2);
  g << 2, 0, 0, 1;
  CHECK_FALSE(sp_membership(g, f1));
  CHECK_FALSE(sp_membership(Matrix::Identity(4, 4), f1));
}

TEST_CASE("symplectic exponential and seeded group samples") {
  CHECK(max_abs(Matrix(sp_exp(2, Matrix::Zero(4, 4)) - Matrix::Identity(4, 4))) == 0.0);
  CHECK_THROWS_AS(sp_exp(1, Matrix(standard_j(1))), std::invalid_argument);

  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t seed : {0u, 1u, 99u}) {
      const Matrix g = random_sp(n, seed);
      CHECK(oracles::sp_defect(g, standard_form(n).omega) <= 1e-9);
    }

  const Matrix a = random_sp(2, 1234);
  const Matrix b = random_sp(2, 1234);
  CHECK((a.array() == b.array()).all());
  const Matrix c = random_sp(2, 1235);
  CHECK_FALSE((a.array() == c.array()).all());
}

TEST_CASE("eigenprojectors of a complex structure") {
  SUBCASE("two by two literals") {
    const ComplexStructure j0(1, standard_j(1));
    const Projectors pr = projectors(j0);
    const Complex I(0.0, 1.0);
    CMatrix expect_plus(2, 2);
    expect_plus << 0.5, 0.5 * I, -0.5 * I, 0.5;
    CHECK(max_abs(CMatrix(pr.plus - expect_plus)) == 0.0);
    CHECK(max_abs(CMatrix(pr.plus + pr.minus - CMatrix::Identity(2, 2))) == 0.0);
    CHECK(max_abs(CMatrix(j0.j.cast<Complex>() * pr.plus - I * pr.plus)) == 0.0);
  }

  SUBCASE("projector algebra and rank on conjugated structures") {
    for (std::uint64_t seed : {2u, 8u}) {
      const Matrix g = random_sp(2, seed);
      const ComplexStructure j(2, g * canonical_structure(2, 1) * g.inverse());
      const Projectors pr = projectors(j);
      CHECK(max_abs(CMatrix(pr.plus * pr.plus - pr.plus)) <= 1e-12);
      CHECK(max_abs(CMatrix(pr.minus * pr.minus - pr.minus)) <= 1e-12);
      CHECK(max_abs(CMatrix(pr.plus * pr.minus)) <= 1e-12);
      Eigen::BDCSVD<CMatrix> svd(pr.plus);
      int rank = 0;
      for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-8 * svd.singularValues()(0)) ++rank;
      CHECK(rank == 2);
    }
  }
}
