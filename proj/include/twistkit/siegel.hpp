// The Siegel upper half space of symmetric complex matrices with positive
// definite imaginary part, the symplectic Moebius action on it, and the
// equivariant map phi identifying it with the space of index-0 compatible
// structures.  phi is anti-holomorphic; antiholomorphy_residual certifies
// that numerically by finite differences.
#pragma once

#include "twistkit/symplectic.hpp"

namespace twistkit {

// Point z = x + i y with x, y symmetric and y positive definite.
// Construction checks symmetry to 1e-9 absolute and positive definiteness
// through the smallest eigenvalue of y (relative floor kPosDefFloor).
struct SiegelPoint {
  int n = 0;
  Matrix x, y;

  SiegelPoint(Matrix x_, Matrix y_);
  int dim() const { return 2 * n; }
  CMatrix z() const;  // x + i y
};

// Same membership test on a raw complex matrix, without throwing.
bool is_in_domain(const CMatrix& z);

// (a z + b)(c z + d)^-1 for g = [[a, b], [c, d]] symplectic w.r.t. the
// standard form.  A numerically singular denominator raises NumericalError;
// the result is validated to lie in the domain again.
SiegelPoint mobius(const Matrix& g, const SiegelPoint& z);

// phi(x + i y) = [[x y^-1, -x y^-1 x - y], [y^-1, -y^-1 x]]: a compatible
// structure of index 0 for the standard form, with phi(i 1) = standard_j.
CompatibleStructure phi(const SiegelPoint& z);

// Inverse on the index-0 component: y = (j_21)^-1phi, x = j_11 y.  Rejects
// structures that are not compatible, have singular lower-left block, or
// carry a nonzero taming index.
SiegelPoint phi_inverse(const ComplexStructure& j);

// max-norm of D_{iH} phi(z) + phi(z) . D_H phi(z), the two directional
// derivatives taken by central differences with the given step (0 < step <=
// 1e-3).  H must be complex symmetric; evaluation points leaving the domain
// raise NumericalError.  Derivative evaluations run in extended precision so
// the measured residual is truncation- rather than roundoff-dominated.
double antiholomorphy_residual(const SiegelPoint& z, const CMatrix& h, double step = kFdStep);

// Like the above but with phi(z) multiplying from the right; kept for the
// convention check in the tests (this variant does NOT vanish).
double antiholomorphy_residual_right(const SiegelPoint& z, const CMatrix& h,
                                     double step = kFdStep);

// Tangency companion: max-norm of D_H phi(z) . phi(z) + phi(z) . D_H phi(z);
// derivatives of phi anticommute with phi at the point.
double tangency_residual(const SiegelPoint& z, const CMatrix& h, double step = kFdStep);

// a = p + i q unitary embeds as [[p, q], [-q, p]], the stabilizer of i 1.
// With check = true (default) non-unitary a raises std::invalid_argument.
Matrix embed_unitary(const CMatrix& a, bool check = true);

// Block-shape test for the stabilizer: d = a and c = -b to the tolerance.
bool has_unitary_block_shape(const Matrix& g, double tol = kIdentityTol);

// Seeded unitary sample, exp of an anti-Hermitian generator.
CMatrix random_unitary(int n, std::uint64_t seed);

// Seeded domain point: random symmetric x, well-conditioned positive y.
SiegelPoint random_siegel_point(int n, std::uint64_t seed);

// Seeded complex symmetric direction matrix for derivative probes.
CMatrix random_symmetric_direction(int n, std::uint64_t seed);

}  // namespace twistkit
