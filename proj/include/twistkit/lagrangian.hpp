// Complex n-planes in C^{2n} as models for compatible structures: a structure
// j corresponds to its -i eigenspace, a real-Lagrangian plane reconstructs j,
// and the Hermitian form i omega(w1, conj(w2)) reads off the taming index.
// Also the parabolic factorization of upper block-triangular complex
// symplectic matrices (the stabilizer of the reference plane).
#pragma once

#include "twistkit/symplectic.hpp"

#include <optional>

namespace twistkit {

// Column span of a 2n x n complex matrix of full column rank (checked on
// construction through the singular value ratio).
struct ComplexPlane {
  int n = 0;
  CMatrix basis;

  explicit ComplexPlane(CMatrix basis_);
};

// Calibration of hermitian_signature against the taming index, fixed once by
// hand evaluation on the canonical planes (see also canonical_plane): with
// h(w1, w2) = i omega(w1, conj(w2)) and the S = -omega*j sign convention, the
// index-l structure's plane carries h < 0 on n-l directions and h > 0 on l,
// so the taming index equals the POSITIVE eigenvalue count.
inline constexpr bool kIndexCountsPositive = true;

struct Signature {
  int positive = 0;
  int negative = 0;
};
int index_from_signature(const Signature& s);

// Orthonormal basis of the -i eigenspace of j, the column space of
// 0.5*(1 + i j).  An eigenprojector of the wrong rank (corrupt input) raises
// NumericalError.
ComplexPlane j_to_plane(const CompatibleStructure& j);

// Reconstructs j from a real-Lagrangian plane: j = [W | conj(W)] diag(-i, +i)
// [W | conj(W)]^-1, real up to roundoff.  The imaginary part must fall below
// kImagTol before truncation, else NumericalError; planes failing the
// real-Lagrangian test raise std::invalid_argument.  The solve runs in
// extended precision so the imaginary residue stays at the demanded level
// even for badly conditioned planes.
CompatibleStructure plane_to_j(const ComplexPlane& w, const SymplecticForm& form);

// Same, but also reports the measured imaginary residue before truncation.
struct PlaneReconstruction {
  CompatibleStructure j;
  double imag_residual;
};
PlaneReconstruction plane_to_j_detailed(const ComplexPlane& w, const SymplecticForm& form);

// W^T omega W = 0 (omega extended complex-bilinearly) and [W | conj(W)]
// of full rank.
bool is_real_lagrangian(const ComplexPlane& w, const SymplecticForm& form);

// Signature of H_ab = i omega(w_a, conj(w_b)) on the plane's basis.
// Eigenvalues inside the relative band kSignatureBand raise
// IndeterminateError.
Signature hermitian_signature(const ComplexPlane& w, const SymplecticForm& form);

// The canonical index-l plane: span of e_j + i f_j (j < n-l) and
// e_j - i f_j (j >= n-l), f_j the dual half of the standard basis.  This is
// j_to_plane(canonical_structure(n, l)) as a subspace.
ComplexPlane canonical_plane(int n, int l);

// Rank test on the stacked bases: same span iff rank([A | B]) = n.
bool same_plane(const ComplexPlane& a, const ComplexPlane& b);

// Factors of an upper block-triangular complex symplectic matrix
// [[a, a e], [0, a^-T]] with e symmetric.
struct ParabolicFactors {
  CMatrix a;
  CMatrix e;
};

// Accepts exactly the upper block-triangular members of the complex
// symplectic group: nonzero lower-left block returns std::nullopt (a
// rejection, not an error); matrices failing g^T omega g = omega raise
// std::invalid_argument.
std::optional<ParabolicFactors> parabolic_decompose(const CMatrix& g);

// [[a, a e], [0, a^-T]]; validates e symmetric and a invertible.
CMatrix assemble_parabolic(const CMatrix& a, const CMatrix& e);

// Seeded sample from the pseudo-unitary group U(p, q): exp of a generator
// anti-Hermitian for diag(1_p, -1_q).
CMatrix random_pseudo_unitary(int p, int q, std::uint64_t seed);

// Seeded invertible complex matrix and complex symmetric matrix, plumbing
// for parabolic samples.
CMatrix random_invertible(int n, std::uint64_t seed);
CMatrix random_complex_symmetric(int n, std::uint64_t seed);

}  // namespace twistkit
