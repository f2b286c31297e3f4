// Linear symplectic structures on R^{2n}: the standard form, compatible
// complex structures, their taming index, and the reduction of any such
// structure to the canonical model by a symplectic change of basis.
#pragma once

#include "twistkit/types.hpp"

#include <cstdint>
#include <utility>

namespace twistkit {

// Antisymmetric nondegenerate bilinear form, stored as its Gram matrix.
// Construction checks antisymmetry (within kIdentityTol at the form's scale)
// and rejects forms whose smallest singular value falls below 1e-12 times the
// largest; nearly degenerate forms that pass this loose gate still fail later
// inside build_symplectic_basis with a pivot-level diagnostic.
struct SymplecticForm {
  int n = 0;
  Matrix omega;

  SymplecticForm(int n_, Matrix omega_);
  int dim() const { return 2 * n; }
  bool is_standard(double tol = kIdentityTol) const;
};

// Linear complex structure: a real matrix with j*j = -1 (checked on
// construction at the scale of j^2).
struct ComplexStructure {
  int n = 0;
  Matrix j;

  ComplexStructure(int n_, Matrix j_);
  int dim() const { return 2 * n; }
};

// A complex structure tamed by a form, together with its taming index.
struct CompatibleStructure {
  ComplexStructure structure;
  SymplecticForm form;
  int index = 0;
};

// The standard Gram matrix [[0, -1], [1, 0]] in n x n blocks.  Also the
// matrix of the base-point complex structure, so it is exposed separately.
Matrix standard_j(int n);
SymplecticForm standard_form(int n);

// diag(E, E) with E = diag(+1 x (n-l), -1 x l); commutes with standard_j, and
// standard_j(n) * q_matrix(n, l) is the canonical index-l structure.
Matrix q_matrix(int n, int l);
Matrix canonical_structure(int n, int l);  // standard_j * q_matrix

// Change of basis B with B^T omega B equal to the standard Gram matrix,
// by inductive pair extraction.  Pivots choose the largest |omega(e_i, e_j)|
// on the remaining subspace; a pivot below 1e-10 times the original scale
// raises NumericalError naming the failing reduction step.
Matrix build_symplectic_basis(const SymplecticForm& form);

// j*j = -1 and j^T omega j = omega, both to scaled tolerance.
bool is_compatible(const ComplexStructure& j, const SymplecticForm& form,
                   double tol = kIdentityTol);

// Number of negative eigenvalues of S = -omega * j divided by two.  The sign
// convention is fixed so the standard pair (standard_j, standard_form) gives
// S = +1 and index 0.  Eigenvalues within kSignatureBand (relative) of zero
// raise IndeterminateError; an asymmetric S raises std::invalid_argument,
// since it means j is not compatible with the form.
int taming_index(const ComplexStructure& j, const SymplecticForm& form);

// Bundles a structure with its form and computed index; validates
// compatibility along the way.
CompatibleStructure make_compatible(ComplexStructure j, SymplecticForm form);

struct CanonicalConjugator {
  Matrix g;   // symplectic for the standard form
  int index;  // taming index l
};

// For j compatible with the *standard* form, returns g in Sp(2n, R) with
// g^-1 j g = canonical_structure(n, l).  General forms should be reduced with
// build_symplectic_basis first.  The basis is grown pairwise: X is the top
// eigenvector of S = -omega*j restricted to the working subspace, the partner
// is +-jX with the sign chosen by sign(S(X,X)), and positive pairs are
// ordered before negative ones so the target is exactly the canonical model.
CanonicalConjugator canonical_conjugator(const ComplexStructure& j,
                                         const SymplecticForm& form);

bool sp_membership(const Matrix& g, const SymplecticForm& form,
                   double tol = kIdentityTol);

// exp(omega0^-1 * sym) for symmetric sym: omega0^-1 * sym lies in the
// symplectic Lie algebra, so the result is in Sp(2n, R).  Exposed so tests
// can drive the exponential with a chosen generator (sym = 0 gives the
// identity); random_sp draws sym with entries uniform on [-1, 1].
Matrix sp_exp(int n, const Matrix& sym);
Matrix random_sp(int n, std::uint64_t seed);

// Complex projectors 0.5*(1 -+ i j) onto the +-i eigenspaces of j.
struct Projectors {
  CMatrix plus;   // onto the +i eigenspace
  CMatrix minus;  // onto the -i eigenspace
};
Projectors projectors(const ComplexStructure& j);

}  // namespace twistkit
