// Pointwise integrability residuals for torsion- and curvature-type tensors
// against a complex structure, and the dimension of the subspace of tensors
// annihilated simultaneously at a family of conjugated structures.  The
// kernel dimension is what detects that the residual conditions cut out the
// same subspace for every taming index.
#pragma once

#include "twistkit/symplectic.hpp"

#include <vector>

namespace twistkit {

// T(X, Y) with components T^k_{ij} = comp[k](i, j), antisymmetric in (i, j),
// extended complex-bilinearly when evaluated on complexified arguments.
struct TorsionTensor {
  int n = 0;
  std::vector<Matrix> comp;  // 2n matrices, each 2n x 2n antisymmetric

  TorsionTensor(int n_, std::vector<Matrix> comp_);
};

// R(X_i, X_j) = val[i * 2n + j], antisymmetric in (i, j), each value in the
// symplectic Lie algebra of the standard form (omega * value symmetric).
struct CurvatureTensor {
  int n = 0;
  std::vector<Matrix> val;  // (2n)^2 matrices, each 2n x 2n

  CurvatureTensor(int n_, std::vector<Matrix> val_);
  const Matrix& at(int i, int j) const { return val[static_cast<size_t>(i) * 2 * n + j]; }
};

// max over basis pairs (a < b) of the max-norm of
//   torsion:      plus . T(minus X_a, minus X_b)
//   curvature:    minus . R(plus X_a, plus X_b) . plus
//   curvature02:  R(minus X_a, minus X_b)
// where plus/minus are the eigenprojectors of j.
double torsion_residual(const TorsionTensor& t, const ComplexStructure& j);
double curvature_residual(const CurvatureTensor& r, const ComplexStructure& j);
double curvature_02_residual(const CurvatureTensor& r, const ComplexStructure& j);

enum class ResidualKind { torsion, curvature, curvature02 };

// Stacked residual entries as a linear functional of the tensor, evaluated
// pair by pair; the residual above is the max-norm of this vector.  Exposed
// because the kernel computation and the equivariance tests need the linear
// structure, not just the norm.
CVector torsion_residual_components(const TorsionTensor& t, const ComplexStructure& j);
CVector curvature_residual_components(const CurvatureTensor& r, const ComplexStructure& j,
                                      bool sandwich);

// Projected tensor values on explicit complexified arguments:
//   torsion:      plus . T(minus x, minus y)
//   curvature:    minus . R(plus x, plus y) . plus   (sandwich)
//   curvature02:  R(minus x, minus y)
// These satisfy an exact intertwining identity under transform(., g), which
// is what equivariance means for structures conjugated by g.
CVector torsion_projected_value(const TorsionTensor& t, const ComplexStructure& j,
                                const CVector& x, const CVector& y);
CMatrix curvature_projected_value(const CurvatureTensor& r, const ComplexStructure& j,
                                  const CVector& x, const CVector& y, bool sandwich);

// Dimension of the space of tensors with vanishing residual at every sampled
// structure.  Sample 0 is the canonical index-l structure itself; sample s >=
// 1 conjugates it by random_sp(n, mix_seed(seed, s)).  Rank decisions use the
// relative cutoff kRankRelTol and demand a spectral gap of kRankGapFactor,
// else IndeterminateError.
struct KernelReport {
  int space_dim = 0;   // dimension of the tensor space being cut
  int rank = 0;        // rank of the stacked conditions
  int dimension = 0;   // space_dim - rank
  std::vector<double> sv_tail;  // smallest singular values, for the report
};
KernelReport invariant_kernel(ResidualKind kind, int n, int l, int samples,
                              std::uint64_t seed);
int invariant_kernel_dim(ResidualKind kind, int n, int l, int samples, std::uint64_t seed);

// Rank decision on a descending singular value list: values above
// rel_tol * max are signal, and the decision demands gap_factor between the
// last kept and first dropped value.  Exposed for direct testing.
int decide_rank(const Vector& singular_values, double rel_tol = kRankRelTol,
                double gap_factor = kRankGapFactor);

// Standard tensor actions of a linear map: (g.T)(X, Y) = g T(g^-1 X, g^-1 Y)
// and (g.R)(X, Y) = g R(g^-1 X, g^-1 Y) g^-1.
TorsionTensor transform(const TorsionTensor& t, const Matrix& g);
CurvatureTensor transform(const CurvatureTensor& r, const Matrix& g);

// Seeded samples with entries uniform on [-1, 1], symmetrized appropriately.
TorsionTensor random_torsion(int n, std::uint64_t seed);
CurvatureTensor random_curvature(int n, std::uint64_t seed);

// Basis of the symplectic Lie algebra for the standard form, as
// omega0^-1 * (symmetric basis); used by the kernel assembly and tests.
std::vector<Matrix> sp_basis(int n);

}  // namespace twistkit
