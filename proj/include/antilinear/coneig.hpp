#pragma once

// Inverse map: con-eigendecomposition of complex symmetric matrices and
// recovery of a biradial measure from Jacobi parameters.

#include <vector>

#include "antilinear/core.hpp"
#include "antilinear/jacobi_params.hpp"
#include "antilinear/measures.hpp"

namespace antilinear {

struct HermitianEigen {
  RVector eigenvalues;  // ascending
  CMatrix eigenvectors;  // unitary, columns match eigenvalues
};

/// Dense Hermitian eigensolver. Throws NotHermitian when
/// ||H - H^*|| > 1e-12 ||H||.
HermitianEigen hermitian_eig(const CMatrix& H);

/// G conj(v) = lambda v with ||v|| = 1 and v(0) real positive.
struct ConEigenPair {
  cplx lambda;
  CVector v;
};

/// All n con-eigenpairs of a complex symmetric G, orthonormal, ordered by
/// increasing |lambda|. Moduli come from the eigenvalues of G conj(G); a
/// repeated modulus is resolved inside the fixed set of w -> G conj(w) / sigma.
/// Throws ZeroFirstEntry when a vector cannot be rephased to v(0) > 0.
std::vector<ConEigenPair> con_eigenpairs(const CMatrix& G);

/// Same as con_eigenpairs but without the first-entry rephasing (for any
/// complex symmetric matrix, including reducible ones).
std::vector<ConEigenPair> takagi_pairs(const CMatrix& G);

/// Support points are the con-eigenvalues of J, weights the squared first
/// entries of the con-eigenvectors.
BiradialMeasure jacobi_to_measure(const JacobiParams& params);

}  // namespace antilinear
