#pragma once

// Forward map from measures (or antilinear operators with a start vector) to
// Jacobi parameters, plus the moment-side view of the same data.
//
// Orthonormalizing 1, lambda^<1>, lambda^<2>, ... in L2(rho) yields
//
//   beta_{j+1} p_{j+1} = lambda conj(p_j) - alpha_{j+1} p_j - beta_j p_{j-1},
//
// and with Q_{kj} = sqrt(rho_k) p_{j-1}(lambda_k), D = diag(lambda):
//
//   D conj(Q) = Q J.

#include <cstddef>
#include <vector>

#include "antilinear/birpoly.hpp"
#include "antilinear/core.hpp"
#include "antilinear/jacobi_params.hpp"
#include "antilinear/measures.hpp"
#include "antilinear/moments.hpp"

namespace antilinear {

struct OrthonormalSystem {
  std::vector<BiradialPoly> polys;
  CMatrix values;  // Q
};

struct Orthogonalization {
  JacobiParams params;
  OrthonormalSystem system;
};

/// Throws Breakdown if some beta collapses before step n-1.
Orthogonalization orthogonalize(const BiradialMeasure& rho);

/// p_j(lambda) from the three-term recurrence.
cplx eval_orthopoly(const JacobiParams& params, std::size_t j, cplx lambda);

/// m_k = e_1^T (J tau)^k e_1 for k = 0..K (exact for K <= 2n-1).
MomentSequence jacobi_moments(const JacobiParams& params, std::size_t K);

/// k x k matrix with M_ij = m_{i+j} in even columns and conj(m_{i+j}) in odd
/// columns (0-based), i.e. the Gram matrix <lambda^<i>, lambda^<j>>.
CMatrix moment_matrix(const MomentSequence& m, std::size_t k);

struct PsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

/// Positive semidefiniteness of the order-k moment matrix, tolerance
/// 1e-10 times its trace scale. Non-Hermitian input is reported as not PSD.
PsdResult psd_check(const MomentSequence& m, std::size_t k);

/// Jacobi parameters of size n from m_0..m_{2n-1}, by Gram-Schmidt in
/// coefficient space with the moment matrix as Gram matrix. Conditioning
/// deteriorates quickly with n (fine for n <= 12 on moderate supports).
JacobiParams moments_to_jacobi(const MomentSequence& m, std::size_t n);

struct LanczosResult {
  JacobiParams params;
  CMatrix basis;  // n x k, orthonormal columns
};

/// Antilinear Lanczos for G tau with G complex symmetric, started at x.
/// Stops early at an invariant subspace.
LanczosResult antilinear_lanczos(const CMatrix& G, const CVector& x, std::size_t k);

struct KrylovBlock {
  CVector start;
  JacobiParams params;
  CMatrix basis;
};

/// Splits C^n into mutually orthogonal invariant Krylov subspaces of G tau.
std::vector<KrylovBlock> krylov_decompose(const CMatrix& G);

/// Biradial measure reproducing the leading n alphas and n-1 betas.
BiradialMeasure favard_truncate(const std::vector<cplx>& alphas, const std::vector<double>& betas,
                                std::size_t n);

}  // namespace antilinear
