#pragma once

// GMRES for the antilinear system M conj(x) = b.
//
// The Krylov space is spanned by (M tau)^k b. With V the Arnoldi basis and
// x = V_k conj(z), the residual is V_{k+1} (||b|| e_1 - H_k z), so each step
// solves an ordinary complex least-squares problem in z.

#include <cstddef>
#include <vector>

#include "antilinear/core.hpp"

namespace antilinear {

struct ArnoldiFactorization {
  CMatrix V;  // n x (steps + 1), or n x steps after an invariant subspace
  CMatrix H;  // (steps + 1) x steps, or steps x steps after an invariant subspace
  std::size_t steps = 0;
  bool invariant = false;
};

ArnoldiFactorization arnoldi(const CMatrix& M, const CVector& b, std::size_t k);

struct SolveResult {
  CVector x;
  std::vector<double> residuals;  // r_0, r_1, ..., r_iterations
  std::size_t iterations = 0;
  bool converged = false;  // false means maxit was reached (stagnation)
};

/// Full-memory GMRES; stops once r_k <= tol r_0, at an invariant subspace, or
/// after maxit (clamped to n) steps.
SolveResult solve(const CMatrix& M, const CVector& b, double tol, std::size_t maxit);

/// min over p in P_k(r2), p(0) = 1 of ||p(M tau) b||, by least squares on
/// the power basis (M tau)^m b. Independent of the Arnoldi recurrence.
double residual_oracle(const CMatrix& M, const CVector& b, std::size_t k);

struct StaircaseRow {
  std::size_t k = 0;
  double residual = 0.0;
  double ratio = 1.0;  // r_k / r_{k-1}; 1 for k = 0
  bool stagnation = false;
};

struct StaircaseTable {
  std::vector<StaircaseRow> rows;
  bool odd_steps_stagnate = true;
};

/// Diagonal instance with an antipodal pair +-lambda_j on circle j
/// (lambda_j = j i^{j-1}) and b = ones / sqrt(n).
CMatrix staircase_matrix(std::size_t circles);
StaircaseTable staircase_demo(std::size_t circles);

}  // namespace antilinear
