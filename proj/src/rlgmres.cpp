#include "antilinear/rlgmres.hpp"

#include <algorithm>
#include <cmath>

namespace antilinear {

namespace {

constexpr double kInvariantTol = 1e-12;

void check_system(const CMatrix& M, const CVector& b) {
  if (M.rows() != M.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  if (b.size() != M.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side length differs from matrix size");
  if (b.norm() == 0.0) throw Error(ErrorKind::ZeroRhs, "right-hand side is zero");
}

// One Arnoldi step on column j: fills H(0..j+1, j), returns the next vector's norm.
double arnoldi_step(const CMatrix& M, CMatrix& V, CMatrix& H, Eigen::Index j) {
  CVector w = M * V.col(j).conjugate();
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const cplx h = V.col(i).dot(w);
      H(i, j) += h;
      w -= h * V.col(i);
    }
  }
  const double beta = w.norm();
  H(j + 1, j) = beta;
  if (beta > 0.0) V.col(j + 1) = w / beta;
  return beta;
}

}  // namespace

ArnoldiFactorization arnoldi(const CMatrix& M, const CVector& b, std::size_t k) {
  check_system(M, b);
  const Eigen::Index n = M.rows();
  const auto steps = static_cast<Eigen::Index>(std::min<std::size_t>(k, static_cast<std::size_t>(n)));
  const double tol = kInvariantTol * M.norm();

  CMatrix V = CMatrix::Zero(n, steps + 1);
  CMatrix H = CMatrix::Zero(steps + 1, steps);
  V.col(0) = b / b.norm();
  for (Eigen::Index j = 0; j < steps; ++j) {
    if (arnoldi_step(M, V, H, j) <= tol) {
      return {V.leftCols(j + 1), H.topLeftCorner(j + 1, j + 1), static_cast<std::size_t>(j + 1), true};
    }
  }
  return {V, H, static_cast<std::size_t>(steps), false};
}

SolveResult solve(const CMatrix& M, const CVector& b, double tol, std::size_t maxit) {
  check_system(M, b);
  const Eigen::Index n = M.rows();
  const auto kmax = static_cast<Eigen::Index>(std::min<std::size_t>(maxit, static_cast<std::size_t>(n)));
  const double r0 = b.norm();
  const double breakdown = kInvariantTol * M.norm();

  CMatrix V = CMatrix::Zero(n, kmax + 1);
  CMatrix H = CMatrix::Zero(kmax + 1, kmax);
  CVector g = CVector::Zero(kmax + 1);
  std::vector<double> cs(static_cast<std::size_t>(kmax));
  std::vector<cplx> sn(static_cast<std::size_t>(kmax));
  V.col(0) = b / r0;
  g(0) = r0;

  SolveResult out;
  out.residuals.push_back(r0);
  Eigen::Index k = 0;
  while (k < kmax && out.residuals.back() > tol * r0) {
    const double beta = arnoldi_step(M, V, H, k);
    // previous rotations
    for (Eigen::Index i = 0; i < k; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const cplx a = H(i, k);
      const cplx c = H(i + 1, k);
      H(i, k) = cs[ii] * a + sn[ii] * c;
      H(i + 1, k) = -std::conj(sn[ii]) * a + cs[ii] * c;
    }
    // new rotation zeroing H(k+1, k)
    const cplx a = H(k, k);
    const cplx c = H(k + 1, k);
    const double rho = std::hypot(std::abs(a), std::abs(c));
    const auto kk = static_cast<std::size_t>(k);
    if (std::abs(a) == 0.0) {
      cs[kk] = 0.0;
      sn[kk] = 1.0;
    } else {
      cs[kk] = std::abs(a) / rho;
      sn[kk] = (a / std::abs(a)) * std::conj(c) / rho;
    }
    H(k, k) = cs[kk] * a + sn[kk] * c;
    H(k + 1, k) = 0.0;
    g(k + 1) = -std::conj(sn[kk]) * g(k);
    g(k) = cs[kk] * g(k);
    ++k;
    out.residuals.push_back(std::abs(g(k)));
    if (beta <= breakdown) break;
  }

  out.iterations = static_cast<std::size_t>(k);
  out.converged = out.residuals.back() <= tol * r0 || k < kmax;
  if (k == 0) {
    out.x = CVector::Zero(n);
    out.converged = true;
    return out;
  }
  const CVector z = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
  out.x = V.leftCols(k) * z.conjugate();
  return out;
}

double residual_oracle(const CMatrix& M, const CVector& b, std::size_t k) {
  if (M.rows() != M.cols() || b.size() != M.rows())
    throw Error(ErrorKind::DimensionMismatch, "matrix and right-hand side sizes differ");
  if (k == 0) return b.norm();
  const Eigen::Index n = M.rows();
  const auto ek = static_cast<Eigen::Index>(k);

  // columns (M tau)^m b, m = 1..k, scaled to unit length
  CMatrix W(n, ek);
  CVector w = b;
  for (Eigen::Index m = 0; m < ek; ++m) {
    w = M * w.conjugate();
    const double nrm = w.norm();
    W.col(m) = nrm > 0.0 ? CVector(w / nrm) : CVector::Zero(n);
  }
  Eigen::ColPivHouseholderQR<CMatrix> qr(W);
  const Eigen::Index rank = qr.rank();
  const CMatrix Q = qr.householderQ() * CMatrix::Identity(n, rank);
  CVector r = b;
  for (int pass = 0; pass < 2; ++pass) r -= Q * (Q.adjoint() * r);
  return r.norm();
}

CMatrix staircase_matrix(std::size_t circles) {
  const auto n = static_cast<Eigen::Index>(2 * circles);
  CMatrix M = CMatrix::Zero(n, n);
  cplx dir{1.0};
  for (std::size_t j = 0; j < circles; ++j) {
    const cplx lambda = static_cast<double>(j + 1) * dir;
    const auto jj = static_cast<Eigen::Index>(2 * j);
    M(jj, jj) = lambda;
    M(jj + 1, jj + 1) = -lambda;
    dir *= cplx(0.0, 1.0);
  }
  return M;
}

StaircaseTable staircase_demo(std::size_t circles) {
  StaircaseTable table;
  if (circles == 0) return table;
  const CMatrix M = staircase_matrix(circles);
  const CVector b = CVector::Ones(M.rows()) / std::sqrt(static_cast<double>(M.rows()));
  const SolveResult res = solve(M, b, 0.0, static_cast<std::size_t>(M.rows()));

  for (std::size_t k = 0; k < res.residuals.size(); ++k) {
    StaircaseRow row;
    row.k = k;
    row.residual = res.residuals[k];
    row.ratio = k == 0 ? 1.0 : res.residuals[k] / res.residuals[k - 1];
    row.stagnation = k % 2 == 1 && row.ratio >= 1.0 - 1e-10;
    if (k % 2 == 1 && !row.stagnation) table.odd_steps_stagnate = false;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace antilinear
