#include "antilinear/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "antilinear/coneig.hpp"

namespace antilinear {

namespace {

constexpr double kBreakdownTol = 1e-12;

void require_symmetric(const CMatrix& G) {
  if (G.rows() != G.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  const double scale = std::max(1.0, G.norm());
  if ((G - G.transpose()).norm() > 1e-12 * scale)
    throw Error(ErrorKind::NotSymmetric, "matrix is not complex symmetric");
}

// Lanczos on G tau restricted to the orthogonal complement of `deflate`.
LanczosResult lanczos_impl(const CMatrix& G, const CVector& x, std::size_t k, const CMatrix& deflate) {
  const Eigen::Index n = G.rows();
  k = std::min<std::size_t>(k, static_cast<std::size_t>(n));
  const double tol = kBreakdownTol * G.norm();

  auto project_out = [&](CVector& w, const CMatrix& basis) {
    if (basis.cols() == 0) return;
    w -= basis * (basis.adjoint() * w);
  };

  CMatrix Q(n, static_cast<Eigen::Index>(k));
  JacobiParams params;
  CVector q = x;
  project_out(q, deflate);
  q /= q.norm();
  Q.col(0) = q;

  std::size_t found = 1;
  for (std::size_t j = 0; j < k; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    CVector w = G * Q.col(jj).conjugate();
    cplx alpha = Q.col(jj).dot(w);
    if (j + 1 == k) {
      params.alphas.push_back(alpha);
      break;
    }
    w -= alpha * Q.col(jj);
    if (j > 0) w -= params.betas.back() * Q.col(jj - 1);
    for (int pass = 0; pass < 2; ++pass) {
      const CVector h = Q.leftCols(jj + 1).adjoint() * w;
      w -= Q.leftCols(jj + 1) * h;
      alpha += h(jj);
      project_out(w, deflate);
    }
    params.alphas.push_back(alpha);
    const double beta = w.norm();
    if (beta <= tol) break;
    params.betas.push_back(beta);
    Q.col(jj + 1) = w / beta;
    ++found;
  }
  return {std::move(params), Q.leftCols(static_cast<Eigen::Index>(found))};
}

}  // namespace

bool MomentSequence::is_normalized(double tol) const {
  if (m.empty() || std::abs(m[0] - cplx(1.0)) > tol) return false;
  for (std::size_t k = 2; k < m.size(); k += 2) {
    const double scale = std::max(1.0, std::abs(m[k]));
    if (std::abs(m[k].imag()) > tol * scale || m[k].real() < -tol * scale) return false;
  }
  return true;
}

void JacobiParams::validate() const {
  if (alphas.empty()) throw Error(ErrorKind::InvalidJacobi, "no diagonal entries");
  if (betas.size() + 1 != alphas.size()) {
    std::ostringstream os;
    os << alphas.size() << " alphas need " << alphas.size() - 1 << " betas, got " << betas.size();
    throw Error(ErrorKind::InvalidJacobi, os.str());
  }
  for (std::size_t j = 0; j < betas.size(); ++j) {
    if (!(betas[j] > 0.0) || !std::isfinite(betas[j])) {
      std::ostringstream os;
      os << "beta_" << j + 1 << " = " << betas[j]
         << " is not positive (reducible matrix; split it with krylov-decompose)";
      throw Error(ErrorKind::InvalidJacobi, os.str());
    }
  }
}

JacobiParams JacobiParams::truncated(std::size_t n) const {
  if (n == 0 || n > alphas.size() || n - 1 > betas.size())
    throw Error(ErrorKind::IndexOutOfRange, "truncation size exceeds available parameters");
  return {{alphas.begin(), alphas.begin() + static_cast<std::ptrdiff_t>(n)},
          {betas.begin(), betas.begin() + static_cast<std::ptrdiff_t>(n - 1)}};
}

CMatrix JacobiParams::matrix() const {
  const auto n = static_cast<Eigen::Index>(alphas.size());
  CMatrix J = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) J(i, i) = alphas[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < n && static_cast<std::size_t>(i) < betas.size(); ++i) {
    J(i, i + 1) = betas[static_cast<std::size_t>(i)];
    J(i + 1, i) = betas[static_cast<std::size_t>(i)];
  }
  return J;
}

double max_param_difference(const JacobiParams& a, const JacobiParams& b) {
  if (a.alphas.size() != b.alphas.size() || a.betas.size() != b.betas.size())
    return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t j = 0; j < a.alphas.size(); ++j) d = std::max(d, std::abs(a.alphas[j] - b.alphas[j]));
  for (std::size_t j = 0; j < a.betas.size(); ++j) d = std::max(d, std::abs(a.betas[j] - b.betas[j]));
  return d;
}

Orthogonalization orthogonalize(const BiradialMeasure& rho) {
  const std::size_t n = rho.size();
  const auto en = static_cast<Eigen::Index>(n);
  CVector D(en);
  CMatrix Q(en, en);
  for (Eigen::Index k = 0; k < en; ++k) {
    D(k) = rho[static_cast<std::size_t>(k)].point;
    Q(k, 0) = std::sqrt(rho[static_cast<std::size_t>(k)].weight);
  }
  Q.col(0).normalize();

  const double tol = kBreakdownTol * std::max(rho.max_modulus(), std::numeric_limits<double>::min());
  Orthogonalization out;
  JacobiParams& params = out.params;
  std::vector<BiradialPoly>& polys = out.system.polys;
  polys.push_back(BiradialPoly{1.0});

  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    CVector w = D.cwiseProduct(Q.col(jj).conjugate());
    BiradialPoly wp = conj_shift(polys[j]);
    cplx alpha = Q.col(jj).dot(w);
    if (j + 1 == n) {
      params.alphas.push_back(alpha);
      break;
    }
    w -= alpha * Q.col(jj);
    wp -= alpha * polys[j];
    if (j > 0) {
      w -= params.betas.back() * Q.col(jj - 1);
      wp -= cplx(params.betas.back()) * polys[j - 1];
    }
    // classical Gram-Schmidt twice against the whole basis
    for (int pass = 0; pass < 2; ++pass) {
      const CVector h = Q.leftCols(jj + 1).adjoint() * w;
      w -= Q.leftCols(jj + 1) * h;
      for (Eigen::Index i = 0; i <= jj; ++i) wp -= h(i) * polys[static_cast<std::size_t>(i)];
      alpha += h(jj);
    }
    params.alphas.push_back(alpha);

    const double beta = w.norm();
    if (beta <= tol) {
      std::ostringstream os;
      os << "beta_" << j + 1 << " = " << beta << " vanished after " << j + 1 << " of " << n
         << " steps; support violates the biradial conditions numerically";
      throw Error(ErrorKind::Breakdown, os.str());
    }
    params.betas.push_back(beta);
    Q.col(jj + 1) = w / beta;
    polys.push_back((1.0 / beta) * wp);
  }
  out.system.values = std::move(Q);
  return out;
}

cplx eval_orthopoly(const JacobiParams& params, std::size_t j, cplx lambda) {
  if (j >= params.size()) {
    std::ostringstream os;
    os << "orthogonal polynomial index " << j << " out of range for size " << params.size();
    throw Error(ErrorKind::IndexOutOfRange, os.str());
  }
  cplx prev{};
  cplx cur{1.0};
  for (std::size_t i = 0; i < j; ++i) {
    cplx next = lambda * std::conj(cur) - params.alphas[i] * cur;
    if (i > 0) next -= params.betas[i - 1] * prev;
    next /= params.betas[i];
    prev = cur;
    cur = next;
  }
  return cur;
}

MomentSequence jacobi_moments(const JacobiParams& params, std::size_t K) {
  const std::size_t n = params.size();
  MomentSequence out;
  out.m.reserve(K + 1);
  std::vector<cplx> v(n), next(n);
  if (n > 0) v[0] = 1.0;
  for (std::size_t k = 0; k <= K; ++k) {
    out.m.push_back(n > 0 ? v[0] : cplx{});
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = params.alphas[i] * std::conj(v[i]);
      if (i > 0) s += params.betas[i - 1] * std::conj(v[i - 1]);
      if (i + 1 < n) s += params.betas[i] * std::conj(v[i + 1]);
      next[i] = s;
    }
    std::swap(v, next);
  }
  return out;
}

CMatrix moment_matrix(const MomentSequence& m, std::size_t k) {
  if (k > 0 && m.size() < 2 * k - 1) {
    std::ostringstream os;
    os << "order " << k << " needs " << 2 * k - 1 << " moments, got " << m.size();
    throw Error(ErrorKind::InsufficientMoments, os.str());
  }
  const auto ek = static_cast<Eigen::Index>(k);
  CMatrix M(ek, ek);
  for (Eigen::Index i = 0; i < ek; ++i)
    for (Eigen::Index j = 0; j < ek; ++j) {
      const cplx mij = m.m[static_cast<std::size_t>(i + j)];
      M(i, j) = (j % 2 == 0) ? mij : std::conj(mij);
    }
  return M;
}

PsdResult psd_check(const MomentSequence& m, std::size_t k) {
  const CMatrix M = moment_matrix(m, k);
  if (k == 0) return {true, 0.0};
  double scale = 0.0;
  for (Eigen::Index i = 0; i < M.rows(); ++i) scale += std::abs(M(i, i));
  scale = std::max(1.0, scale);
  const bool hermitian = (M - M.adjoint()).norm() <= 1e-12 * std::max(1.0, M.norm());
  const CMatrix H = 0.5 * (M + M.adjoint());
  const double lmin = hermitian_eig(H).eigenvalues(0);
  return {hermitian && lmin >= -1e-10 * scale, lmin};
}

JacobiParams moments_to_jacobi(const MomentSequence& m, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "size must be positive");
  if (m.size() < 2 * n) {
    std::ostringstream os;
    os << "size " << n << " needs moments m_0..m_" << 2 * n - 1 << ", got " << m.size();
    throw Error(ErrorKind::InsufficientMoments, os.str());
  }
  {
    // definiteness judged on the unit-diagonal (equilibrated) Gram matrix
    const CMatrix M = moment_matrix(m, n);
    const RVector diag = M.diagonal().real();
    double lmin = diag.minCoeff();
    if (lmin > 0.0 && (M - M.adjoint()).norm() <= 1e-10 * M.norm()) {
      const RVector d = diag.cwiseSqrt().cwiseInverse();
      CMatrix E = d.asDiagonal() * M * d.asDiagonal();
      lmin = hermitian_eig(0.5 * (E + E.adjoint())).eigenvalues(0);
    } else {
      lmin = std::min(lmin, 0.0);
    }
    if (!(lmin > 1e-12 * static_cast<double>(n))) {
      std::ostringstream os;
      os << "moment matrix of order " << n << " is not positive definite (min eigenvalue after unit-diagonal scaling "
         << lmin << ")";
      throw Error(ErrorKind::IndefiniteMoments, os.str());
    }
  }

  // <p, q> = sum_ij p_i conj(q_j) <lambda^<i>, lambda^<j>>
  auto ip = [&](const BiradialPoly& p, const BiradialPoly& q) {
    cplx s{};
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
      for (std::size_t j = 0; j < q.coeffs().size(); ++j) {
        const cplx mij = m.m.at(i + j);
        s += p.coeffs()[i] * std::conj(q.coeffs()[j]) * ((j % 2 == 0) ? mij : std::conj(mij));
      }
    return s;
  };

  JacobiParams params;
  std::vector<BiradialPoly> polys{BiradialPoly{1.0 / std::sqrt(m.m[0].real())}};
  for (std::size_t j = 0; j < n; ++j) {
    const BiradialPoly shifted = conj_shift(polys[j]);
    BiradialPoly w = shifted;
    cplx alpha = ip(w, polys[j]);
    w -= alpha * polys[j];
    if (j > 0) w -= cplx(params.betas.back()) * polys[j - 1];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i <= j; ++i) {
        const cplx h = ip(w, polys[i]);
        w -= h * polys[i];
        if (i == j) alpha += h;
      }
    }
    params.alphas.push_back(alpha);
    if (j + 1 == n) break;

    const double norm2 = ip(w, w).real();
    const double ref = ip(shifted, shifted).real();
    if (!(norm2 > 1e-20 * std::max(ref, std::numeric_limits<double>::min()))) {
      std::ostringstream os;
      os << "Gram-Schmidt collapsed at step " << j + 1 << " (squared norm " << norm2 << ")";
      throw Error(ErrorKind::IndefiniteMoments, os.str());
    }
    const double beta = std::sqrt(norm2);
    params.betas.push_back(beta);
    polys.push_back((1.0 / beta) * w);
  }
  return params;
}

LanczosResult antilinear_lanczos(const CMatrix& G, const CVector& x, std::size_t k) {
  require_symmetric(G);
  if (x.size() != G.rows()) throw Error(ErrorKind::DimensionMismatch, "start vector length differs from matrix size");
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "step count must be positive");
  if (x.norm() == 0.0) throw Error(ErrorKind::ZeroStart, "start vector is zero");
  return lanczos_impl(G, x, k, CMatrix(G.rows(), 0));
}

std::vector<KrylovBlock> krylov_decompose(const CMatrix& G) {
  require_symmetric(G);
  const Eigen::Index n = G.rows();
  CMatrix found(n, 0);
  std::vector<KrylovBlock> blocks;

  Eigen::Index next = 0;
  while (found.cols() < n) {
    CVector x;
    for (; next < n; ++next) {
      x = CVector::Unit(n, next);
      for (int pass = 0; pass < 2; ++pass) x -= found * (found.adjoint() * x);
      if (x.norm() > 1e-8) break;
    }
    if (next == n) break;

    LanczosResult block = lanczos_impl(G, x, static_cast<std::size_t>(n - found.cols()), found);
    CMatrix grown(n, found.cols() + block.basis.cols());
    grown << found, block.basis;
    found = std::move(grown);
    blocks.push_back({x, std::move(block.params), std::move(block.basis)});
    ++next;
  }
  return blocks;
}

BiradialMeasure favard_truncate(const std::vector<cplx>& alphas, const std::vector<double>& betas,
                                std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "truncation size must be positive");
  if (alphas.size() < n || betas.size() + 1 < n)
    throw Error(ErrorKind::IndexOutOfRange, "not enough parameters for the requested truncation");
  JacobiParams params{{alphas.begin(), alphas.begin() + static_cast<std::ptrdiff_t>(n)},
                      {betas.begin(), betas.begin() + static_cast<std::ptrdiff_t>(n - 1)}};
  return jacobi_to_measure(params);
}

}  // namespace antilinear
