#include "antilinear/coneig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace antilinear {

namespace {

// Eigenvalues of G conj(G) closer than this (relative to the largest) are
// resolved together inside their joint invariant subspace.
constexpr double kClusterGap = 1e-5;
// Eigenvalues of G conj(G) below this (relative) count as exact zeros.
constexpr double kZeroEig = 1e-13;
constexpr double kFirstEntryTol = 1e-10;
// Recurrence recovery runs up to the first entry of at least this fraction of the largest.
constexpr double kShootTarget = 0.1;

template <typename R>
using Cx = std::complex<R>;
template <typename R>
using Mat = Eigen::Matrix<Cx<R>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename R>
using Vec = Eigen::Matrix<Cx<R>, Eigen::Dynamic, 1>;

void require_symmetric(const CMatrix& G) {
  if (G.rows() != G.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  if ((G - G.transpose()).norm() > 1e-12 * std::max(1.0, G.norm()))
    throw Error(ErrorKind::NotSymmetric, "matrix is not complex symmetric");
}

// Largest-magnitude entry made real positive.
template <typename R>
void fix_phase(Eigen::Ref<Vec<R>> x) {
  Eigen::Index imax = 0;
  x.cwiseAbs().maxCoeff(&imax);
  if (std::abs(x(imax)) > R(0)) x *= std::conj(x(imax)) / std::abs(x(imax));
}

// Real orthonormal basis of the +sigma part of w -> K conj(w) for a small
// complex symmetric K (the fixed set of the involution scaled by sigma):
// with w = a + ib, K conj(w) = sigma w is the real symmetric problem
// [[Re K, Im K], [Im K, -Re K]] (a; b) = sigma (a; b).
template <typename R>
Mat<R> fixed_set_basis(const Mat<R>& K) {
  using RM = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index d = K.rows();
  RM E(2 * d, 2 * d);
  E << K.real(), K.imag(), K.imag(), -K.real();
  Eigen::SelfAdjointEigenSolver<RM> es(E);
  const RM top = es.eigenvectors().rightCols(d);
  Mat<R> C(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) C(i, j) = Cx<R>(top(i, j), top(d + i, j));
  return C;
}

template <typename R>
std::vector<Vec<R>> con_eigenvectors(const Mat<R>& G) {
  const Eigen::Index n = G.rows();
  std::vector<Vec<R>> vecs;
  if (n == 0) return vecs;
  Mat<R> B = G * G.conjugate();
  B = (R(0.5) * (B + B.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Mat<R>> es(B);
  Mat<R> X = es.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) fix_phase<R>(X.col(j));

  const Eigen::Matrix<R, Eigen::Dynamic, 1> mu = es.eigenvalues().cwiseMax(R(0));
  const R mu_max = mu.maxCoeff();
  vecs.reserve(static_cast<std::size_t>(n));

  Eigen::Index start = 0;
  // exact kernel: columns of the kernel of G conj(G) already satisfy G conj(x) = 0
  while (start < n && mu(start) <= R(kZeroEig) * mu_max) ++start;
  if (start >= 2 || start == n) {
    for (Eigen::Index j = 0; j < start; ++j) vecs.push_back(X.col(j));
  } else {
    start = 0;
  }

  const R gnorm = G.norm();
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && mu(end) - mu(end - 1) <= R(kClusterGap) * mu_max) ++end;
    const Eigen::Index d = end - start;
    const Mat<R> Xc = X.middleCols(start, d);

    if (d == 1) {
      const Vec<R> x = Xc.col(0);
      const R sigma = std::sqrt(mu(start));
      const Vec<R> gx = G * x.conjugate();
      Vec<R> w = sigma * x + gx;
      const R small = R(1e-8) * std::max(sigma, std::numeric_limits<R>::epsilon() * gnorm);
      if (w.norm() < small) w = Cx<R>(0, 1) * (sigma * x - gx);
      if (w.norm() < small) w = x;
      vecs.push_back(w.normalized());
    } else {
      const Mat<R> K = Xc.adjoint() * G * Xc.conjugate();
      const Mat<R> C = fixed_set_basis<R>((R(0.5) * (K + K.transpose())).eval());
      for (Eigen::Index j = 0; j < d; ++j) vecs.push_back((Xc * C.col(j)).normalized());
    }
    start = end;
  }
  return vecs;
}

}  // namespace

HermitianEigen hermitian_eig(const CMatrix& H) {
  if (H.rows() != H.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  const double scale = H.norm();
  if ((H - H.adjoint()).norm() > 1e-12 * scale) {
    std::ostringstream os;
    os << "||H - H^*|| = " << (H - H.adjoint()).norm() << " exceeds 1e-12 ||H||";
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  if (H.rows() == 0) return {RVector(0), CMatrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
  return {es.eigenvalues(), es.eigenvectors()};
}

std::vector<ConEigenPair> takagi_pairs(const CMatrix& G) {
  require_symmetric(G);
  std::vector<ConEigenPair> out;
  for (CVector& v : con_eigenvectors<double>(G)) {
    const cplx lambda = v.dot(G * v.conjugate());
    out.push_back({lambda, std::move(v)});
  }
  return out;
}

std::vector<ConEigenPair> con_eigenpairs(const CMatrix& G) {
  std::vector<ConEigenPair> out = takagi_pairs(G);
  for (std::size_t k = 0; k < out.size(); ++k) {
    CVector& v = out[k].v;
    const double first = std::abs(v(0));
    if (first < kFirstEntryTol * v.norm()) {
      std::ostringstream os;
      os << "con-eigenvector " << k << " has first entry " << first
         << "; matrix is not an unreduced Jacobi matrix";
      throw Error(ErrorKind::ZeroFirstEntry, os.str());
    }
    // (v, lambda) -> (e^{i phi} v, e^{-2 i phi} lambda)
    const cplx phase = std::conj(v(0)) / first;
    v *= phase;
    v(0) = v(0).real();
    out[k].lambda = v.dot(G * v.conjugate());
  }
  return out;
}

namespace {

using ld = long double;

struct JacobiLd {
  std::vector<Cx<ld>> alphas;
  std::vector<ld> betas;
};

// Rows 0..m-1 of J conj(v) = lambda v solved downward from v_0 = 1.
std::vector<Cx<ld>> shoot(const JacobiLd& p, Cx<ld> lambda, std::size_t m) {
  std::vector<Cx<ld>> v(m + 1);
  v[0] = 1;
  for (std::size_t j = 0; j < m; ++j) {
    Cx<ld> c = lambda * v[j] - p.alphas[j] * std::conj(v[j]);
    if (j > 0) c -= p.betas[j - 1] * std::conj(v[j - 1]);
    v[j + 1] = std::conj(c) / p.betas[j];
  }
  return v;
}

Atom to_atom(Cx<ld> z, ld w) {
  return {cplx(static_cast<double>(z.real()), static_cast<double>(z.imag())), static_cast<double>(w)};
}

// Node and weight of a con-eigenvector x (arbitrary phase) of J.
//
// When x is localized away from the first index, x(0) carries only an
// absolute error, so its phase (and with it arg lambda) is unreliable. The
// recurrence from v_0 = 1 grows towards the first sizable entry x_m and is
// accurate there; the phase phi with v = e^{i phi} x is fixed by matching arg v_m.
Atom recover_atom(const JacobiLd& p, const Vec<ld>& x, Cx<ld> lambda0) {
  const ld big = ld(kShootTarget) * x.cwiseAbs().maxCoeff();
  Eigen::Index im = 0;
  while (std::abs(x(im)) < big) ++im;
  const auto m = static_cast<std::size_t>(im);
  const ld x0 = std::abs(x(0));
  if (m == 0 || x0 == 0) {
    if (x0 < ld(kFirstEntryTol) * x.norm()) {
      std::ostringstream os;
      os << "con-eigenvector has first entry " << static_cast<double>(x0)
         << "; matrix is not an unreduced Jacobi matrix";
      throw Error(ErrorKind::ZeroFirstEntry, os.str());
    }
    const Cx<ld> ph = std::conj(x(0)) / x0;
    return to_atom(lambda0 * std::conj(ph * ph), x0 * x0 / x.squaredNorm());
  }

  const Cx<ld> xm = x(im);
  auto mismatch = [&](ld phi) {
    const std::vector<Cx<ld>> v = shoot(p, lambda0 * std::polar(ld(1), ld(-2) * phi), m);
    return std::arg(v[m] * std::conj(xm) * std::polar(ld(1), -phi));
  };
  const ld phi0 = -std::arg(x(0));
  ld phi = phi0;
  ld g = mismatch(phi);
  const ld g_start = std::abs(g);
  // secant; the slope is roughly |x_m / x_0|
  ld phi_prev = phi + ld(1e-3) * x0 / std::abs(xm);
  ld g_prev = mismatch(phi_prev);
  for (int it = 0; it < 40 && g != 0 && g != g_prev; ++it) {
    const ld next = phi - g * (phi - phi_prev) / (g - g_prev);
    phi_prev = phi;
    g_prev = g;
    phi = next;
    g = mismatch(phi);
    if (std::abs(g) < ld(1e-18)) break;
  }
  // x(0) is off by O(eps ||x||), so a genuine correction is tiny
  const ld reach = ld(1e-8) * std::abs(xm) / x0;
  if (!(std::abs(g) <= g_start) || !(std::abs(phi - phi0) <= reach)) phi = phi0;

  const Cx<ld> lambda = lambda0 * std::polar(ld(1), ld(-2) * phi);
  const std::vector<Cx<ld>> v = shoot(p, lambda, m);
  ld head = 0;
  for (const Cx<ld>& z : v) head += std::norm(z);
  const ld tail = x.tail(x.size() - im - 1).squaredNorm() / std::norm(xm);
  const Atom atom = to_atom(lambda, 1 / (head + std::norm(v[m]) * tail));
  if (!(atom.weight > 0.0) || !std::isfinite(atom.weight))
    throw Error(ErrorKind::ZeroFirstEntry, "con-eigenvector first entry underflows");
  return atom;
}

}  // namespace

BiradialMeasure jacobi_to_measure(const JacobiParams& params) {
  params.validate();
  JacobiLd p;
  for (const cplx& a : params.alphas) p.alphas.emplace_back(a.real(), a.imag());
  for (double b : params.betas) p.betas.push_back(b);
  const Mat<ld> J = params.matrix().cast<Cx<ld>>();
  PlanarAtomicMeasure raw;
  for (const Vec<ld>& x : con_eigenvectors<ld>(J)) {
    const Cx<ld> lambda0 = x.dot(J * x.conjugate());
    raw.atoms.push_back(recover_atom(p, x, lambda0));
  }
  return canonicalize(raw);
}

}  // namespace antilinear
