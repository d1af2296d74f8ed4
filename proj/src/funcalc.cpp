#include "antilinear/funcalc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "antilinear/coneig.hpp"

namespace antilinear {

namespace {

bool is_symmetric(const CMatrix& G) {
  return G.rows() == G.cols() && (G - G.transpose()).norm() <= 1e-12 * std::max(1.0, G.norm());
}

void require_symmetric(const CMatrix& G) {
  if (G.rows() != G.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  if (!is_symmetric(G)) throw Error(ErrorKind::NotSymmetric, "matrix is not complex symmetric");
}

RVector singular_values(const RMatrix& R) {
  if (R.size() == 0) return RVector(0);
  return Eigen::JacobiSVD<RMatrix>(R).singularValues();
}

CMatrix inverse_or_throw(const CMatrix& M, const char* what) {
  Eigen::FullPivLU<CMatrix> lu(M);
  if (!lu.isInvertible()) throw Error(ErrorKind::SingularMatrix, std::string(what) + " is singular");
  return lu.inverse();
}

// sum_k c_k P^{min_power + k}; Pinv needed only for negative powers.
CMatrix matrix_laurent(const LaurentPoly& f, const CMatrix& P, const CMatrix* Pinv) {
  const Eigen::Index n = P.rows();
  CMatrix pos = CMatrix::Zero(n, n);
  CMatrix neg = CMatrix::Zero(n, n);
  const int top = f.min_power + static_cast<int>(f.coeffs.size()) - 1;
  // Horner over nonnegative powers, high to low
  for (int p = top; p >= 0; --p) {
    pos = pos * P;
    if (p >= f.min_power) pos += f.coeffs[static_cast<std::size_t>(p - f.min_power)] * CMatrix::Identity(n, n);
  }
  if (f.has_negative_powers()) {
    // Horner in Pinv over powers -1 .. min_power
    for (int p = f.min_power; p <= -1; ++p) {
      neg = neg * (*Pinv);
      const int idx = p - f.min_power;
      if (idx < static_cast<int>(f.coeffs.size()))
        neg += f.coeffs[static_cast<std::size_t>(idx)] * CMatrix::Identity(n, n);
    }
    neg = neg * (*Pinv);
  }
  return pos + neg;
}

RealLinearOp add(const RealLinearOp& a, const RealLinearOp& b) { return {a.C + b.C, a.A + b.A}; }

RealLinearOp scale(cplx s, const RealLinearOp& op) { return {s * op.C, s * op.A}; }

}  // namespace

RealLinearOp RealLinearOp::identity(Eigen::Index n) {
  return {CMatrix::Identity(n, n), CMatrix::Zero(n, n)};
}

RealLinearOp RealLinearOp::antilinear(const CMatrix& A) {
  return {CMatrix::Zero(A.rows(), A.cols()), A};
}

RealLinearOp compose(const RealLinearOp& first, const RealLinearOp& second) {
  // (C1 + A1 tau)(C2 + A2 tau) = C1 C2 + A1 conj(A2) + (C1 A2 + A1 conj(C2)) tau
  return {first.C * second.C + first.A * second.A.conjugate(),
          first.C * second.A + first.A * second.C.conjugate()};
}

RMatrix realify(const RealLinearOp& op) {
  const Eigen::Index n = op.size();
  RMatrix R(2 * n, 2 * n);
  R << op.C.real() + op.A.real(), -op.C.imag() + op.A.imag(),
       op.C.imag() + op.A.imag(), op.C.real() - op.A.real();
  return R;
}

RealLinearOp separate(const RMatrix& R) {
  if (R.rows() != R.cols() || R.rows() % 2 != 0)
    throw Error(ErrorKind::DimensionMismatch, "realified operator must be 2n x 2n");
  const Eigen::Index n = R.rows() / 2;
  const RMatrix R11 = R.topLeftCorner(n, n);
  const RMatrix R12 = R.topRightCorner(n, n);
  const RMatrix R21 = R.bottomLeftCorner(n, n);
  const RMatrix R22 = R.bottomRightCorner(n, n);
  RealLinearOp op;
  op.C = (0.5 * (R11 + R22)).cast<cplx>() + cplx(0, 1) * (0.5 * (R21 - R12)).cast<cplx>();
  op.A = (0.5 * (R11 - R22)).cast<cplx>() + cplx(0, 1) * (0.5 * (R21 + R12)).cast<cplx>();
  return op;
}

double op_norm(const RealLinearOp& op) {
  const RVector s = singular_values(realify(op));
  return s.size() == 0 ? 0.0 : s(0);
}

bool LaurentPoly::has_negative_powers() const {
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (min_power + static_cast<int>(k) < 0 && coeffs[k] != cplx{}) return true;
  return false;
}

cplx LaurentPoly::operator()(cplx t) const {
  cplx acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc * std::pow(t, min_power);
}

cplx BiradialFunction::operator()(cplx lambda) const {
  const double t = std::norm(lambda);
  return u(t) + v(t) * lambda;
}

double BiradialFunction::circle_max(double r) const {
  const double t = r * r;
  return std::abs(u(t)) + r * std::abs(v(t));
}

BiradialFunction BiradialFunction::identity() { return {{0, {}}, {0, {1.0}}}; }

BiradialFunction BiradialFunction::from_poly(const BiradialPoly& p) {
  return {{0, p.even_part()}, {0, p.odd_part()}};
}

SpectrumCircles antilinear_spectrum(const CMatrix& A) {
  if (A.rows() != A.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  SpectrumCircles out;
  if (A.rows() == 0) return out;
  const CMatrix P = A * A.conjugate();
  const RVector sv = Eigen::JacobiSVD<CMatrix>(A).singularValues();
  const double thr = 1e-9 * sv(0) * sv(0);

  std::vector<double> radii;
  if (is_symmetric(A)) {
    for (double mu : hermitian_eig(0.5 * (P + P.adjoint())).eigenvalues)
      if (mu >= -thr) radii.push_back(std::sqrt(std::max(mu, 0.0)));
  } else {
    Eigen::ComplexEigenSolver<CMatrix> es(P, false);
    for (const cplx& mu : es.eigenvalues())
      if (std::abs(mu.imag()) <= thr && mu.real() >= -thr) radii.push_back(std::sqrt(std::max(mu.real(), 0.0)));
  }
  std::sort(radii.begin(), radii.end());
  for (double r : radii)
    if (out.radii.empty() || std::abs(r - out.radii.back()) > 1e-9 * std::max(1.0, r)) out.radii.push_back(r);
  return out;
}

BiradialFunction laurent_to_biradial(const LaurentCoeffs& f) {
  // alpha_{2j} -> t^j in u, alpha_{2j+1} -> t^j in v (floor division)
  auto floor_half = [](int k) { return k >= 0 ? k / 2 : -((-k + 1) / 2); };
  int umin = 0, vmin = 0, umax = -1, vmax = -1;
  bool have_u = false, have_v = false;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    const int k = f.min_power + static_cast<int>(i);
    const int j = floor_half(k);
    if (k % 2 == 0) {
      umin = have_u ? std::min(umin, j) : j;
      umax = have_u ? std::max(umax, j) : j;
      have_u = true;
    } else {
      vmin = have_v ? std::min(vmin, j) : j;
      vmax = have_v ? std::max(vmax, j) : j;
      have_v = true;
    }
  }
  BiradialFunction out;
  out.u.min_power = have_u ? umin : 0;
  out.v.min_power = have_v ? vmin : 0;
  out.u.coeffs.assign(have_u ? static_cast<std::size_t>(umax - umin + 1) : 0, cplx{});
  out.v.coeffs.assign(have_v ? static_cast<std::size_t>(vmax - vmin + 1) : 0, cplx{});
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    const int k = f.min_power + static_cast<int>(i);
    const int j = floor_half(k);
    if (k % 2 == 0)
      out.u.coeffs[static_cast<std::size_t>(j - umin)] += f.coeffs[i];
    else
      out.v.coeffs[static_cast<std::size_t>(j - vmin)] += f.coeffs[i];
  }
  return out;
}

RealLinearOp apply_calculus(const CMatrix& G, const BiradialFunction& f) {
  require_symmetric(G);
  CMatrix P = G * G.conjugate();
  P = 0.5 * (P + P.adjoint());
  CMatrix Pinv;
  if (f.u.has_negative_powers() || f.v.has_negative_powers()) Pinv = inverse_or_throw(P, "G conj(G)");
  return {matrix_laurent(f.u, P, &Pinv), matrix_laurent(f.v, P, &Pinv) * G};
}

RealLinearOp apply_laurent(const CMatrix& A, const LaurentCoeffs& f) {
  if (A.rows() != A.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  const Eigen::Index n = A.rows();
  const RealLinearOp step = RealLinearOp::antilinear(A);
  RealLinearOp sum{CMatrix::Zero(n, n), CMatrix::Zero(n, n)};

  const int lo = f.min_power;
  const int hi = f.min_power + static_cast<int>(f.coeffs.size()) - 1;
  auto coeff = [&](int k) { return f.coeffs[static_cast<std::size_t>(k - lo)]; };

  RealLinearOp power = RealLinearOp::identity(n);
  for (int k = 0; k <= hi; ++k) {
    if (k > 0) power = compose(step, power);
    if (k >= lo) sum = add(sum, scale(coeff(k), power));
  }
  if (lo < 0) {
    // (A tau)^{-1} = conj(A)^{-1} tau
    const RealLinearOp inv_step = RealLinearOp::antilinear(inverse_or_throw(A.conjugate(), "conj(A)"));
    power = RealLinearOp::identity(n);
    for (int k = -1; k >= lo; --k) {
      power = compose(inv_step, power);
      if (k <= hi) sum = add(sum, scale(coeff(k), power));
    }
  }
  return sum;
}

double spectrum_residual(const RealLinearOp& op, cplx lambda) {
  const Eigen::Index n = op.size();
  const RealLinearOp shifted{lambda * CMatrix::Identity(n, n) - op.C, -op.A};
  const RVector s = singular_values(realify(shifted));
  if (s.size() == 0) return 0.0;
  const double nrm = op_norm(op);
  const double smin = s(s.size() - 1);
  return nrm > 0.0 ? smin / nrm : smin;
}

bool in_spectrum(const RealLinearOp& op, cplx lambda, double tol) {
  const Eigen::Index n = op.size();
  const RealLinearOp shifted{lambda * CMatrix::Identity(n, n) - op.C, -op.A};
  const RVector s = singular_values(realify(shifted));
  if (s.size() == 0) return false;
  return s(s.size() - 1) <= tol * op_norm(op);
}

SpecmapReport specmap_check(const CMatrix& G, const BiradialFunction& f, std::size_t samples,
                            double converse_distance, std::size_t converse_grid) {
  constexpr double kTol = 1e-6;
  const RealLinearOp F = apply_calculus(G, f);
  const std::vector<double> radii = antilinear_spectrum(G).radii;
  SpecmapReport rep;

  for (double r : radii) {
    for (std::size_t s = 0; s < samples; ++s) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(samples);
      const cplx z = f(std::polar(r, theta));
      const double res = spectrum_residual(F, z);
      ++rep.inclusion_checked;
      rep.max_inclusion_residual = std::max(rep.max_inclusion_residual, res);
      if (!in_spectrum(F, z, kTol)) ++rep.inclusion_violations;
    }
  }

  if (converse_grid == 0 || radii.empty()) return rep;
  // each spectral circle r maps onto the circle |z - u(r^2)| = r |v(r^2)|
  std::vector<std::pair<cplx, double>> images;
  double extent = 0.0;
  for (double r : radii) {
    const double t = r * r;
    images.emplace_back(f.u(t), r * std::abs(f.v(t)));
    extent = std::max(extent, std::abs(images.back().first) + images.back().second);
  }
  const double outer = 1.25 * extent + 1.0;
  rep.min_converse_residual = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= converse_grid; ++i) {
    const double rho = outer * static_cast<double>(i) / static_cast<double>(converse_grid);
    for (std::size_t j = 0; j < converse_grid; ++j) {
      if (i == 0 && j > 0) break;  // the centre is a single point
      const double phi = 0.1 + 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(converse_grid);
      const cplx z = std::polar(rho, phi);
      double dist = std::numeric_limits<double>::infinity();
      for (const auto& [centre, radius] : images) dist = std::min(dist, std::abs(std::abs(z - centre) - radius));
      if (dist < converse_distance) continue;
      ++rep.converse_checked;
      rep.min_converse_residual = std::min(rep.min_converse_residual, spectrum_residual(F, z));
      if (in_spectrum(F, z, kTol)) ++rep.converse_violations;
    }
  }
  if (rep.converse_checked == 0) rep.min_converse_residual = 0.0;
  return rep;
}

NormFormula norm_formula_check(const CMatrix& G, const BiradialFunction& f) {
  NormFormula out;
  out.lhs = op_norm(apply_calculus(G, f));
  for (double r : antilinear_spectrum(G).radii) out.rhs = std::max(out.rhs, f.circle_max(r));
  return out;
}

std::vector<double> gelfand_estimate(const CMatrix& A, std::size_t jmax) {
  if (A.rows() != A.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  const Eigen::Index n = A.rows();
  const CMatrix P = A * A.conjugate();
  // (A tau)^{2k} = P^k,  (A tau)^{2k+1} = P^k A tau; P^k kept as scale * Pk
  CMatrix Pk = CMatrix::Identity(n, n);
  double log_scale = 0.0;
  bool vanished = false;
  std::vector<double> out;
  out.reserve(jmax);
  for (std::size_t j = 1; j <= jmax; ++j) {
    double nrm = 0.0;
    if (!vanished) {
      if (j % 2 == 1) {
        nrm = op_norm(RealLinearOp::antilinear(Pk * A));
      } else {
        Pk = Pk * P;
        const double s = Pk.norm();
        if (s == 0.0) {
          vanished = true;
        } else {
          Pk /= s;
          log_scale += std::log(s);
          nrm = op_norm({Pk, CMatrix::Zero(n, n)});
        }
      }
    }
    out.push_back(nrm > 0.0 ? std::exp((log_scale + std::log(nrm)) / static_cast<double>(j)) : 0.0);
  }
  return out;
}

CMatrix hankel_fixture(const std::vector<cplx>& symbol, std::size_t n) {
  if (n > 0 && symbol.size() < 2 * n - 1) {
    std::ostringstream os;
    os << "size " << n << " needs " << 2 * n - 1 << " symbol entries, got " << symbol.size();
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  const auto en = static_cast<Eigen::Index>(n);
  CMatrix H(en, en);
  for (Eigen::Index i = 0; i < en; ++i)
    for (Eigen::Index j = 0; j < en; ++j) H(i, j) = symbol[static_cast<std::size_t>(i + j)];
  return H;
}

}  // namespace antilinear
