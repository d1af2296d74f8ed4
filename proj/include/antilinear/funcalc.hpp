#pragma once

// Real-linear operators x -> C x + A conj(x) and the biradial functional
// calculus f(A) = u(A^2) + v(A^2) A for antilinear A = G tau.

#include <cstddef>
#include <vector>

#include "antilinear/birpoly.hpp"
#include "antilinear/core.hpp"

namespace antilinear {

struct RealLinearOp {
  CMatrix C;  // complex-linear part
  CMatrix A;  // antilinear part, acting as A conj(x)

  static RealLinearOp identity(Eigen::Index n);
  static RealLinearOp antilinear(const CMatrix& A);

  Eigen::Index size() const { return C.rows(); }
  CVector apply(const CVector& x) const { return C * x + A * x.conjugate(); }
};

/// (first o second)(x) = first(second(x)).
RealLinearOp compose(const RealLinearOp& first, const RealLinearOp& second);

/// Real 2n x 2n matrix acting on (Re x; Im x).
RMatrix realify(const RealLinearOp& op);

/// Inverse of realify: C = (B - iBi)/2, A = (B + iBi)/2 for the real-linear
/// map B encoded by R.
RealLinearOp separate(const RMatrix& R);

double op_norm(const RealLinearOp& op);

/// Laurent polynomial sum_{k = min_power}^{...} c_k t^k in one variable.
struct LaurentPoly {
  int min_power = 0;
  std::vector<cplx> coeffs;

  bool has_negative_powers() const;
  cplx operator()(cplx t) const;
};

/// Finitely supported Laurent coefficients alpha_k of f(lambda) = sum alpha_k lambda^k.
using LaurentCoeffs = LaurentPoly;

/// lambda -> u(|lambda|^2) + v(|lambda|^2) lambda.
struct BiradialFunction {
  LaurentPoly u;
  LaurentPoly v;

  cplx operator()(cplx lambda) const;
  /// max over |lambda| = r of |f(lambda)|, i.e. |u(r^2)| + r |v(r^2)|.
  double circle_max(double r) const;

  static BiradialFunction identity();
  static BiradialFunction from_poly(const BiradialPoly& p);
};

/// Origin-centred circles making up the spectrum of an antilinear map.
struct SpectrumCircles {
  std::vector<double> radii;
};

/// Radii sqrt(mu) over the real nonnegative eigenvalues mu of A conj(A).
SpectrumCircles antilinear_spectrum(const CMatrix& A);

/// Splits f into its biradial form: even coefficients go to u, odd ones to v.
BiradialFunction laurent_to_biradial(const LaurentCoeffs& f);

/// f(G tau) = u(G conj(G)) + v(G conj(G)) G tau for complex symmetric G.
RealLinearOp apply_calculus(const CMatrix& G, const BiradialFunction& f);

/// sum alpha_k (A tau)^k by composing operator powers directly.
RealLinearOp apply_laurent(const CMatrix& A, const LaurentCoeffs& f);

/// Smallest singular value of realify(lambda I - op) <= tol ||realify(op)||.
bool in_spectrum(const RealLinearOp& op, cplx lambda, double tol);

/// Normalized smallest singular value of realify(lambda I - op).
double spectrum_residual(const RealLinearOp& op, cplx lambda);

struct SpecmapReport {
  std::size_t inclusion_checked = 0;
  std::size_t inclusion_violations = 0;
  double max_inclusion_residual = 0.0;  // worst normalized smallest singular value
  std::size_t converse_checked = 0;
  std::size_t converse_violations = 0;
  double min_converse_residual = 0.0;

  bool ok() const { return inclusion_violations == 0 && converse_violations == 0; }
};

/// Checks f(sigma(G tau)) against sigma(f(G tau)). Inclusion: `samples`
/// angles per spectral circle must land in the spectrum at tolerance 1e-6.
/// Converse: points of a polar grid at distance >= `converse_distance` from
/// f(sigma) must not be in the spectrum.
SpecmapReport specmap_check(const CMatrix& G, const BiradialFunction& f, std::size_t samples,
                            double converse_distance = 0.1, std::size_t converse_grid = 16);

struct NormFormula {
  double lhs = 0.0;  // ||f(A)||
  double rhs = 0.0;  // max over spectral circles of |u(r^2)| + r |v(r^2)|
};

NormFormula norm_formula_check(const CMatrix& G, const BiradialFunction& f);

/// ||(A tau)^j||^{1/j} for j = 1..jmax.
std::vector<double> gelfand_estimate(const CMatrix& A, std::size_t jmax);

/// H_ij = c_{i+j}, needs 2n - 1 symbol entries.
CMatrix hankel_fixture(const std::vector<cplx>& symbol, std::size_t n);

}  // namespace antilinear
