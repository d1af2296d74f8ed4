#pragma once

// Polynomials in the antilinear monomials
//
//   lambda^<2j>   = |lambda|^{2j}
//   lambda^<2j+1> = lambda |lambda|^{2j}
//
// i.e. functions u(|lambda|^2) + v(|lambda|^2) lambda with polynomial u, v.
// Coefficient k multiplies lambda^<k>; even coefficients form u, odd ones v.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "antilinear/core.hpp"

namespace antilinear {

class BiradialPoly {
 public:
  BiradialPoly() = default;
  BiradialPoly(std::initializer_list<cplx> coeffs);
  explicit BiradialPoly(std::vector<cplx> coeffs);

  /// Index of the last nonzero coefficient; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of lambda^<k>, zero past the degree.
  cplx operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : cplx{};
  }

  /// Even part as coefficients of t^j (u(t)) and odd part (v(t)).
  std::vector<cplx> even_part() const;
  std::vector<cplx> odd_part() const;
  static BiradialPoly from_parts(std::span<const cplx> u, std::span<const cplx> v);

  BiradialPoly& operator+=(const BiradialPoly& other);
  BiradialPoly& operator-=(const BiradialPoly& other);
  BiradialPoly& operator*=(cplx scalar);

  friend BiradialPoly operator+(BiradialPoly a, const BiradialPoly& b) { return a += b; }
  friend BiradialPoly operator-(BiradialPoly a, const BiradialPoly& b) { return a -= b; }
  friend BiradialPoly operator*(cplx s, BiradialPoly p) { return p *= s; }
  friend BiradialPoly operator*(BiradialPoly p, cplx s) { return p *= s; }

  friend bool operator==(const BiradialPoly&, const BiradialPoly&) = default;

 private:
  void trim();

  std::vector<cplx> coeffs_;
};

struct UVPair {
  cplx u_val;
  cplx v_val;
};

struct ZeroStructure {
  enum class Kind { NoZero, SinglePoint, FullCircle };
  Kind kind = Kind::NoZero;
  cplx point{};  // meaningful for SinglePoint only
};

/// lambda^<k>.
cplx monomial_eval(unsigned k, cplx lambda);

cplx poly_eval(const BiradialPoly& p, cplx lambda);

/// The polynomial lambda * conj(p(lambda)): multiplication by lambda tau.
BiradialPoly conj_shift(const BiradialPoly& p);

/// Product matching composition f(A) g(A) on eigenvectors of an antilinear A:
/// (u1 + v1 lambda tau)(u2 + v2 lambda).
BiradialPoly product(const BiradialPoly& f, const BiradialPoly& g);

UVPair uv_on_circle(const BiradialPoly& p, double r);

/// Zero set of p on the circle |lambda| = r. A nonzero polynomial vanishes at
/// either no point, exactly one point, or every point of a circle.
ZeroStructure zeros_on_circle(const BiradialPoly& p, double r);

/// Solves u + v r e^{i theta1} = a, u + v r e^{i theta2} = b.
UVPair circle_interpolate(double r, double theta1, double theta2, cplx a, cplx b);

}  // namespace antilinear
