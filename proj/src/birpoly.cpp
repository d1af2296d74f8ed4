#include "antilinear/birpoly.hpp"

#include <algorithm>
#include <cmath>

namespace antilinear {

namespace {

// Horner in t for a coefficient list of powers of t.
cplx horner(std::span<const cplx> c, double t) {
  cplx acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<cplx> conj_coeffs(std::vector<cplx> c) {
  for (auto& z : c) z = std::conj(z);
  return c;
}

// Ordinary polynomial product in t.
std::vector<cplx> convolve(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<cplx> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void accumulate(std::vector<cplx>& into, std::span<const cplx> add, std::size_t shift = 0) {
  if (into.size() < add.size() + shift) into.resize(add.size() + shift);
  for (std::size_t i = 0; i < add.size(); ++i) into[i + shift] += add[i];
}

}  // namespace

BiradialPoly::BiradialPoly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }

BiradialPoly::BiradialPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void BiradialPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

std::vector<cplx> BiradialPoly::even_part() const {
  std::vector<cplx> u;
  for (std::size_t k = 0; k < coeffs_.size(); k += 2) u.push_back(coeffs_[k]);
  return u;
}

std::vector<cplx> BiradialPoly::odd_part() const {
  std::vector<cplx> v;
  for (std::size_t k = 1; k < coeffs_.size(); k += 2) v.push_back(coeffs_[k]);
  return v;
}

BiradialPoly BiradialPoly::from_parts(std::span<const cplx> u, std::span<const cplx> v) {
  std::vector<cplx> c(std::max(2 * u.size(), 2 * v.size()));
  for (std::size_t j = 0; j < u.size(); ++j) c[2 * j] = u[j];
  for (std::size_t j = 0; j < v.size(); ++j) c[2 * j + 1] = v[j];
  return BiradialPoly(std::move(c));
}

BiradialPoly& BiradialPoly::operator+=(const BiradialPoly& other) {
  accumulate(coeffs_, other.coeffs_);
  trim();
  return *this;
}

BiradialPoly& BiradialPoly::operator-=(const BiradialPoly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

BiradialPoly& BiradialPoly::operator*=(cplx scalar) {
  for (auto& c : coeffs_) c *= scalar;
  trim();
  return *this;
}

cplx monomial_eval(unsigned k, cplx lambda) {
  const double t = std::norm(lambda);
  const double radial = std::pow(t, static_cast<double>(k / 2));
  return (k % 2 == 0) ? cplx(radial) : lambda * radial;
}

cplx poly_eval(const BiradialPoly& p, cplx lambda) {
  const double t = std::norm(lambda);
  const auto u = p.even_part();
  const auto v = p.odd_part();
  return horner(u, t) + horner(v, t) * lambda;
}

BiradialPoly conj_shift(const BiradialPoly& p) {
  if (p.is_zero()) return {};
  std::vector<cplx> q(p.coeffs().size() + 1);
  for (std::size_t m = 0; m < p.coeffs().size(); ++m) q[m + 1] = std::conj(p.coeffs()[m]);
  return BiradialPoly(std::move(q));
}

BiradialPoly product(const BiradialPoly& f, const BiradialPoly& g) {
  const auto u1 = f.even_part();
  const auto v1 = f.odd_part();
  const auto u2 = g.even_part();
  const auto v2 = g.odd_part();

  // u = u1 u2 + t v1 conj(v2),  v = u1 v2 + conj(u2) v1
  std::vector<cplx> u = convolve(u1, u2);
  accumulate(u, convolve(v1, conj_coeffs(v2)), 1);
  std::vector<cplx> v = convolve(u1, v2);
  accumulate(v, convolve(conj_coeffs(u2), v1));
  return BiradialPoly::from_parts(u, v);
}

UVPair uv_on_circle(const BiradialPoly& p, double r) {
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be nonnegative");
  const double t = r * r;
  return {horner(p.even_part(), t), horner(p.odd_part(), t)};
}

ZeroStructure zeros_on_circle(const BiradialPoly& p, double r) {
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be nonnegative");
  if (p.is_zero()) return {ZeroStructure::Kind::FullCircle, {}};

  const auto [u, v] = uv_on_circle(p, r);
  double scale = 0.0;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k)
    scale += std::abs(p.coeffs()[k]) * std::pow(r, static_cast<double>(k));
  const double eps = 1e-12 * scale;

  const bool u_zero = std::abs(u) <= eps;
  const bool v_zero = std::abs(v) * std::max(r, 1.0) <= eps;
  if (u_zero && v_zero) return {ZeroStructure::Kind::FullCircle, {}};
  if (v_zero) return {ZeroStructure::Kind::NoZero, {}};

  const cplx root = -u / v;
  if (std::abs(std::abs(root) - r) <= 1e-9 * std::max(1.0, r))
    return {ZeroStructure::Kind::SinglePoint, root};
  return {ZeroStructure::Kind::NoZero, {}};
}

UVPair circle_interpolate(double r, double theta1, double theta2, cplx a, cplx b) {
  const cplx z1 = std::polar(r, theta1);
  const cplx z2 = std::polar(r, theta2);
  const cplx det = z1 - z2;
  if (!(r > 0.0) || std::abs(det) <= 1e-14 * std::max(1.0, r))
    throw Error(ErrorKind::SingularSystem, "interpolation angles coincide on the circle");
  const cplx v = (a - b) / det;
  return {a - v * z1, v};
}

}  // namespace antilinear
