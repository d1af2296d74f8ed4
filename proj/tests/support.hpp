#pragma once

// Random fixtures shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "antilinear/funcalc.hpp"
#include "antilinear/jacobi_params.hpp"
#include "antilinear/measures.hpp"

namespace fixtures {

using antilinear::cplx;
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline cplx gaussian(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  return {re, g(rng)};
}

inline cplx in_disk(Rng& rng, double radius) {
  const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
  return std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

struct MeasureShape {
  std::size_t pairs = 0;
  std::size_t singles = 0;
};

// One radius per circle, drawn from the middle of equal bins of [rmin, rmax].
inline std::vector<double> spread_radii(Rng& rng, std::size_t c, double rmin, double rmax) {
  std::vector<double> radii(c);
  const double w = (rmax - rmin) / static_cast<double>(std::max<std::size_t>(c, 1));
  for (std::size_t k = 0; k < c; ++k) radii[k] = rmin + w * (static_cast<double>(k) + uniform(rng, 0.2, 0.8));
  std::shuffle(radii.begin(), radii.end(), rng);
  return radii;
}

inline antilinear::BiradialMeasure random_measure(Rng& rng, MeasureShape shape, double rmin = 0.3,
                                                  double rmax = 1.5) {
  const std::vector<double> radii = spread_radii(rng, shape.pairs + shape.singles, rmin, rmax);
  antilinear::PlanarAtomicMeasure raw;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double t1 = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    raw.atoms.push_back({std::polar(radii[k], t1), uniform(rng, 0.5, 1.5)});
    if (k < shape.pairs) {
      const double t2 = t1 + uniform(rng, 0.3, 2.0 * std::numbers::pi - 0.3);
      raw.atoms.push_back({std::polar(radii[k], t2), uniform(rng, 0.5, 1.5)});
    }
  }
  double total = raw.total_mass();
  for (auto& a : raw.atoms) a.weight /= total;
  return antilinear::canonicalize(raw);
}

// n atoms split randomly into pairs and singletons.
inline antilinear::BiradialMeasure random_measure(Rng& rng, std::size_t n, double rmin = 0.3, double rmax = 1.5) {
  const std::size_t pairs = pick(rng, 0, n / 2);
  return random_measure(rng, {pairs, n - 2 * pairs}, rmin, rmax);
}

inline antilinear::JacobiParams random_jacobi(Rng& rng, std::size_t n, double alpha_max = 2.0,
                                              double beta_lo = 0.1, double beta_hi = 2.0) {
  antilinear::JacobiParams p;
  for (std::size_t k = 0; k < n; ++k) p.alphas.push_back(in_disk(rng, alpha_max));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double b = uniform(rng, beta_lo, beta_hi);
    if (b <= beta_lo) b = beta_hi;
    p.betas.push_back(b);
  }
  return p;
}

inline antilinear::CMatrix random_matrix(Rng& rng, std::size_t n, double scale = 1.0) {
  const auto en = static_cast<Eigen::Index>(n);
  antilinear::CMatrix M(en, en);
  for (Eigen::Index j = 0; j < en; ++j)
    for (Eigen::Index i = 0; i < en; ++i) M(i, j) = scale * gaussian(rng);
  return M;
}

inline antilinear::CMatrix random_symmetric(Rng& rng, std::size_t n, double scale = 1.0) {
  const antilinear::CMatrix X = random_matrix(rng, n, scale);
  return 0.5 * (X + X.transpose());
}

inline antilinear::CVector random_vector(Rng& rng, std::size_t n) {
  antilinear::CVector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = gaussian(rng);
  return v;
}

inline antilinear::LaurentPoly random_poly(Rng& rng, std::size_t max_degree, double scale = 1.0) {
  antilinear::LaurentPoly p;
  const std::size_t deg = pick(rng, 0, max_degree);
  for (std::size_t k = 0; k <= deg; ++k) p.coeffs.push_back(scale * gaussian(rng));
  return p;
}

inline bool near(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

inline double max_moment_gap(const antilinear::MomentSequence& a, const antilinear::MomentSequence& b,
                             std::size_t K) {
  double gap = 0.0;
  for (std::size_t k = 0; k <= K; ++k) gap = std::max(gap, std::abs(a[k] - b[k]));
  return gap;
}

}  // namespace fixtures
