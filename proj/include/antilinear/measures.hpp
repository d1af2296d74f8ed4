#pragma once

// Finite atomic measures on the plane and the biradial measures among them:
// probability measures whose support meets every origin-centred circle in at
// most two points.

#include <cstddef>
#include <span>
#include <vector>

#include "antilinear/birpoly.hpp"
#include "antilinear/core.hpp"
#include "antilinear/moments.hpp"

namespace antilinear {

struct Atom {
  cplx point;
  double weight = 0.0;
};

/// Arbitrary finite positive measure; several atoms may share a circle.
struct PlanarAtomicMeasure {
  std::vector<Atom> atoms;

  double total_mass() const;
};

/// Canonically ordered finite biradial probability measure.
///
/// Layout: `pair_count()` two-point circles first (atoms 2k, 2k+1 share a
/// radius, pair radii strictly increasing), then single-point circles with
/// strictly increasing moduli. Only `canonicalize` constructs instances.
class BiradialMeasure {
 public:
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  std::size_t pair_count() const noexcept { return pairs_; }
  const Atom& operator[](std::size_t k) const { return atoms_.at(k); }

  std::vector<cplx> points() const;
  std::vector<double> weights() const;
  double max_modulus() const;

  PlanarAtomicMeasure as_planar() const { return {atoms_}; }

 private:
  friend BiradialMeasure canonicalize(const PlanarAtomicMeasure& raw);
  std::vector<Atom> atoms_;
  std::size_t pairs_ = 0;
};

/// Mass and first moment of the atoms lying on one origin-centred circle.
struct CircleMass {
  double r = 0.0;
  double mass = 0.0;
  cplx first_moment{};
};

/// Two radii name the same circle when |r1 - r2| <= 1e-9 max(1, r1, r2).
bool same_circle(double r1, double r2);

/// Validates and reorders into canonical form; weights within 1e-6 of unit
/// total mass are renormalized to sum exactly to one.
BiradialMeasure canonicalize(const PlanarAtomicMeasure& raw);

/// L2(rho) inner product <p, q> = sum_k p(lambda_k) conj(q(lambda_k)) rho_k.
cplx inner_product(const BiradialPoly& p, const BiradialPoly& q, const BiradialMeasure& rho);

/// Groups atoms by circle (sorted by radius) and reports per-circle mass and
/// centre-of-mass numerator.
std::vector<CircleMass> circle_masses(const PlanarAtomicMeasure& mu);

/// Symmetric biradial measure with the same moments against every lambda^<k>.
/// The input is normalized to unit mass first.
BiradialMeasure symmetrize(const PlanarAtomicMeasure& mu);

/// Rotates every two-point circle to a new chord through the same centre of
/// mass; `angles[k]` places the first atom of pair k at r e^{i angle}.
/// The result has the same Jacobi parameters as `rho`.
BiradialMeasure equivalent_sample(const BiradialMeasure& rho, std::span<const double> angles);

/// True iff both measures share pair count, singleton atoms, and per pair
/// circle the radius, total mass, and weighted point sum (tolerance 1e-10).
bool are_equivalent(const BiradialMeasure& a, const BiradialMeasure& b);

/// m_0 ... m_K.
MomentSequence measure_moments(const BiradialMeasure& rho, std::size_t K);
MomentSequence measure_moments(const PlanarAtomicMeasure& mu, std::size_t K);

}  // namespace antilinear
