#include "antilinear/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace antilinear {

namespace {

constexpr double kMassSlack = 1e-6;
constexpr double kEquivTol = 1e-10;
constexpr double kMinChordWeight = 1e-12;

// Index groups of atoms sharing a circle, ordered by increasing radius.
// Within a group indices keep their input order.
std::vector<std::vector<std::size_t>> group_by_circle(std::span<const Atom> atoms) {
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(atoms[a].point) < std::abs(atoms[b].point);
  });

  std::vector<std::vector<std::size_t>> groups;
  double anchor = -1.0;
  for (std::size_t idx : order) {
    const double r = std::abs(atoms[idx].point);
    if (groups.empty() || !same_circle(anchor, r)) {
      groups.emplace_back();
      anchor = r;
    }
    groups.back().push_back(idx);
  }
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return groups;
}

void check_weights(std::span<const Atom> atoms) {
  for (const auto& a : atoms) {
    if (!std::isfinite(a.point.real()) || !std::isfinite(a.point.imag()))
      throw Error(ErrorKind::InvalidArgument, "non-finite support point");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      std::ostringstream os;
      os << "weight " << a.weight << " at point " << a.point << " is not positive";
      throw Error(ErrorKind::NonPositiveWeight, os.str());
    }
  }
}

}  // namespace

double PlanarAtomicMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

std::vector<cplx> BiradialMeasure::points() const {
  std::vector<cplx> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.point);
  return out;
}

std::vector<double> BiradialMeasure::weights() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.weight);
  return out;
}

double BiradialMeasure::max_modulus() const {
  double r = 0.0;
  for (const auto& a : atoms_) r = std::max(r, std::abs(a.point));
  return r;
}

bool same_circle(double r1, double r2) {
  return std::abs(r1 - r2) <= 1e-9 * std::max({1.0, r1, r2});
}

BiradialMeasure canonicalize(const PlanarAtomicMeasure& raw) {
  if (raw.atoms.empty()) throw Error(ErrorKind::MassNotNormalizable, "measure has no atoms");
  check_weights(raw.atoms);

  const double total = raw.total_mass();
  if (!(total > 0.0)) throw Error(ErrorKind::MassNotNormalizable, "total mass is not positive");
  if (std::abs(total - 1.0) > kMassSlack) {
    std::ostringstream os;
    os << "total mass " << total << " deviates from 1 by more than " << kMassSlack;
    throw Error(ErrorKind::MassNotNormalizable, os.str());
  }

  const auto groups = group_by_circle(raw.atoms);
  for (const auto& g : groups) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        const cplx a = raw.atoms[g[i]].point;
        const cplx b = raw.atoms[g[j]].point;
        if (std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)})) {
          std::ostringstream os;
          os << "support point " << a << " appears twice";
          throw Error(ErrorKind::DuplicatePoint, os.str());
        }
      }
    }
    if (g.size() > 2) {
      std::ostringstream os;
      os << g.size() << " support points share the circle of radius "
         << std::abs(raw.atoms[g.front()].point);
      throw Error(ErrorKind::ThreeOnCircle, os.str());
    }
  }

  BiradialMeasure out;
  for (const auto& g : groups) {
    if (g.size() != 2) continue;
    for (std::size_t idx : g) out.atoms_.push_back(raw.atoms[idx]);
    ++out.pairs_;
  }
  for (const auto& g : groups)
    if (g.size() == 1) out.atoms_.push_back(raw.atoms[g.front()]);
  for (auto& a : out.atoms_) a.weight /= total;
  return out;
}

cplx inner_product(const BiradialPoly& p, const BiradialPoly& q, const BiradialMeasure& rho) {
  cplx s{};
  for (const auto& a : rho.atoms()) s += poly_eval(p, a.point) * std::conj(poly_eval(q, a.point)) * a.weight;
  return s;
}

std::vector<CircleMass> circle_masses(const PlanarAtomicMeasure& mu) {
  std::vector<CircleMass> out;
  for (const auto& g : group_by_circle(mu.atoms)) {
    CircleMass c;
    double weighted_r = 0.0;
    for (std::size_t idx : g) {
      const Atom& a = mu.atoms[idx];
      c.mass += a.weight;
      c.first_moment += a.weight * a.point;
      weighted_r += a.weight * std::abs(a.point);
    }
    c.r = c.mass > 0.0 ? weighted_r / c.mass : std::abs(mu.atoms[g.front()].point);
    out.push_back(c);
  }
  return out;
}

BiradialMeasure symmetrize(const PlanarAtomicMeasure& mu) {
  if (mu.atoms.empty()) throw Error(ErrorKind::MassNotNormalizable, "measure has no atoms");
  check_weights(mu.atoms);
  const double total = mu.total_mass();

  PlanarAtomicMeasure sym;
  for (const CircleMass& c : circle_masses(mu)) {
    const double mass = c.mass / total;
    const cplx centre = c.first_moment / c.mass;
    const double dist = std::abs(centre);
    if (c.r == 0.0) {
      sym.atoms.push_back({0.0, mass});
    } else if (dist >= c.r * (1.0 - 1e-9)) {
      // all mass at one point of the circle
      sym.atoms.push_back({centre, mass});
    } else if (dist <= 1e-14 * c.r) {
      sym.atoms.push_back({cplx(c.r), 0.5 * mass});
      sym.atoms.push_back({cplx(-c.r), 0.5 * mass});
    } else {
      const cplx dir = centre / dist;
      const double bias = dist / c.r;
      sym.atoms.push_back({c.r * dir, 0.5 * mass * (1.0 + bias)});
      sym.atoms.push_back({-c.r * dir, 0.5 * mass * (1.0 - bias)});
    }
  }
  return canonicalize(sym);
}

BiradialMeasure equivalent_sample(const BiradialMeasure& rho, std::span<const double> angles) {
  if (angles.size() != rho.pair_count()) {
    std::ostringstream os;
    os << "expected " << rho.pair_count() << " angles, got " << angles.size();
    throw Error(ErrorKind::InvalidArgument, os.str());
  }

  PlanarAtomicMeasure out;
  for (std::size_t k = 0; k < rho.pair_count(); ++k) {
    const Atom& a1 = rho[2 * k];
    const Atom& a2 = rho[2 * k + 1];
    const double r = std::abs(a1.point);
    const double mass = a1.weight + a2.weight;
    const cplx centre = (a1.weight * a1.point + a2.weight * a2.point) / mass;

    const cplx p1 = std::polar(r, angles[k]);
    const cplx dir = centre - p1;
    const double dir2 = std::norm(dir);
    if (dir2 <= 1e-24 * std::max(1.0, r * r))
      throw Error(ErrorKind::InvalidAngle, "chord through the centre of mass is undefined");
    // second intersection of p1 + s dir with |z| = r
    const double s = -2.0 * std::real(std::conj(p1) * dir) / dir2;
    const cplx p2 = p1 + s * dir;
    const cplx chord = p1 - p2;
    const double chord2 = std::norm(chord);
    if (chord2 <= 1e-24 * std::max(1.0, r * r))
      throw Error(ErrorKind::InvalidAngle, "chord is tangent to the circle");
    // centre = p2 + t (p1 - p2), t = share of mass on p1
    const double t = std::real(std::conj(chord) * (centre - p2)) / chord2;
    const double w1 = t * mass;
    const double w2 = (1.0 - t) * mass;
    if (w1 < kMinChordWeight || w2 < kMinChordWeight) {
      std::ostringstream os;
      os << "angle " << angles[k] << " yields non-positive weights (" << w1 << ", " << w2 << ")";
      throw Error(ErrorKind::InvalidAngle, os.str());
    }
    out.atoms.push_back({p1, w1});
    out.atoms.push_back({p2, w2});
  }
  for (std::size_t k = 2 * rho.pair_count(); k < rho.size(); ++k) out.atoms.push_back(rho[k]);
  return canonicalize(out);
}

bool are_equivalent(const BiradialMeasure& a, const BiradialMeasure& b) {
  if (a.size() != b.size() || a.pair_count() != b.pair_count()) return false;
  for (std::size_t k = 0; k < a.pair_count(); ++k) {
    const Atom& a1 = a[2 * k];
    const Atom& a2 = a[2 * k + 1];
    const Atom& b1 = b[2 * k];
    const Atom& b2 = b[2 * k + 1];
    const double ra = std::abs(a1.point);
    const double rb = std::abs(b1.point);
    const double scale = std::max(1.0, ra);
    if (std::abs(ra - rb) > kEquivTol * scale) return false;
    if (std::abs((a1.weight + a2.weight) - (b1.weight + b2.weight)) > kEquivTol) return false;
    const cplx wa = a1.weight * a1.point + a2.weight * a2.point;
    const cplx wb = b1.weight * b1.point + b2.weight * b2.point;
    if (std::abs(wa - wb) > kEquivTol * scale) return false;
  }
  for (std::size_t k = 2 * a.pair_count(); k < a.size(); ++k) {
    if (std::abs(a[k].weight - b[k].weight) > kEquivTol) return false;
    if (std::abs(a[k].point - b[k].point) > kEquivTol * std::max(1.0, std::abs(a[k].point)))
      return false;
  }
  return true;
}

MomentSequence measure_moments(const BiradialMeasure& rho, std::size_t K) {
  return measure_moments(rho.as_planar(), K);
}

MomentSequence measure_moments(const PlanarAtomicMeasure& mu, std::size_t K) {
  const double total = mu.total_mass();
  MomentSequence out;
  out.m.assign(K + 1, cplx{});
  for (const auto& a : mu.atoms) {
    const double w = a.weight / total;
    const double t = std::norm(a.point);
    double radial = 1.0;  // |lambda|^{2j}
    for (std::size_t k = 0; k <= K; ++k) {
      if (k % 2 == 0) {
        out.m[k] += w * radial;
      } else {
        out.m[k] += w * a.point * radial;
        radial *= t;
      }
    }
  }
  out.m[0] = 1.0;
  return out;
}

}  // namespace antilinear
