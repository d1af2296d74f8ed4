#include <doctest.h>

#include <cmath>
#include <numbers>

#include "antilinear/measures.hpp"
#include "support.hpp"

using namespace antilinear;
using fixtures::near;

namespace {

const cplx I{0.0, 1.0};
const double pi = std::numbers::pi;

BiradialMeasure pm_one() { return canonicalize({{{1.0, 0.5}, {-1.0, 0.5}}}); }

ErrorKind kind_of(const PlanarAtomicMeasure& raw) {
  try {
    canonicalize(raw);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("canonicalize orders pairs before singletons") {
  const BiradialMeasure rho = canonicalize({{{1.0, 0.25}, {2.0, 0.5}, {-2.0, 0.25}}});
  REQUIRE(rho.size() == 3);
  CHECK(rho.pair_count() == 1);
  CHECK(near(rho[0].point, 2.0));
  CHECK(rho[0].weight == doctest::Approx(0.5));
  CHECK(near(rho[1].point, -2.0));
  CHECK(near(rho[2].point, 1.0));

  const BiradialMeasure pm = pm_one();
  CHECK(pm.pair_count() == 1);
  CHECK(near(pm[0].point, 1.0));

  // pair radii increasing, then singleton radii increasing
  const BiradialMeasure mixed =
      canonicalize({{{3.0, 0.1}, {0.5, 0.1}, {2.0 * I, 0.2}, {-2.0, 0.2}, {0.3 * I, 0.2}, {-0.3, 0.2}}});
  CHECK(mixed.pair_count() == 2);
  CHECK(std::abs(mixed[0].point) == doctest::Approx(0.3));
  CHECK(std::abs(mixed[2].point) == doctest::Approx(2.0));
  CHECK(std::abs(mixed[4].point) == doctest::Approx(0.5));
  CHECK(std::abs(mixed[5].point) == doctest::Approx(3.0));
}

TEST_CASE("canonicalize rejects invalid measures") {
  const double third = 1.0 / 3.0;
  CHECK(kind_of({{{1.0, third}, {I, third}, {-1.0, third}}}) == ErrorKind::ThreeOnCircle);
  CHECK(kind_of({{{1.0, 0.5}, {1.0, 0.5}}}) == ErrorKind::DuplicatePoint);
  CHECK(kind_of({{{1.0, 1.5}, {2.0, -0.5}}}) == ErrorKind::NonPositiveWeight);
  CHECK(kind_of({{{1.0, 0.0}, {2.0, 1.0}}}) == ErrorKind::NonPositiveWeight);
  CHECK(kind_of({{}}) == ErrorKind::MassNotNormalizable);
  CHECK(kind_of({{{1.0, 0.5}, {2.0, 0.6}}}) == ErrorKind::MassNotNormalizable);
}

TEST_CASE("canonicalize renormalizes a slightly off total mass") {
  const BiradialMeasure rho = canonicalize({{{1.0, 0.5 + 2e-7}, {2.0, 0.5}}});
  CHECK(rho[0].weight + rho[1].weight == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("same_circle") {
  CHECK(same_circle(1.0, 1.0 + 5e-10));
  CHECK_FALSE(same_circle(1.0, 1.0 + 5e-9));
  CHECK(same_circle(1000.0, 1000.0 + 5e-7));
}

TEST_CASE("inner_product") {
  const BiradialMeasure pm = pm_one();
  const BiradialPoly one{1.0}, lambda{0.0, 1.0};
  CHECK(near(inner_product(one, one, pm), 1.0));
  CHECK(near(inner_product(lambda, one, pm), 0.0));
  CHECK(near(inner_product(lambda, lambda, pm), 1.0));

  fixtures::Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const BiradialMeasure rho = fixtures::random_measure(rng, fixtures::pick(rng, 1, 10));
    std::vector<cplx> pc(4), qc(3);
    for (auto& c : pc) c = fixtures::gaussian(rng);
    for (auto& c : qc) c = fixtures::gaussian(rng);
    const BiradialPoly p(pc), q(qc);
    cplx want{};
    for (const Atom& a : rho.atoms()) {
      cplx pv{}, qv{};
      for (std::size_t k = 0; k < pc.size(); ++k) pv += pc[k] * monomial_eval(static_cast<unsigned>(k), a.point);
      for (std::size_t k = 0; k < qc.size(); ++k) qv += qc[k] * monomial_eval(static_cast<unsigned>(k), a.point);
      want += a.weight * pv * std::conj(qv);
    }
    CHECK(near(inner_product(p, q, rho), want, 1e-12 * (1.0 + std::abs(want))));
    CHECK(near(inner_product(q, p, rho), std::conj(want), 1e-12 * (1.0 + std::abs(want))));
  }
}

TEST_CASE("circle_masses") {
  auto c = circle_masses({{{1.0, 0.5}, {-1.0, 0.5}}});
  REQUIRE(c.size() == 1);
  CHECK(c[0].r == doctest::Approx(1.0));
  CHECK(c[0].mass == doctest::Approx(1.0));
  CHECK(near(c[0].first_moment, 0.0));

  c = circle_masses({{{2.0 * I, 1.0}}});
  REQUIRE(c.size() == 1);
  CHECK(c[0].r == doctest::Approx(2.0));
  CHECK(near(c[0].first_moment, 2.0 * I));

  const double third = 1.0 / 3.0;
  c = circle_masses({{{1.0, third}, {std::polar(1.0, 2 * pi / 3), third}, {std::polar(1.0, 4 * pi / 3), third}}});
  REQUIRE(c.size() == 1);
  CHECK(c[0].mass == doctest::Approx(1.0));
  CHECK(near(c[0].first_moment, 0.0, 1e-15));

  c = circle_masses({{{3.0, 0.2}, {1.0, 0.3}, {-1.0, 0.5}}});
  REQUIRE(c.size() == 2);
  CHECK(c[0].r == doctest::Approx(1.0));
  CHECK(c[1].r == doctest::Approx(3.0));
}

TEST_CASE("symmetrize") {
  const double third = 1.0 / 3.0;
  BiradialMeasure s =
      symmetrize({{{1.0, third}, {std::polar(1.0, 2 * pi / 3), third}, {std::polar(1.0, 4 * pi / 3), third}}});
  REQUIRE(s.size() == 2);
  CHECK(std::abs(s[0].point) == doctest::Approx(1.0));
  CHECK(near(s[0].point, -s[1].point, 1e-15));
  CHECK(s[0].weight == doctest::Approx(0.5));
  CHECK(s[1].weight == doctest::Approx(0.5));

  s = symmetrize({{{2.0 * I, 1.0}}});
  REQUIRE(s.size() == 1);
  CHECK(near(s[0].point, 2.0 * I));

  s = symmetrize({{{1.0, 0.75}, {-1.0, 0.25}}});
  REQUIRE(s.size() == 2);
  CHECK(near(s[0].point, 1.0));
  CHECK(s[0].weight == doctest::Approx(0.75));
  CHECK(near(s[1].point, -1.0));
  CHECK(s[1].weight == doctest::Approx(0.25));
}

TEST_CASE("symmetrize preserves moments of arbitrary atomic measures") {
  fixtures::Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    // several atoms per circle
    PlanarAtomicMeasure mu;
    const std::size_t circles = fixtures::pick(rng, 1, 6);
    for (std::size_t c = 0; c < circles; ++c) {
      const double r = 0.2 + 0.25 * static_cast<double>(c) + fixtures::uniform(rng, 0.0, 0.1);
      const std::size_t atoms = fixtures::pick(rng, 1, 5);
      for (std::size_t a = 0; a < atoms; ++a)
        mu.atoms.push_back({std::polar(r, fixtures::uniform(rng, 0.0, 2 * pi)), fixtures::uniform(rng, 0.1, 1.0)});
    }
    const BiradialMeasure s = symmetrize(mu);
    CHECK(fixtures::max_moment_gap(measure_moments(mu, 20), measure_moments(s, 20), 20) < 1e-10);
    for (std::size_t k = 0; k < s.pair_count(); ++k) CHECK(near(s[2 * k].point, -s[2 * k + 1].point, 1e-12));
  }
}

TEST_CASE("equivalent_sample") {
  const BiradialMeasure pm = pm_one();
  const double t = 0.8;
  BiradialMeasure e = equivalent_sample(pm, std::vector<double>{t});
  REQUIRE(e.size() == 2);
  CHECK(near(e[0].point, std::polar(1.0, t), 1e-14));
  CHECK(near(e[1].point, -std::polar(1.0, t), 1e-14));
  CHECK(e[0].weight == doctest::Approx(0.5));

  const BiradialMeasure rho = canonicalize({{{2.0, 0.5}, {-2.0, 0.25}, {1.0, 0.25}}});
  e = equivalent_sample(rho, std::vector<double>{0.0});
  for (std::size_t k = 0; k < rho.size(); ++k) {
    CHECK(near(e[k].point, rho[k].point, 1e-14));
    CHECK(e[k].weight == doctest::Approx(rho[k].weight));
  }

  const BiradialMeasure singles = canonicalize({{{1.0, 0.5}, {2.0, 0.5}}});
  e = equivalent_sample(singles, {});
  CHECK(near(e[0].point, 1.0));
  CHECK(near(e[1].point, 2.0));

  CHECK_THROWS_AS(equivalent_sample(rho, std::vector<double>{}), Error);
}

TEST_CASE("equivalent_sample rejects a chord with a vanishing weight") {
  const BiradialMeasure rho = canonicalize({{{1.0, 1.0 - 1e-14}, {-1.0, 1e-14}}});
  try {
    equivalent_sample(rho, std::vector<double>{pi});
    FAIL("no error raised");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidAngle);
  }
}

TEST_CASE("are_equivalent") {
  const BiradialMeasure pm = pm_one();
  CHECK(are_equivalent(pm, canonicalize({{{I, 0.5}, {-I, 0.5}}})));
  CHECK_FALSE(are_equivalent(pm, canonicalize({{{1.0, 0.75}, {-1.0, 0.25}}})));
  CHECK(are_equivalent(pm, pm));

  fixtures::Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    const BiradialMeasure rho = fixtures::random_measure(rng, fixtures::pick(rng, 1, 9));
    std::vector<double> angles(rho.pair_count());
    for (auto& a : angles) a = fixtures::uniform(rng, 0.0, 2 * pi);
    CHECK(are_equivalent(rho, equivalent_sample(rho, angles)));
  }
}

TEST_CASE("measure_moments") {
  MomentSequence m = measure_moments(pm_one(), 4);
  REQUIRE(m.size() == 5);
  const cplx want[] = {1.0, 0.0, 1.0, 0.0, 1.0};
  for (std::size_t k = 0; k < 5; ++k) CHECK(near(m[k], want[k]));

  m = measure_moments(canonicalize({{{2.0 * I, 1.0}}}), 2);
  CHECK(near(m[0], 1.0));
  CHECK(near(m[1], 2.0 * I));
  CHECK(near(m[2], 4.0));

  CHECK(measure_moments(pm_one(), 0).size() == 1);
  CHECK(m.is_normalized());

  fixtures::Rng rng(14);
  const BiradialMeasure rho = fixtures::random_measure(rng, 7);
  m = measure_moments(rho, 9);
  for (unsigned k = 0; k <= 9; ++k) {
    cplx s{};
    for (const Atom& a : rho.atoms()) s += a.weight * monomial_eval(k, a.point);
    CHECK(near(m[k], s, 1e-13 * std::max(1.0, std::pow(rho.max_modulus(), k))));
  }
}
