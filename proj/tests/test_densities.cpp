#include <catch_amalgamated.hpp>

#include "invmetric/invmetric.hpp"
#include "oracles.hpp"

using namespace invmetric;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("poincare density examples") {
  CHECK(poincare_density(0.0, TangentVector(1.0)) == 1.0);
  CHECK_THAT(poincare_density(0.5, TangentVector(1.0)), WithinAbs(4.0 / 3.0, 1e-15));
  for (int k = 0; k < 12; ++k)
    CHECK_THAT(poincare_density({0.2, 0.3}, TangentVector(std::polar(1.0, kTwoPi * k / 12))),
               WithinAbs(poincare_density({0.2, 0.3}, TangentVector(1.0)), 1e-15));
  CHECK_THROWS_AS(poincare_density(1.0, TangentVector(1.0)), PreconditionError);
}

TEST_CASE("pseudohyperbolic examples") {
  const Complex a(0.3, -0.2), b(-0.6, 0.1);
  CHECK(pseudohyperbolic(a, a) == 0.0);
  CHECK_THAT(pseudohyperbolic(0.0, b), WithinAbs(std::abs(b), 1e-16));
  CHECK(pseudohyperbolic(a, b) == pseudohyperbolic(b, a));
  Rng rng(22);
  for (int k = 0; k < 200; ++k) {
    const MobiusTransform m = random_mobius(rng);
    const Complex z = rng.in_disc(0.95), w = rng.in_disc(0.95);
    CHECK_THAT(pseudohyperbolic(m(z), m(w)), WithinAbs(pseudohyperbolic(z, w), 1e-12));
    CHECK(pseudohyperbolic(z, w) < 1.0);
  }
}

TEST_CASE("quasihyperbolic density examples") {
  CHECK(quasihyperbolic_density(Domain::unit_disc(), 0.0, TangentVector(1.0)) == 1.0);
  CHECK_THAT(quasihyperbolic_density(Domain::unit_disc(), 0.9, TangentVector(1.0)), WithinRel(10.0, 1e-14));
  CHECK_THAT(quasihyperbolic_density(Domain::annulus(0.2), 0.5, TangentVector(1.0)), WithinRel(1.0 / 0.3, 1e-14));
}

TEST_CASE("kobayashi density examples") {
  const Domain disc = Domain::unit_disc();
  const DensityBound b = kobayashi_density(disc, 0.5, TangentVector(1.0));
  CHECK(b.exact);
  CHECK_THAT(b.upper, WithinAbs(4.0 / 3.0, 1e-15));
  CHECK(b.lower == b.upper);
  for (int k = 0; k < 8; ++k)
    CHECK_THAT(kobayashi_density(disc, 0.0, TangentVector(std::polar(1.0, k * 0.7))).upper, WithinAbs(1.0, 1e-15));

  const Domain ann = Domain::annulus(0.2);
  CHECK_THAT(kobayashi_density(ann, -0.5, TangentVector(1.0)).upper,
             WithinRel(kobayashi_density(ann, 0.5, TangentVector(1.0)).upper, 1e-14));
  CHECK(kobayashi_density(disc, 0.3, TangentVector(0.0)).upper == 0.0);
}

TEST_CASE("annulus density agrees with the covering-map oracle") {
  const Domain ann = Domain::annulus(0.2);
  Rng rng(23);
  for (int k = 0; k < 40; ++k) {
    const Complex z = std::polar(rng.uniform(0.22, 0.98), rng.uniform(0.0, kTwoPi));
    const DensityBound b = kobayashi_density(ann, z, TangentVector(1.0));
    CHECK(b.exact);
    CHECK_THAT(b.upper, WithinRel(oracle::annulus_density_via_cover(0.2, z), 1e-6));
    const AnalyticDiscFamily family = analytic_disc_family(ann, z);
    CHECK_THAT(kobayashi_upper_from_family(family, z, TangentVector(1.0)), WithinRel(b.upper, 1e-9));
  }
}

TEST_CASE("half-plane density") {
  const Domain h = Domain::upper_half_plane();
  Rng rng(24);
  for (int k = 0; k < 50; ++k) {
    const Complex z(rng.uniform(-3.0, 3.0), rng.uniform(0.05, 3.0));
    // |dz|/(2 Im z) in the normalization where the disc density is 1/(1 − |w|²)
    CHECK_THAT(kobayashi_density(h, z, TangentVector(1.0)).upper, WithinRel(0.5 / z.imag(), 1e-12));
  }
}

TEST_CASE("caratheodory density examples") {
  const Domain disc = Domain::unit_disc();
  const DensityBound b = caratheodory_density(disc, 0.5, TangentVector(1.0));
  CHECK(b.exact);
  CHECK_THAT(b.upper, WithinAbs(4.0 / 3.0, 1e-15));

  const DiscValuedFamily coord{{HolomorphicMap::identity()}};
  CHECK_THAT(caratheodory_lower_from_family(coord, 0.0, TangentVector(1.0)), WithinAbs(1.0, 1e-15));

  const Domain ann = Domain::annulus(0.2);
  const DensityBound c = caratheodory_density(ann, 0.5, TangentVector(1.0));
  CHECK(c.lower <= kobayashi_density(ann, 0.5, TangentVector(1.0)).upper + 1e-9);
  CHECK(c.lower > 0.0);
  CHECK_THROWS_AS(caratheodory_density(ann, 0.5, TangentVector(1.0), CandidateFamily(DiscValuedFamily{})),
                  PreconditionError);
}

TEST_CASE("majorization on every domain") {
  Rng rng(25);
  const std::vector<Domain> domains{Domain::unit_disc(), Domain::upper_half_plane(), Domain::annulus(0.2),
                                    Domain::annulus(0.5), Domain::ellipse(2.0, 1.0)};
  for (const Domain& d : domains) {
    int checked = 0;
    while (checked < 40) {
      const Complex z(rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 2.0));
      if (!d.contains(z)) continue;
      ++checked;
      const TangentVector xi(std::polar(1.0, rng.uniform(0.0, kTwoPi)));
      const double car = caratheodory_density(d, z, xi).lower;
      const DensityBound kob = kobayashi_density(d, z, xi);
      CHECK(car <= kob.upper + 1e-9);
      CHECK(kob.lower <= kob.upper);
      if (d.is_disc() || d.is_half_plane()) CHECK_THAT(car, WithinRel(kob.upper, 1e-12));
    }
  }
}

TEST_CASE("monotonicity under inclusion of a subdisc") {
  // D(0, s) ⊂ D: its density s|ξ|/(s² − |z|²) dominates the disc's.
  Rng rng(26);
  for (int k = 0; k < 200; ++k) {
    const double s = rng.uniform(0.2, 1.0);
    const Complex z = rng.in_disc(0.99 * s);
    const HolomorphicMap scale = AffineMap{Complex(s), Complex(0.0)};
    const AnalyticDiscFamily sub{{{scale, z / s}}};
    const double sub_density = kobayashi_upper_from_family(sub, z, TangentVector(1.0));
    CHECK_THAT(sub_density, WithinRel(s / (s * s - std::norm(z)), 1e-12));
    CHECK(sub_density >= kobayashi_density(Domain::unit_disc(), z, TangentVector(1.0)).upper - 1e-12);
  }
}

TEST_CASE("conformal invariance, homogeneity and contraction on the disc") {
  const Domain disc = Domain::unit_disc();
  Rng rng(27);
  for (int k = 0; k < 500; ++k) {
    const MobiusTransform m = random_mobius(rng);
    const Complex z = rng.in_disc(0.9);
    const TangentVector xi(rng.in_disc(2.0));
    const double base = kobayashi_density(disc, z, xi).upper;
    CHECK_THAT(kobayashi_density(disc, m(z), xi.scaled(m.derivative(z))).upper, WithinRel(base, 1e-12));

    const Complex c = rng.in_disc(3.0);
    CHECK_THAT(kobayashi_density(disc, z, xi.scaled(c)).upper, WithinRel(std::abs(c) * base, 1e-14));

    const HolomorphicMap f = random_blaschke(rng, true);
    const Jet j = f.jet(z);
    CHECK(kobayashi_density(disc, j.value, xi.scaled(j.derivative)).upper <= base + 1e-12);
  }
}

TEST_CASE("smooth domain bracket scales with the vector") {
  const Domain ellipse = Domain::ellipse(2.0, 1.0);
  const DensityBound one = kobayashi_density(ellipse, {1.0, 0.3}, TangentVector(1.0));
  const DensityBound three = kobayashi_density(ellipse, {1.0, 0.3}, TangentVector(0.0, 3.0));
  CHECK_FALSE(one.exact);
  CHECK_THAT(three.lower, WithinRel(3.0 * one.lower, 1e-14));
  CHECK_THAT(three.upper, WithinRel(3.0 * one.upper, 1e-14));
  CHECK(one.lower > 0.0);
  CHECK(one.upper <= 1.0 / ellipse.boundary_distance({1.0, 0.3}) + 1e-12);
}

TEST_CASE("smooth domain bracket near the boundary") {
  const Domain ellipse = Domain::ellipse(2.0, 1.0);
  const ComparisonConstants cc = boundary_comparison_constants(ellipse, 0.1);
  CHECK(cc.lower > 0.0);
  CHECK(cc.lower <= cc.upper);
  for (int k = 0; k < 64; ++k) {
    const Complex p = ellipse.project(std::polar(3.0, kTwoPi * k / 64)).point;
    const Complex inward = ellipse.normals(p).inward;
    for (double d : {0.09, 0.03, 0.01, 1e-3, 1e-4}) {
      const Complex z = p + d * inward;
      const DensityBound b = kobayashi_density(ellipse, z, TangentVector(1.0));
      const double delta = ellipse.boundary_distance(z);
      CHECK(b.lower <= b.upper);
      CHECK(b.lower * delta >= cc.lower - 1e-9);
      CHECK(b.upper * delta <= cc.upper + 1e-9);
    }
  }
}

TEST_CASE("schwarz-pick gap examples") {
  Rng rng(28);
  for (int k = 0; k < 20; ++k)
    CHECK_THAT(schwarz_pick_gap(random_mobius(rng), rng.in_disc(0.9)), WithinAbs(0.0, 1e-12));
  const HolomorphicMap square = Polynomial{{0.0, 0.0, 1.0}};
  CHECK_THAT(schwarz_pick_gap(square, 0.5), WithinAbs(0.25, 1e-15));
  CHECK_THAT(schwarz_pick_gap(square, 0.0), WithinAbs(1.0, 1e-15));
  CHECK_THROWS_AS(schwarz_pick_gap(Polynomial{{0.0, 2.0}}, 0.1), PreconditionError);
}

TEST_CASE("densities reject exterior points") {
  CHECK_THROWS_AS(kobayashi_density(Domain::annulus(0.2), 0.1, TangentVector(1.0)), PreconditionError);
  CHECK_THROWS_AS(kobayashi_density(Domain::ellipse(2.0, 1.0), 2.5, TangentVector(1.0)), PreconditionError);
  CHECK_THROWS_AS(quasihyperbolic_density(Domain::ellipse(2.0, 1.0), 2.5, TangentVector(1.0)), PreconditionError);
}
