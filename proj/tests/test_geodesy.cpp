#include <catch_amalgamated.hpp>

#include "invmetric/invmetric.hpp"
#include "oracles.hpp"

using namespace invmetric;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Excess of the broken path z → v → w over the direct distance; zero exactly on the geodesic.
double geodesic_excess(Complex z, Complex v, Complex w) {
  return oracle::disc_distance(z, v) + oracle::disc_distance(v, w) - oracle::disc_distance(z, w);
}

}  // namespace

TEST_CASE("curve length examples") {
  const Domain disc = Domain::unit_disc();
  const LengthBound half = curve_length(disc, MetricKind::kPoincare, Curve::line(0.0, 0.5));
  CHECK(half.exact);
  CHECK_THAT(half.upper, WithinAbs(oracle::radial_length(0.5), 1e-9));
  CHECK_THAT(half.upper, WithinAbs(0.5493061443, 1e-10));
  CHECK_THAT(curve_length(disc, MetricKind::kPoincare, Curve::line(0.0, 0.9)).upper, WithinAbs(1.4722194896, 1e-9));
  for (MetricKind m : {MetricKind::kKobayashi, MetricKind::kCaratheodory, MetricKind::kQuasihyperbolic})
    CHECK(curve_length(disc, m, Curve::point({0.2, 0.1})).upper == 0.0);
  CHECK(curve_length(Domain::ellipse(2.0, 1.0), MetricKind::kKobayashi, Curve::point(0.5)).upper == 0.0);
}

TEST_CASE("curve length of a curved path") {
  // Circle |z| = 0.5 has Poincaré length 2π·0.5/(1 − 0.25).
  const Curve circle = Curve::sampled([](double t) { return std::polar(0.5, kTwoPi * t); },
                                      [](double t) { return Complex(0, kTwoPi) * std::polar(0.5, kTwoPi * t); }, 256);
  CHECK_THAT(curve_length(Domain::unit_disc(), MetricKind::kPoincare, circle).upper,
             WithinRel(kTwoPi * 0.5 / 0.75, 1e-7));
}

TEST_CASE("curve length rejects curves leaving the domain") {
  CHECK_THROWS_AS(curve_length(Domain::unit_disc(), MetricKind::kKobayashi, Curve::line(0.0, 1.5)),
                  PreconditionError);
  CHECK_THROWS_AS(curve_length(Domain::annulus(0.2), MetricKind::kKobayashi, Curve::line(-0.5, 0.5)),
                  PreconditionError);
  CHECK_THROWS_AS(Curve::polyline({}), PreconditionError);
  CHECK_THROWS_AS(Curve({CurveSegment{{{0.0, 0.0, 1.0}, {0.5, 0.5, 1.0}}}}), PreconditionError);
}

TEST_CASE("bracketed lengths on a smooth domain") {
  const Domain ellipse = Domain::ellipse(2.0, 1.0);
  const LengthBound b = curve_length(ellipse, MetricKind::kKobayashi, Curve::line({-1.0, 0.2}, {1.2, -0.3}));
  CHECK_FALSE(b.exact);
  CHECK(b.lower > 0.0);
  CHECK(b.lower <= b.upper);
}

TEST_CASE("closed-form distance examples") {
  const Domain disc = Domain::unit_disc();
  CHECK_THAT(distance(disc, MetricKind::kKobayashi, 0.0, 0.5).value, WithinAbs(0.5493061443, 1e-10));
  const DistanceResult same = distance(disc, MetricKind::kKobayashi, {0.1, 0.2}, {0.1, 0.2});
  CHECK(same.value == 0.0);
  CHECK(same.lower == same.upper);

  const double rho = 0.6 / 1.09;
  const double expected = 0.5 * std::log((1 + rho) / (1 - rho));
  const DistanceResult r = distance(disc, MetricKind::kKobayashi, 0.3, -0.3);
  CHECK(r.method == DistanceMethod::kClosedForm);
  CHECK_THAT(r.value, WithinAbs(expected, 1e-14));
  CHECK(r.lower == r.upper);

  DistanceOptions grid;
  grid.force_grid = true;
  const DistanceResult g = distance(disc, MetricKind::kKobayashi, 0.3, -0.3, grid);
  CHECK(g.method == DistanceMethod::kGridRefine);
  CHECK_THAT(g.grid_value, WithinRel(expected, 0.02));
  CHECK_THAT(g.value, WithinAbs(expected, 1e-3));
  CHECK(g.lower <= g.value);
  CHECK(g.value <= g.upper);
}

TEST_CASE("half-plane distance goes through the Cayley map") {
  const Domain h = Domain::upper_half_plane();
  Rng rng(41);
  for (int k = 0; k < 50; ++k) {
    const Complex z(rng.uniform(-2, 2), rng.uniform(0.1, 2)), w(rng.uniform(-2, 2), rng.uniform(0.1, 2));
    CHECK_THAT(distance(h, MetricKind::kKobayashi, z, w).value,
               WithinAbs(oracle::half_plane_distance(z, w), 1e-12 * std::max(1.0, oracle::half_plane_distance(z, w))));
  }
  // the witness stays on the geodesic: integrating along it reproduces the distance
  const DistanceResult r = distance(h, MetricKind::kKobayashi, {-1.0, 0.5}, {1.0, 1.5});
  CHECK_THAT(curve_length(h, MetricKind::kKobayashi, r.path).upper, WithinRel(r.value, 1e-3));
}

TEST_CASE("disc distance invariants") {
  Rng rng(42);
  for (int k = 0; k < 1000; ++k) {
    const Complex a = rng.in_disc(0.95), b = rng.in_disc(0.95), c = rng.in_disc(0.95);
    CHECK_THAT(disc_distance(a, b), WithinAbs(oracle::disc_distance(a, b), 1e-12));
    CHECK(disc_distance(a, c) <= disc_distance(a, b) + disc_distance(b, c) + 1e-12);
    const MobiusTransform m = random_mobius(rng);
    CHECK_THAT(disc_distance(m(a), m(b)), WithinAbs(disc_distance(a, b), 1e-12 * std::max(1.0, disc_distance(a, b))));
    const HolomorphicMap f = random_blaschke(rng, true);
    CHECK(disc_distance(f(a), f(b)) <= disc_distance(a, b) + 1e-9);
    CHECK(disc_distance(a, b) == disc_distance(b, a));
  }
}

TEST_CASE("geodesic witnesses on the disc") {
  const Domain disc = Domain::unit_disc();
  for (Complex v : geodesic_witness(disc, MetricKind::kKobayashi, 0.0, 0.5).vertices()) CHECK(std::abs(v.imag()) < 1e-15);

  Rng rng(43);
  for (int k = 0; k < 20; ++k) {
    const Complex z = rng.in_disc(0.9), w = rng.in_disc(0.9);
    for (Complex v : geodesic_witness(disc, MetricKind::kKobayashi, z, w).vertices())
      CHECK(geodesic_excess(z, v, w) < 1e-9);
  }
  const Curve point = geodesic_witness(disc, MetricKind::kKobayashi, 0.4, 0.4);
  CHECK(curve_length(disc, MetricKind::kKobayashi, point).upper == 0.0);

  DistanceOptions grid;
  grid.force_grid = true;
  const Curve refined = geodesic_witness(disc, MetricKind::kKobayashi, 0.0, 0.9, grid);
  for (Complex v : refined.vertices()) CHECK(std::abs(v.imag()) < 1e-2);
}

TEST_CASE("annulus distance matches the lifted oracle") {
  const Domain ann = Domain::annulus(0.2);
  const double m = std::sqrt(0.2);
  const double expected = oracle::annulus_distance(0.2, m, -m);
  CHECK_THAT(expected, WithinAbs(kPi * kPi / (2.0 * std::log(5.0)), 1e-12));
  const DistanceResult r = distance(ann, MetricKind::kKobayashi, m, -m);
  CHECK(r.method == DistanceMethod::kGridRefine);
  CHECK_THAT(r.grid_value, WithinRel(expected, 0.02));
  CHECK_THAT(r.value, WithinRel(expected, 1e-3));
  CHECK(r.value >= expected - 1e-9);
  CHECK(caratheodory_distance_lower(ann, m, -m) <= r.upper);

  const Complex z(0.3, 0.4), w(-0.7, 0.1);
  const DistanceResult s = distance(ann, MetricKind::kKobayashi, z, w);
  CHECK_THAT(s.value, WithinRel(oracle::annulus_distance(0.2, z, w), 1e-3));
  CHECK(s.value >= oracle::annulus_distance(0.2, z, w) - 1e-9);
}

TEST_CASE("smooth domain distance brackets") {
  const Domain ellipse = Domain::ellipse(2.0, 1.0);
  const DistanceResult r = distance(ellipse, MetricKind::kKobayashi, {-1.2, 0.1}, {1.3, -0.2});
  CHECK(r.lower <= r.value);
  CHECK(r.value <= r.upper);
  CHECK(r.upper <= r.grid_value * (1 + 1e-3));
  CHECK(caratheodory_distance_lower(ellipse, {-1.2, 0.1}, {1.3, -0.2}) <= r.upper);
  for (Complex v : r.path.vertices()) CHECK(ellipse.contains(v));
}

TEST_CASE("caratheodory distance lower bound") {
  const Domain disc = Domain::unit_disc();
  const DiscValuedFamily identity{{HolomorphicMap::identity()}};
  CHECK_THAT(caratheodory_distance_lower(disc, 0.2, {-0.4, 0.3}, identity),
             WithinAbs(oracle::disc_distance(0.2, {-0.4, 0.3}), 1e-14));
  CHECK(caratheodory_distance_lower(Domain::annulus(0.2), 0.5, 0.5) == 0.0);
  CHECK_THROWS_AS(caratheodory_distance_lower(disc, 0.2, 0.3, DiscValuedFamily{}), PreconditionError);
}

TEST_CASE("completeness probe examples") {
  const Domain disc = Domain::unit_disc();
  const auto rows = completeness_probe(disc, MetricKind::kKobayashi, 0.0, 1.0, {1.0, 0.5, 1e-2, 1e-4, 1e-6});
  CHECK(rows[0].upper == 0.0);
  for (std::size_t k = 0; k < rows.size(); ++k)
    CHECK_THAT(rows[k].upper, WithinAbs(oracle::radial_length(rows[k].epsilon), 1e-8));
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].upper > rows[k - 1].upper);
  CHECK_THAT(rows.back().upper, WithinAbs(7.254, 1e-3));
  CHECK_THROWS_AS(completeness_probe(disc, MetricKind::kKobayashi, 0.0, 0.5, {0.1}), PreconditionError);
  CHECK_THROWS_AS(completeness_probe(disc, MetricKind::kKobayashi, 0.0, 1.0, {2.0}), PreconditionError);
}

TEST_CASE("refinement never lengthens a path") {
  const MetricField field(Domain::annulus(0.3), MetricKind::kKobayashi);
  const std::vector<Complex> path{{0.6, 0.0}, {0.6, 0.5}, {0.0, 0.7}, {-0.5, 0.4}};
  double length = 0.0;
  int sweeps = 0;
  const auto out = refine_path(field, path, RefineOptions{}, length, sweeps);
  CHECK(length <= detail::polyline_length(field, path));
  CHECK(out.front() == path.front());
  CHECK(out.back() == path.back());
}
