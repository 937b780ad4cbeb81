#pragma once

// Seeded randomized property suites. Each suite records the worst signed excess
// of its inequality (positive = violated) and counts cases beyond tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "invmetric/applications.hpp"

namespace invmetric {

struct SuiteReport {
  std::string name;
  int cases = 0;
  int violations = 0;
  /// Largest excess (lhs − rhs − tolerance) seen; ≤ 0 when the suite passes.
  double worst = -std::numeric_limits<double>::infinity();

  bool passed() const { return violations == 0; }

  /// Records lhs ≤ rhs + tol.
  void check_le(double lhs, double rhs, double tol) {
    ++cases;
    const double excess = lhs - rhs - tol;
    if (!(excess <= 0.0)) ++violations;  // NaN counts as a violation
    worst = std::isnan(excess) ? std::numeric_limits<double>::infinity() : std::max(worst, excess);
  }

  void check_near(double a, double b, double tol) { check_le(std::abs(a - b), 0.0, tol); }

  void check(bool ok) {
    ++cases;
    if (!ok) ++violations;
    worst = std::max(worst, ok ? -1.0 : 1.0);
  }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int n_random = 1000;
  int n_grid_pairs = 20;
};

namespace detail {

/// Uniform interior point of the disc of radius 0.95, the range used throughout the suites.
inline Complex suite_point(Rng& rng) { return rng.in_disc(0.95); }

}  // namespace detail

inline SuiteReport verify_mobius_group(const VerifyOptions& opt) {
  SuiteReport r{"mobius-group"};
  Rng rng(opt.seed ^ 0x1001);
  for (int k = 0; k < opt.n_random; ++k) {
    const MobiusTransform a = random_mobius(rng), b = random_mobius(rng), c = random_mobius(rng);
    const Complex z = detail::suite_point(rng), w = detail::suite_point(rng);
    const Complex left = mobius_compose(mobius_compose(a, b), c)(z);
    const Complex right = mobius_compose(a, mobius_compose(b, c))(z);
    r.check_le(std::abs(left - right), 0.0, 1e-13 * std::max(1.0, 1.0 / (1.0 - std::abs(z))));
    r.check_le(std::abs(mobius_compose(a, mobius_inverse(a))(z) - z), 0.0, 1e-12);
    r.check(std::abs(mobius_apply(a, z)) < 1.0);
    r.check_near(pseudohyperbolic(a(z), a(w)), pseudohyperbolic(z, w), 1e-12);
    const double h = 1e-5;
    const Complex fd = (a(z + h) - a(z - h)) / (2.0 * h);
    r.check_le(std::abs(fd - mobius_derivative(a, z)), 0.0, 1e-7 * std::max(1.0, std::abs(fd)));
  }
  return r;
}

inline SuiteReport verify_blaschke_self_map(const VerifyOptions& opt) {
  SuiteReport r{"blaschke-self-map"};
  Rng rng(opt.seed ^ 0x1002);
  for (int k = 0; k < opt.n_random; ++k) {
    const HolomorphicMap f = random_blaschke(rng);
    r.check(std::abs(f(detail::suite_point(rng))) < 1.0);
    r.check_near(std::abs(f(std::polar(1.0, rng.uniform(0.0, kTwoPi)))), 1.0, 1e-12);
  }
  return r;
}

inline SuiteReport verify_schwarz_lemma(const VerifyOptions& opt) {
  SuiteReport r{"schwarz-lemma"};
  Rng rng(opt.seed ^ 0x1003);
  for (int k = 0; k < opt.n_random; ++k) {
    const HolomorphicMap f = random_blaschke(rng, true);
    const HolomorphicMap g = compose(MobiusTransform::to_origin(f(0.0)), f);
    const Complex z = detail::suite_point(rng);
    r.check_le(std::abs(g(z)), std::abs(z), 1e-12);
    r.check_le(std::abs(eval_derivative(g, 0.0)), 1.0, 1e-12);
  }
  return r;
}

inline SuiteReport verify_schwarz_pick(const VerifyOptions& opt) {
  SuiteReport r{"schwarz-pick"};
  Rng rng(opt.seed ^ 0x1004);
  for (int k = 0; k < opt.n_random; ++k) {
    const HolomorphicMap f = random_blaschke(rng, rng.uniform() < 0.5);
    const Complex a = detail::suite_point(rng), b = detail::suite_point(rng);
    r.check_le(pseudohyperbolic(f(a), f(b)), pseudohyperbolic(a, b), 1e-12);
    r.check_le(-schwarz_pick_gap(f, a), 0.0, 1e-12);
  }
  // automorphisms are the equality cases
  for (int k = 0; k < 100; ++k) {
    const MobiusTransform m = random_mobius(rng);
    const Complex a = detail::suite_point(rng), b = detail::suite_point(rng);
    r.check_near(pseudohyperbolic(m(a), m(b)), pseudohyperbolic(a, b), 1e-10);
    r.check_near(schwarz_pick_gap(HolomorphicMap(m), a), 0.0, 1e-10 / (1.0 - std::norm(a)));
  }
  return r;
}

namespace detail {

inline std::vector<Domain> suite_domains() {
  return {Domain::unit_disc(), Domain::annulus(0.2), Domain::ellipse(2.0, 1.0)};
}

/// Uniform sample of the domain's bounding box, rejected until interior.
inline Complex interior_point(const Domain& d, Rng& rng) {
  if (d.is_half_plane()) return {rng.uniform(-3.0, 3.0), rng.uniform(1e-3, 3.0)};
  const auto [c, rad] = d.bounding_circle();
  for (;;) {
    const Complex z = c + rng.in_disc(rad);
    if (d.contains(z)) return z;
  }
}

}  // namespace detail

inline SuiteReport verify_boundary_geometry(const VerifyOptions& opt) {
  SuiteReport r{"boundary-geometry"};
  Rng rng(opt.seed ^ 0x1005);
  const int n = std::max(1, opt.n_random / 5);
  for (const Domain& d : detail::suite_domains()) {
    const double r_int = d.osculating_radii().interior;
    for (int k = 0; k < n; ++k) {
      const Complex z1 = detail::interior_point(d, rng), z2 = detail::interior_point(d, rng);
      r.check_le(std::abs(d.boundary_distance(z1) - d.boundary_distance(z2)), std::abs(z1 - z2), 1e-9);
      const BoundaryProjection proj = d.project(z1);
      r.check_near(std::abs(z1 - proj.point), d.boundary_distance(z1), 1e-8);
      if (proj.distance < 0.5 * r_int) {
        const Complex back = proj.point + proj.distance * d.normals(proj.point).inward;
        r.check_le(std::abs(back - z1), 0.0, 1e-6);
      }
      // Γα nested in α
      const double a1 = 1.0 + 3.0 * rng.uniform() + 1e-6, a2 = a1 + 2.0 * rng.uniform();
      if (in_nontangential_region(d, proj.point, a1, z2)) r.check(in_nontangential_region(d, proj.point, a2, z2));
    }
  }
  // interior osculating discs stay inside the ellipse
  const Domain e = Domain::ellipse(2.0, 1.0);
  const double rad = e.osculating_radii().interior;
  const auto& pts = e.smooth_boundary().samples();
  for (int k = 0; k < 100; ++k) {
    const Complex p = pts[static_cast<std::size_t>(k) * pts.size() / 100];
    const Complex c = p + rad * e.normals(p).inward;
    for (int i = 1; i <= 4; ++i)
      for (int j = 0; j < 16; ++j) r.check(e.contains(c + std::polar(rad * (1.0 - 1e-6) * i / 4.0, kTwoPi * j / 16)));
  }
  return r;
}

inline SuiteReport verify_density_properties(const VerifyOptions& opt) {
  SuiteReport r{"density-properties"};
  Rng rng(opt.seed ^ 0x1006);
  const Domain disc = Domain::unit_disc();
  const int n = std::max(1, opt.n_random / 5);
  for (const Domain& d : detail::suite_domains()) {
    for (int k = 0; k < n; ++k) {
      const Complex z = detail::interior_point(d, rng);
      const TangentVector xi(std::polar(1.0, rng.uniform(0.0, kTwoPi)));
      const DensityBound kob = kobayashi_density(d, z, xi);
      const DensityBound car = caratheodory_density(d, z, xi);
      r.check_le(car.lower, kob.upper, 1e-9);
      r.check_le(kob.lower, kob.upper, 0.0);
      const Complex c(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
      const DensityBound scaled = kobayashi_density(d, z, xi.scaled(c));
      r.check_near(scaled.upper, std::abs(c) * kob.upper, 1e-14 * std::max(1.0, scaled.upper));
      r.check_near(scaled.lower, std::abs(c) * kob.lower, 1e-14 * std::max(1.0, scaled.lower));
    }
  }
  for (int k = 0; k < n; ++k) {
    const Complex z = detail::suite_point(rng);
    const TangentVector xi(std::polar(1.0 + rng.uniform(), rng.uniform(0.0, kTwoPi)));
    const double base = kobayashi_density(disc, z, xi).upper;
    r.check_near(caratheodory_density(disc, z, xi).lower, base, 1e-12 * base);
    // conformal isometry
    const MobiusTransform m = random_mobius(rng);
    r.check_near(kobayashi_density(disc, m(z), TangentVector(m.derivative(z) * xi.xi)).upper, base, 1e-12 * base);
    // distance decreasing, infinitesimal
    const HolomorphicMap f = random_blaschke(rng, true);
    const Jet j = f.jet(z);
    r.check_le(kobayashi_density(disc, j.value, TangentVector(j.derivative * xi.xi)).upper, base, 1e-12 * base);
    // monotonicity under inclusion of the subdisc D(0, s)
    const double s = std::abs(z) + (1.0 - std::abs(z)) * rng.uniform(0.1, 0.9);
    r.check_le(base, s * xi.length() / (s * s - std::norm(z)), 1e-12 * base);
  }
  return r;
}

inline SuiteReport verify_boundary_bracket(const VerifyOptions& opt) {
  SuiteReport r{"boundary-bracket"};
  Rng rng(opt.seed ^ 0x1007);
  const Domain e = Domain::ellipse(2.0, 1.0);
  const ComparisonConstants cc = boundary_comparison_constants(e, 0.1);
  const auto& pts = e.smooth_boundary().samples();
  const int n = std::max(1, opt.n_random / 2);
  for (int k = 0; k < n; ++k) {
    const Complex p = pts[static_cast<std::size_t>(rng.integer(0, static_cast<int>(pts.size()) - 1))];
    const double t = 0.1 * (1.0 - rng.uniform());
    const Complex z = p + t * e.normals(p).inward;
    const double delta = e.boundary_distance(z);
    if (!(delta < 0.1)) continue;
    const DensityBound b = kobayashi_density(e, z, TangentVector(1.0));
    r.check_le(b.lower, b.upper, 0.0);
    r.check_le(cc.lower, b.lower * delta, 1e-9);
    r.check_le(b.upper * delta, cc.upper, 1e-9);
  }
  return r;
}

inline SuiteReport verify_disc_distance(const VerifyOptions& opt) {
  SuiteReport r{"disc-distance"};
  Rng rng(opt.seed ^ 0x1008);
  for (int k = 0; k < opt.n_random; ++k) {
    const Complex a = detail::suite_point(rng), b = detail::suite_point(rng), c = detail::suite_point(rng);
    const double ab = disc_distance(a, b);
    r.check_le(disc_distance(a, c), ab + disc_distance(b, c), 1e-12);
    r.check_near(disc_distance(b, a), ab, 1e-12);
    const HolomorphicMap f = random_blaschke(rng, rng.uniform() < 0.5);
    r.check_le(disc_distance(f(a), f(b)), ab, 1e-9);
    const MobiusTransform m = random_mobius(rng);
    r.check_near(disc_distance(m(a), m(b)), ab, 1e-12 * std::max(1.0, ab) / (1.0 - std::max(std::abs(m(a)), std::abs(m(b)))));
  }
  return r;
}

/// Grid + refinement against the closed form; raw within 2%, refined within 1e−3.
inline SuiteReport verify_grid_distance(const VerifyOptions& opt, std::vector<std::array<double, 3>>* rows = nullptr) {
  SuiteReport r{"grid-distance"};
  Rng rng(opt.seed ^ 0x1009);
  const Domain disc = Domain::unit_disc();
  DistanceOptions dopt;
  dopt.force_grid = true;
  for (int k = 0; k < opt.n_grid_pairs; ++k) {
    Complex z = detail::suite_point(rng), w = detail::suite_point(rng);
    while (std::abs(z - w) < 1e-3) w = detail::suite_point(rng);
    const double exact = disc_distance(z, w);
    const DistanceResult res = distance(disc, MetricKind::kKobayashi, z, w, dopt);
    r.check_le(std::abs(res.grid_value - exact), 0.02 * exact, 0.0);
    r.check_le(std::abs(res.value - exact), 1e-3, 0.0);
    r.check_le(res.lower, res.value, 0.0);
    r.check_le(res.value, res.upper, 0.0);
    if (rows) rows->push_back({exact, res.grid_value, res.value});
  }
  return r;
}

inline SuiteReport verify_fixed_points(const VerifyOptions& opt) {
  SuiteReport r{"fixed-point-contraction"};
  Rng rng(opt.seed ^ 0x100a);
  const int n = std::max(1, opt.n_random / 50);
  for (int k = 0; k < n; ++k) {
    BlaschkeProduct b;
    const int degree = rng.integer(1, 3);
    for (int i = 0; i < degree; ++i) b.zeros.push_back(rng.in_disc(0.9));
    b.phase = rng.uniform(0.0, kTwoPi);
    const double s = rng.uniform(0.2, 0.9);
    const Complex shift = rng.in_disc(0.5 * (1.0 - s));
    const HolomorphicMap f = compose(AffineMap{Complex(s), shift}, HolomorphicMap(b));
    const double tol = 1e-12;
    const FixedPointReport rep = farkas_ritt_fixed_point(f, tol);
    r.check_le(rep.residual, tol, 0.0);
    r.check(rep.unique);
    r.check_le(rep.observed_contraction, rep.contraction_bound, 1e-6);
    r.check_le(contraction_factor_estimate(f, 200, rng.next()), rep.contraction_bound, 1e-6);
  }
  return r;
}

inline SuiteReport verify_ball_decay(const VerifyOptions&) {
  SuiteReport r{"ball-decay"};
  const Domain disc = Domain::unit_disc();
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 10; ++k) {
    const double d = metric_ball_diameter(disc, MetricKind::kKobayashi, 1.0 - std::ldexp(1.0, -k), 1.0, 64);
    r.check_le(d, previous, -1e-15);
    previous = d;
  }
  return r;
}

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<SuiteReport> suites;
  bool passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.passed(); });
  }
};

inline VerifyReport run_all_suites(const VerifyOptions& opt) {
  VerifyReport out{opt.seed, {}};
  for (auto suite : {verify_mobius_group, verify_blaschke_self_map, verify_schwarz_lemma, verify_schwarz_pick,
                     verify_boundary_geometry, verify_density_properties, verify_boundary_bracket,
                     verify_disc_distance, verify_fixed_points, verify_ball_decay})
    out.suites.push_back(suite(opt));
  out.suites.push_back(verify_grid_distance(opt));
  return out;
}

}  // namespace invmetric
