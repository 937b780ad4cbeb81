#pragma once

// Contraction fixed points, approach-region comparison, automorphism-orbit
// escape, metric-ball diameters and the annulus Kobayashi/Carathéodory gap.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "invmetric/geodesy.hpp"
#include "invmetric/parallel.hpp"

namespace invmetric {

inline constexpr int kDefaultBoundarySamples = 4096;

/// ε = (1 − sup|f|)/2 with the sup sampled on the boundary circle; then
/// g = f + ε(f − f(z₀)) satisfies |g| ≤ m(2 − m) < 1.
inline double epsilon_margin(const HolomorphicMap& f, int n_samples = kDefaultBoundarySamples) {
  const double bound = disc_image_bound(f, n_samples);
  if (bound >= 1.0 - 1e-9) throw PreconditionError("image of f is not relatively compact in the disc");
  return 0.5 * (1.0 - bound);
}

struct FixedPointRun {
  Complex start;
  Complex point;
  int iterations = 0;
};

struct FixedPointReport {
  Complex point;
  int iterations = 0;
  double residual = 0.0;
  double epsilon_margin = 0.0;
  /// Largest ratio d(z_{n+1}, z_n)/d(z_n, z_{n−1}) seen over all runs.
  double observed_contraction = 0.0;
  /// 1/(1 + ε), the proven contraction factor.
  double contraction_bound = 1.0;
  std::vector<FixedPointRun> restarts;
  /// Largest disc distance between a restart's limit and the main limit.
  double restart_spread = 0.0;
  bool unique = true;
  /// Iterates of the main run starting at z₀ = 0.
  std::vector<Complex> trace;
};

struct FixedPointOptions {
  int max_iterations = 10000;
  int n_boundary_samples = kDefaultBoundarySamples;
  int n_restarts = 8;
  double restart_radius = 0.9;
};

namespace detail {

struct IterationResult {
  Complex point;
  int iterations = 0;
  double worst_ratio = 0.0;
  std::vector<Complex> trace;
};

/// z ← f(z) until the disc distance to the next iterate drops below tol.
inline IterationResult iterate_to_fixed_point(const HolomorphicMap& f, Complex z, double tol, int cap,
                                              bool keep_trace) {
  IterationResult out;
  if (keep_trace) out.trace.push_back(z);
  double previous_step = -1.0;
  for (int n = 0; n <= cap; ++n) {
    const Complex next = f(z);
    if (!(std::abs(next) < 1.0)) throw NumericError("iterate left the unit disc");
    const double step = disc_distance(next, z);
    if (previous_step >= 1e-12) out.worst_ratio = std::max(out.worst_ratio, step / previous_step);
    if (step < tol) {
      out.point = z;
      out.iterations = n;
      return out;
    }
    if (n == cap) break;
    previous_step = step;
    z = next;
    if (keep_trace) out.trace.push_back(z);
  }
  throw ConvergenceError("fixed-point iteration exceeded the iteration cap");
}

}  // namespace detail

/// Iterates f from 0 and from restart points on a circle; the contraction in
/// the Kobayashi distance makes all runs converge to the same point.
inline FixedPointReport farkas_ritt_fixed_point(const HolomorphicMap& f, double tol,
                                                const FixedPointOptions& opt = {}) {
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  if (opt.max_iterations <= 0) throw PreconditionError("iteration cap must be positive");
  FixedPointReport report;
  report.epsilon_margin = epsilon_margin(f, opt.n_boundary_samples);
  report.contraction_bound = 1.0 / (1.0 + report.epsilon_margin);

  const auto main = detail::iterate_to_fixed_point(f, Complex(0.0), tol, opt.max_iterations, true);
  report.point = main.point;
  report.iterations = main.iterations;
  report.trace = main.trace;
  report.residual = std::abs(f(main.point) - main.point);
  report.observed_contraction = main.worst_ratio;

  std::vector<detail::IterationResult> runs(static_cast<std::size_t>(opt.n_restarts));
  parallel_for(runs.size(), [&](std::size_t k) {
    const Complex start = std::polar(opt.restart_radius, kTwoPi * static_cast<double>(k) / opt.n_restarts);
    runs[k] = detail::iterate_to_fixed_point(f, start, tol, opt.max_iterations, false);
  });
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const Complex start = std::polar(opt.restart_radius, kTwoPi * static_cast<double>(k) / opt.n_restarts);
    report.restarts.push_back({start, runs[k].point, runs[k].iterations});
    report.observed_contraction = std::max(report.observed_contraction, runs[k].worst_ratio);
    report.restart_spread = std::max(report.restart_spread, disc_distance(runs[k].point, report.point));
  }
  report.unique = report.restart_spread <= 10.0 * tol;
  return report;
}

/// sup over random pairs of d(f(z), f(w))/d(z, w), closed-form disc distance.
inline double contraction_factor_estimate(const HolomorphicMap& f, int n_pairs, std::uint64_t seed = 1,
                                          int n_boundary_samples = kDefaultBoundarySamples) {
  epsilon_margin(f, n_boundary_samples);
  if (n_pairs <= 0) throw PreconditionError("need a positive number of pairs");
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < n_pairs; ++k) {
    const Complex z = rng.in_disc(0.999), w = rng.in_disc(0.999);
    const double d = disc_distance(z, w);
    if (d < 1e-12) continue;
    worst = std::max(worst, disc_distance(f(z), f(w)) / d);
  }
  return worst;
}

struct RegionCell {
  double alpha = 0.0;
  double beta = 0.0;
  int in_gamma = 0;
  int in_m = 0;
  int in_both = 0;
  /// |Γα ∩ Mβ|/|Γα| and |Γα ∩ Mβ|/|Mβ| over the sample (1 when the denominator is 0).
  double gamma_in_m = 1.0;
  double m_in_gamma = 1.0;
};

struct RegionComparisonReport {
  int samples = 0;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<RegionCell> cells;  // row-major, alphas outer
  /// sup over sampled z ∈ Γα of the distance to the normal segment: Γα ⊆ Mβ on the sample iff β exceeds it.
  std::vector<double> beta_threshold;
  /// Smallest β on the grid with Γα ⊆ Mβ on the sample.
  std::vector<std::optional<double>> beta_for_alpha;
  /// sup over sampled z ∈ Mβ of |z − p|/δ(z): Mβ ⊆ Γα on the sample iff α exceeds it.
  std::vector<double> alpha_threshold;
  /// Smallest α on the grid with Mβ ⊆ Γα on the sample.
  std::vector<std::optional<double>> alpha_for_beta;
};

struct RegionSample {
  Complex z;
  double delta = 0.0;
  double aperture = 0.0;         // |z − p|/δ(z)
  double segment_distance = 0.0;  // Kobayashi distance to {p − rν : 0 < r < r0}
};

namespace detail {

inline std::vector<double> default_alphas(double alpha) {
  std::vector<double> out{1.25, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, alpha};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<double> default_betas(double beta) {
  std::vector<double> out{0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, beta};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Disc distance from z to the radial segment {p(1 − r) : lo ≤ r ≤ hi}; the
/// distance to a point moving along a geodesic is convex, so golden section is exact.
inline double disc_segment_distance(Complex p, double lo, double hi, Complex z) {
  constexpr double kGolden = 0.6180339887498949;
  auto f = [&](double r) { return disc_distance(z, p * (1.0 - r)); };
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 100 && b - a > 1e-14; ++it) {
    if (f1 < f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
  }
  return std::min({f1, f2, f(lo), f(hi)});
}

}  // namespace detail

/// Samples z in the window {|z − p| < r0/2} (δ(z) ≥ r0/40) and compares the
/// nontangential regions Γα(p) with the unions Mβ(p) of Kobayashi balls
/// centered on the inward normal segment of length r0.
inline RegionComparisonReport lindelof_region_comparison(const Domain& domain, Complex p,
                                                         const ApproachRegionParams& params, int n_samples,
                                                         std::vector<double> alphas = {},
                                                         std::vector<double> betas = {},
                                                         std::vector<RegionSample>* samples_out = nullptr) {
  params.validate();
  if (n_samples < 4) throw PreconditionError("need at least 4 samples");
  if (!domain.on_boundary(p)) throw PreconditionError("approach vertex must lie on the boundary");
  if (!domain.is_bounded()) throw PreconditionError("approach regions need a bounded domain");
  if (alphas.empty()) alphas = detail::default_alphas(params.alpha);
  if (betas.empty()) betas = detail::default_betas(params.beta);
  for (double a : alphas)
    if (!(a > 1.0)) throw PreconditionError("approach aperture alpha must exceed 1");
  for (double b : betas)
    if (!(b > 0.0)) throw PreconditionError("metric-ball radius beta must be positive");

  const Complex inward = domain.normals(p).inward;
  const double window = 0.5 * params.r0;
  const double min_delta = params.r0 / 40.0;
  const int side = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_samples)))));
  std::vector<RegionSample> samples;
  for (int i = 0; i < side && static_cast<int>(samples.size()) < n_samples; ++i) {
    for (int j = 0; j < side && static_cast<int>(samples.size()) < n_samples; ++j) {
      const double rho = window * (i + 0.5) / side;
      const double angle = -0.5 * kPi + kPi * (j + 0.5) / side;
      const Complex z = p + rho * inward * std::polar(1.0, angle);
      if (!domain.contains(z)) continue;
      const double delta = domain.boundary_distance(z);
      if (delta < min_delta) continue;
      samples.push_back({z, delta, std::abs(z - p) / delta, 0.0});
    }
  }
  if (samples.empty()) throw PreconditionError("no interior samples near the boundary point");

  if (domain.is_disc()) {
    parallel_for(samples.size(), [&](std::size_t k) {
      samples[k].segment_distance = detail::disc_segment_distance(p, 1e-9, params.r0, samples[k].z);
    });
  } else {
    double floor = min_delta;
    for (const auto& s : samples) floor = std::min(floor, 0.5 * s.delta);
    GridOptions grid_opt;
    grid_opt.floor_fraction = 0.0;
    const MetricField field(domain, MetricKind::kKobayashi);
    const GradedGrid grid(domain, [&field](Complex z) { return field.upper_or_inf(z); }, floor, grid_opt);
    std::vector<Complex> sources;
    for (int k = 0; k <= 64; ++k) {
      const double r = params.r0 * k / 64.0;
      const Complex s = p + r * inward;
      if (r >= 2.0 * floor && domain.contains(s) && domain.boundary_distance(s) >= floor) sources.push_back(s);
    }
    if (sources.empty()) throw NumericError("normal segment has no points above the grid floor");
    const auto field_values = grid.distances_from(sources);
    for (auto& s : samples) s.segment_distance = grid.query(field_values, s.z);
  }

  RegionComparisonReport report;
  report.samples = static_cast<int>(samples.size());
  report.alphas = alphas;
  report.betas = betas;
  for (double a : alphas) {
    double threshold = 0.0;
    for (const auto& s : samples)
      if (s.aperture < a) threshold = std::max(threshold, s.segment_distance);
    report.beta_threshold.push_back(threshold);
    std::optional<double> best;
    for (double b : betas)
      if (b > threshold && (!best || b < *best)) best = b;
    report.beta_for_alpha.push_back(best);
  }
  for (double b : betas) {
    double threshold = 0.0;
    for (const auto& s : samples)
      if (s.segment_distance < b) threshold = std::max(threshold, s.aperture);
    report.alpha_threshold.push_back(threshold);
    std::optional<double> best;
    for (double a : alphas)
      if (a > threshold && (!best || a < *best)) best = a;
    report.alpha_for_beta.push_back(best);
  }
  for (double a : alphas) {
    for (double b : betas) {
      RegionCell cell{a, b};
      for (const auto& s : samples) {
        const bool g = s.aperture < a, m = s.segment_distance < b;
        cell.in_gamma += g;
        cell.in_m += m;
        cell.in_both += g && m;
      }
      cell.gamma_in_m = cell.in_gamma ? static_cast<double>(cell.in_both) / cell.in_gamma : 1.0;
      cell.m_in_gamma = cell.in_m ? static_cast<double>(cell.in_both) / cell.in_m : 1.0;
      report.cells.push_back(cell);
    }
  }
  if (samples_out) *samples_out = std::move(samples);
  return report;
}

struct EuclideanBall {
  Complex center;
  double radius = 0.0;
  bool contains(Complex z) const { return std::abs(z - center) < radius; }
};

struct OrbitStep {
  int j = 0;
  double orbit_modulus = 0.0;  // |φ_j(P)|
  double image_diameter = 0.0;
  bool contained = false;
};

struct OrbitReport {
  std::optional<int> escape_index;
  std::vector<OrbitStep> steps;
};

namespace detail {

inline double sample_diameter(const std::vector<Complex>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t k = i + 1; k < pts.size(); ++k) best = std::max(best, std::norm(pts[i] - pts[k]));
  return std::sqrt(best);
}

}  // namespace detail

/// Center plus concentric sample circles of the closed disc D̄(center, radius).
inline std::vector<Complex> sample_closed_disc(Complex center, double radius, int rings = 8, int per_ring = 32) {
  std::vector<Complex> out{center};
  for (int i = 1; i <= rings; ++i)
    for (int k = 0; k < per_ring; ++k)
      out.push_back(center + std::polar(radius * i / rings, kTwoPi * k / per_ring));
  return out;
}

/// Images of the sampled compact K under φ_j, j = first_index, first_index + 1, …;
/// J is the first index from which every later image lies in V.
inline OrbitReport orbit_boundary_escape(const Domain& domain, const std::vector<MobiusTransform>& phis, Complex P,
                                         const std::vector<Complex>& K, const EuclideanBall& V, int first_index = 1) {
  if (!domain.is_disc()) throw PreconditionError("orbit diagnostics need the unit disc");
  domain.require_interior(P);
  if (phis.size() < 2) throw PreconditionError("need at least two automorphisms");
  if (K.empty()) throw PreconditionError("compact sample set is empty");
  for (Complex k : K) domain.require_interior(k);
  if (!(V.radius > 0.0)) throw PreconditionError("target ball radius must be positive");

  OrbitReport report;
  for (std::size_t idx = 0; idx < phis.size(); ++idx) {
    OrbitStep step;
    step.j = first_index + static_cast<int>(idx);
    step.orbit_modulus = std::abs(phis[idx](P));
    std::vector<Complex> image;
    image.reserve(K.size());
    step.contained = true;
    for (Complex k : K) {
      image.push_back(mobius_apply(phis[idx], k, DiscCheck::kStrict));
      step.contained = step.contained && V.contains(image.back());
    }
    step.image_diameter = detail::sample_diameter(image);
    report.steps.push_back(step);
  }
  const auto& s = report.steps;
  for (std::size_t k = 1; k < s.size(); ++k)
    if (!(s[k].orbit_modulus > s[k - 1].orbit_modulus))
      throw PreconditionError("orbit is not escaping: |phi_j(P)| is not strictly increasing");
  if (!(1.0 - s.back().orbit_modulus < 0.5 * (1.0 - s.front().orbit_modulus)))
    throw PreconditionError("orbit is not escaping: |phi_j(P)| does not approach 1");
  for (std::size_t k = s.size(); k-- > 0;) {
    if (!s[k].contained) break;
    report.escape_index = s[k].j;
  }
  return report;
}

/// Euclidean diameter of {z : d(center, z) ≤ radius}, from bisection along
/// n rays; closed-form distance on the disc, a graded-grid field elsewhere.
inline double metric_ball_diameter(const Domain& domain, MetricKind metric, Complex center, double radius,
                                   int n_directions) {
  domain.require_interior(center);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw PreconditionError("ball radius must be positive and finite");
  if (n_directions < 2) throw PreconditionError("need at least two directions");
  const MetricField field(domain, metric);

  std::function<double(Complex)> dist;
  std::optional<GradedGrid> grid;
  std::vector<double> values;
  if ((domain.is_disc() || domain.is_half_plane()) && metric != MetricKind::kQuasihyperbolic) {
    dist = [&](Complex z) {
      return domain.is_disc() ? disc_distance(center, z) : half_plane_distance(center, z);
    };
  } else if (domain.is_bounded()) {
    GridOptions opt;
    opt.floor_fraction = 0.0;
    // the density is at least about 1/(4δ), so the ball keeps δ ≥ δ(center)·e^{−4·radius}
    const double floor = 0.25 * domain.boundary_distance(center) * std::exp(-4.0 * radius);
    grid.emplace(domain, [&field](Complex z) { return field.upper_or_inf(z); },
                 std::max(floor, 1e-4 * domain.diameter()), opt);
    values = grid->distances_from({center});
    dist = [&](Complex z) {
      try {
        return grid->query(values, z);
      } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
      }
    };
  } else {
    throw PreconditionError("metric balls need the disc, half-plane or a bounded domain");
  }

  std::vector<Complex> ends(static_cast<std::size_t>(n_directions));
  parallel_for(ends.size(), [&](std::size_t k) {
    const Complex u = std::polar(1.0, kTwoPi * static_cast<double>(k) / n_directions);
    // march out to a point beyond the ball or outside the domain
    double lo = 0.0, hi = domain.boundary_distance(center);
    while (domain.contains(center + hi * u) && dist(center + hi * u) <= radius) {
      lo = hi;
      hi *= 2.0;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      const Complex z = center + mid * u;
      if (domain.contains(z) && dist(z) <= radius)
        lo = mid;
      else
        hi = mid;
    }
    ends[k] = center + lo * u;
  });
  return detail::sample_diameter(ends);
}

struct GapRow {
  Complex z;
  double kobayashi = 0.0;
  double caratheodory_lower = 0.0;
  double gap = 0.0;
};

/// Exact Kobayashi density against the Carathéodory family lower bound on the
/// circle |z| = √r of the annulus, unit tangent direction.
inline std::vector<GapRow> annulus_gap(double r_inner, int n_points, Complex direction = Complex(0.0, 1.0)) {
  const Domain domain = Domain::annulus(r_inner);
  if (n_points <= 0) throw PreconditionError("need a positive number of sample points");
  if (std::abs(direction) == 0.0) throw PreconditionError("direction must be nonzero");
  std::vector<GapRow> rows(static_cast<std::size_t>(n_points));
  const double m = std::sqrt(r_inner);
  parallel_for(rows.size(), [&](std::size_t k) {
    const Complex u = std::polar(1.0, kTwoPi * static_cast<double>(k) / n_points);
    const Complex z = m * u;
    // direction is taken relative to the radial frame so every row sees the same geometry
    const TangentVector xi(direction * u / std::abs(direction));
    const double kob = kobayashi_density(domain, z, xi).upper;
    const double car = caratheodory_density(domain, z, xi).lower;
    rows[k] = {z, kob, car, kob - car};
  });
  return rows;
}

}  // namespace invmetric
