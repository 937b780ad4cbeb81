#pragma once

// Curve lengths, integrated distances, geodesic witnesses and completeness probes.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "invmetric/densities.hpp"
#include "invmetric/grid.hpp"
#include "invmetric/quadrature.hpp"

namespace invmetric {

struct CurveSample {
  double t = 0.0;
  Complex point;
  Complex velocity;
};

/// One C¹ piece over t ∈ [0, 1], cubic Hermite between its samples.
struct CurveSegment {
  std::vector<CurveSample> samples;
};

/// Piecewise C¹ curve; consecutive segments share endpoints.
class Curve {
 public:
  Curve() = default;

  explicit Curve(std::vector<CurveSegment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw PreconditionError("curve needs at least one segment");
    for (const auto& seg : segments_) {
      if (seg.samples.size() < 2) throw PreconditionError("curve segment needs at least two samples");
      if (seg.samples.front().t != 0.0 || seg.samples.back().t != 1.0)
        throw PreconditionError("curve segment must be parameterized over [0, 1]");
      for (std::size_t k = 1; k < seg.samples.size(); ++k)
        if (!(seg.samples[k].t > seg.samples[k - 1].t)) throw PreconditionError("curve samples must increase in t");
    }
    for (std::size_t k = 1; k < segments_.size(); ++k) {
      const Complex a = segments_[k - 1].samples.back().point, b = segments_[k].samples.front().point;
      if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
        throw PreconditionError("consecutive curve segments must share endpoints");
    }
  }

  static Curve line(Complex a, Complex b) {
    return Curve({CurveSegment{{{0.0, a, b - a}, {1.0, b, b - a}}}});
  }

  static Curve point(Complex z) { return line(z, z); }

  static Curve polyline(const std::vector<Complex>& pts) {
    if (pts.size() == 1) return point(pts[0]);
    if (pts.empty()) throw PreconditionError("polyline needs at least one point");
    std::vector<CurveSegment> segs;
    for (std::size_t k = 1; k < pts.size(); ++k)
      segs.push_back(CurveSegment{{{0.0, pts[k - 1], pts[k] - pts[k - 1]}, {1.0, pts[k], pts[k] - pts[k - 1]}}});
    return Curve(std::move(segs));
  }

  /// Single segment sampled from γ and γ′ at n + 1 uniform parameters.
  static Curve sampled(const std::function<Complex(double)>& gamma, const std::function<Complex(double)>& velocity,
                       int n) {
    CurveSegment seg;
    for (int k = 0; k <= n; ++k) {
      const double t = static_cast<double>(k) / n;
      seg.samples.push_back({t, gamma(t), velocity(t)});
    }
    seg.samples.back().t = 1.0;
    return Curve({seg});
  }

  const std::vector<CurveSegment>& segments() const { return segments_; }
  Complex start() const { return segments_.front().samples.front().point; }
  Complex end() const { return segments_.back().samples.back().point; }

  /// Every sample point in order, shared endpoints once.
  std::vector<Complex> vertices() const {
    std::vector<Complex> out;
    for (std::size_t s = 0; s < segments_.size(); ++s)
      for (std::size_t k = (s == 0 ? 0 : 1); k < segments_[s].samples.size(); ++k)
        out.push_back(segments_[s].samples[k].point);
    return out;
  }

  /// Point and velocity inside sample interval k of segment s at local u ∈ [0, 1].
  std::pair<Complex, Complex> evaluate(std::size_t s, std::size_t k, double u) const {
    const auto& a = segments_[s].samples[k];
    const auto& b = segments_[s].samples[k + 1];
    const double dt = b.t - a.t;
    const Complex t0 = a.velocity * dt, t1 = b.velocity * dt;
    const double u2 = u * u, u3 = u2 * u;
    const Complex p = (2 * u3 - 3 * u2 + 1) * a.point + (u3 - 2 * u2 + u) * t0 + (-2 * u3 + 3 * u2) * b.point +
                      (u3 - u2) * t1;
    const Complex dp = (6 * u2 - 6 * u) * a.point + (3 * u2 - 4 * u + 1) * t0 + (-6 * u2 + 6 * u) * b.point +
                       (3 * u2 - 2 * u) * t1;
    return {p, dp};
  }

 private:
  std::vector<CurveSegment> segments_;
};

/// Per-unit-length density of a metric on a domain, exact or bracketed.
class MetricField {
 public:
  MetricField(Domain domain, MetricKind metric) : domain_(std::move(domain)), metric_(metric) {
    if (!metric_available(domain_, metric_))
      throw PreconditionError(std::string("metric '") + to_string(metric_) + "' is not available on the " +
                              domain_.name() + " domain");
  }

  const Domain& domain() const { return domain_; }
  MetricKind metric() const { return metric_; }

  bool exact() const {
    if (metric_ == MetricKind::kQuasihyperbolic || metric_ == MetricKind::kPoincare) return true;
    if (domain_.is_disc() || domain_.is_half_plane()) return true;
    return domain_.is_annulus() && metric_ == MetricKind::kKobayashi;
  }

  DensityBound at(Complex z) const { return density(domain_, metric_, z, TangentVector(1.0)); }
  double lower(Complex z) const { return at(z).lower; }

  /// Upper density; the Carathéodory upper bound is the Kobayashi one.
  double upper(Complex z) const {
    if (metric_ == MetricKind::kCaratheodory) return kobayashi_density(domain_, z, TangentVector(1.0)).upper;
    return at(z).upper;
  }

  /// Upper density at z, or +∞ outside the domain; one boundary search on smooth domains.
  double upper_or_inf(Complex z) const {
    if (domain_.is_smooth()) {
      const SmoothBoundary& boundary = domain_.smooth_boundary();
      if (!is_finite(z)) return std::numeric_limits<double>::infinity();
      const auto [proj, inside] = boundary.locate(z);
      if (!inside) return std::numeric_limits<double>::infinity();
      if (metric_ == MetricKind::kQuasihyperbolic) return 1.0 / proj.distance;
      return detail::smooth_kobayashi_unit(boundary, z, proj).upper;
    }
    if (!domain_.contains(z)) return std::numeric_limits<double>::infinity();
    return upper(z);
  }

 private:
  Domain domain_;
  MetricKind metric_;
};

struct LengthBound {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
};

namespace detail {

/// rho must return +∞ outside the domain.
inline double integrate_curve(const Curve& curve, const std::function<double(Complex)>& rho,
                              const QuadratureOptions& opt) {
  std::size_t intervals = 0;
  for (const auto& seg : curve.segments()) intervals += seg.samples.size() - 1;
  QuadratureOptions local = opt;
  local.abs_tol = opt.abs_tol / static_cast<double>(std::max<std::size_t>(1, intervals));
  double total = 0.0;
  for (std::size_t s = 0; s < curve.segments().size(); ++s) {
    for (std::size_t k = 0; k + 1 < curve.segments()[s].samples.size(); ++k) {
      auto integrand = [&](double u) {
        const auto [p, dp] = curve.evaluate(s, k, u);
        const double speed = std::abs(dp);
        if (speed == 0.0) return 0.0;
        const double value = rho(p);
        if (!std::isfinite(value)) throw PreconditionError("curve exits the domain");
        return value * speed;
      };
      total += adaptive_simpson(integrand, 0.0, 1.0, local);
    }
  }
  return total;
}

}  // namespace detail

/// ∫ F(γ(t), γ′(t)) dt. Bracketed densities integrate to brackets: the upper
/// density for the upper length and the lower density for the lower one.
inline LengthBound curve_length(const Domain& domain, MetricKind metric, const Curve& curve,
                                const QuadratureOptions& opt = {}) {
  const MetricField field(domain, metric);
  for (const Complex v : curve.vertices())
    if (!domain.contains(v)) throw PreconditionError("curve exits the domain");
  const double upper = detail::integrate_curve(curve, [&](Complex z) { return field.upper_or_inf(z); }, opt);
  if (field.exact()) return {upper, upper, true};
  const double lower = detail::integrate_curve(
      curve,
      [&](Complex z) { return domain.contains(z) ? field.lower(z) : std::numeric_limits<double>::infinity(); },
      opt);
  return {std::min(lower, upper), upper, false};
}

/// Closed-form disc distance ½ log((1 + ρ)/(1 − ρ)) = artanh ρ, ρ pseudohyperbolic.
inline double disc_distance(Complex p, Complex q) { return std::atanh(pseudohyperbolic(p, q)); }

inline double half_plane_distance(Complex z, Complex w) { return disc_distance(cayley(z), cayley(w)); }

enum class DistanceMethod { kClosedForm, kGridRefine };

inline const char* to_string(DistanceMethod m) {
  return m == DistanceMethod::kClosedForm ? "closed-form" : "grid+refine";
}

struct DistanceResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  Curve path;
  DistanceMethod method = DistanceMethod::kClosedForm;
  /// Shortest-path length on the raw grid before refinement (grid method only).
  double grid_value = 0.0;
  std::size_t grid_nodes = 0;
  int refine_sweeps = 0;
};

struct RefineOptions {
  int initial_segments = 8;
  int max_segments = 64;
  int max_sweeps = 50;
  double sweep_tolerance = 1e-6;
  int golden_iterations = 18;
};

struct DistanceOptions {
  bool force_grid = false;
  bool refine = true;
  /// Requested gap upper − lower; refinement reports the achieved gap otherwise.
  double tolerance = 1e-6;
  /// Exclusion floor for grid nodes; ≤ 0 picks half the smaller endpoint δ.
  double delta_floor = 0.0;
  GridOptions grid;
  RefineOptions refinement;
};

namespace detail {

/// Metric length of the straight segment [a, b] under the upper density.
inline double chord_length(const MetricField& field, Complex a, Complex b) {
  const Complex d = b - a;
  const double len = std::abs(d);
  if (len == 0.0) return 0.0;
  QuadratureOptions opt;
  opt.abs_tol = 1e-11;
  return len * adaptive_simpson(
                   [&](double t) {
                     const double value = field.upper_or_inf(a + t * d);
                     if (!std::isfinite(value)) throw PreconditionError("curve exits the domain");
                     return value;
                   },
                   0.0, 1.0, opt);
}

/// Six-point Gauss–Legendre estimate of the same chord; +∞ when a node falls outside.
/// Only steers the relaxation, reported lengths use chord_length.
inline double chord_estimate(const MetricField& field, Complex a, Complex b) {
  static constexpr double kNodes[3] = {0.2386191860831969, 0.6612093864662645, 0.9324695142031521};
  static constexpr double kWeights[3] = {0.4679139345726910, 0.3607615730481386, 0.1713244923791704};
  const Complex mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (double sign : {-1.0, 1.0}) {
      sum += kWeights[k] * field.upper_or_inf(mid + sign * kNodes[k] * half);
    }
  }
  return sum * std::abs(half);
}

inline double safe_chord(const MetricField& field, Complex a, Complex b) {
  try {
    return chord_length(field, a, b);
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

inline double polyline_length(const MetricField& field, const std::vector<Complex>& pts) {
  double total = 0.0;
  for (std::size_t k = 1; k < pts.size(); ++k) total += safe_chord(field, pts[k - 1], pts[k]);
  return total;
}

/// Resamples a polyline at n + 1 points equally spaced in metric arc length.
inline std::vector<Complex> resample(const MetricField& field, const std::vector<Complex>& pts, int n) {
  std::vector<double> cumulative{0.0};
  for (std::size_t k = 1; k < pts.size(); ++k)
    cumulative.push_back(cumulative.back() + chord_estimate(field, pts[k - 1], pts[k]));
  const double total = cumulative.back();
  std::vector<Complex> out{pts.front()};
  std::size_t edge = 1;
  for (int j = 1; j < n; ++j) {
    const double target = total * j / n;
    while (edge + 1 < pts.size() && cumulative[edge] < target) ++edge;
    const double span = cumulative[edge] - cumulative[edge - 1];
    const double frac = span > 0.0 ? (target - cumulative[edge - 1]) / span : 0.0;
    out.push_back(pts[edge - 1] + frac * (pts[edge] - pts[edge - 1]));
  }
  out.push_back(pts.back());
  return out;
}

/// Golden-section sweeps moving each interior vertex along the normal of the
/// chord joining its neighbours; tangential motion is left to resampling. A
/// vertex is revisited only while it or a neighbour moved in the previous sweep.
inline int relax(const MetricField& field, std::vector<Complex>& pts, const RefineOptions& opt) {
  constexpr double kGolden = 0.6180339887498949;
  const std::size_t n = pts.size();
  std::vector<char> active(n, 1), moved(n, 0);
  int sweeps = 0;
  for (; sweeps < opt.max_sweeps; ++sweeps) {
    double improvement = 0.0;
    std::fill(moved.begin(), moved.end(), 0);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (!active[k]) continue;
      const Complex prev = pts[k - 1], next = pts[k + 1];
      const double span = std::abs(next - prev);
      if (!(span > 0.0)) continue;
      const Complex axis = Complex(0.0, 1.0) * (next - prev) / span;
      auto cost = [&](double s) {
        const Complex v = pts[k] + s * axis;
        if (!std::isfinite(field.upper_or_inf(v))) return std::numeric_limits<double>::infinity();
        return chord_estimate(field, prev, v) + chord_estimate(field, v, next);
      };
      const double current = cost(0.0);
      const double reach = 0.5 * span;
      double lo = -reach, hi = reach;
      double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
      double f1 = cost(x1), f2 = cost(x2);
      for (int it = 0; it < opt.golden_iterations; ++it) {
        if (f1 < f2) {
          hi = x2, x2 = x1, f2 = f1;
          x1 = hi - kGolden * (hi - lo);
          f1 = cost(x1);
        } else {
          lo = x1, x1 = x2, f1 = f2;
          x2 = lo + kGolden * (hi - lo);
          f2 = cost(x2);
        }
      }
      const double s = f1 < f2 ? x1 : x2;
      const double fs = std::min(f1, f2);
      if (fs < current) {
        pts[k] += s * axis;
        improvement += current - fs;
        if (current - fs > 1e-3 * opt.sweep_tolerance) moved[k] = 1;
      }
    }
    for (std::size_t k = 1; k + 1 < n; ++k) active[k] = moved[k - 1] || moved[k] || moved[k + 1];
    if (improvement < opt.sweep_tolerance) {
      ++sweeps;
      break;
    }
  }
  return sweeps;
}

}  // namespace detail

/// Coarse-to-fine refinement of a polyline: resample to vertices equally
/// spaced in metric length, relax, double the vertex count and repeat until
/// doubling stops paying or max_segments is reached. Never returns a longer path.
inline std::vector<Complex> refine_path(const MetricField& field, const std::vector<Complex>& path,
                                        const RefineOptions& opt, double& length, int& sweeps) {
  sweeps = 0;
  const double start_length = detail::polyline_length(field, path);
  std::vector<Complex> best = path;
  double best_length = start_length;
  if (path.size() < 2 || std::abs(path.front() - path.back()) == 0.0) {
    length = start_length;
    return path;
  }
  std::vector<Complex> pts = path;
  double previous = std::numeric_limits<double>::infinity();
  for (int n = std::max(1, opt.initial_segments);; n *= 2) {
    std::vector<Complex> trial = detail::resample(field, pts, n);
    if (!std::isfinite(detail::polyline_length(field, trial))) {
      if (n >= opt.max_segments) break;
      continue;
    }
    pts = std::move(trial);
    sweeps += detail::relax(field, pts, opt);
    const double current = detail::polyline_length(field, pts);
    if (current < best_length) best_length = current, best = pts;
    if (n >= opt.max_segments || previous - current < 0.1 * opt.sweep_tolerance) break;
    previous = current;
  }
  length = best_length;
  return best;
}

namespace detail {

inline Curve disc_geodesic(Complex z, Complex w, int samples = 64) {
  const MobiusTransform to = MobiusTransform::to_origin(z);
  const MobiusTransform from = MobiusTransform::from_origin(z);
  const Complex target = to(w);
  return Curve::sampled([&](double t) { return from(t * target); },
                        [&](double t) { return from.derivative(t * target) * target; }, samples);
}

inline bool closed_form_available(const Domain& domain, MetricKind metric) {
  return (domain.is_disc() || domain.is_half_plane()) && metric != MetricKind::kQuasihyperbolic;
}

}  // namespace detail

/// Integrated distance with a witness path. Closed form on the disc and
/// half-plane; graded-grid shortest path plus refinement elsewhere.
inline DistanceResult distance(const Domain& domain, MetricKind metric, Complex z, Complex w,
                               const DistanceOptions& opt = {}) {
  const MetricField field(domain, metric);
  domain.require_interior(z);
  domain.require_interior(w);
  DistanceResult out;
  if (z == w) {
    out.path = Curve::point(z);
    out.method = detail::closed_form_available(domain, metric) && !opt.force_grid ? DistanceMethod::kClosedForm
                                                                                  : DistanceMethod::kGridRefine;
    return out;
  }
  if (detail::closed_form_available(domain, metric) && !opt.force_grid) {
    if (domain.is_disc()) {
      out.value = disc_distance(z, w);
      out.path = detail::disc_geodesic(z, w);
    } else {
      out.value = half_plane_distance(z, w);
      const Curve disc_path = detail::disc_geodesic(cayley(z), cayley(w));
      std::vector<Complex> pts;
      for (Complex p : disc_path.vertices()) pts.push_back(cayley_inverse(p));
      pts.front() = z;
      pts.back() = w;
      out.path = Curve::polyline(pts);
    }
    out.lower = out.upper = out.value;
    out.method = DistanceMethod::kClosedForm;
    return out;
  }

  const double floor = opt.delta_floor > 0.0
                           ? opt.delta_floor
                           : 0.5 * std::min(domain.boundary_distance(z), domain.boundary_distance(w));
  const GradedGrid grid(domain, [&field](Complex p) { return field.upper_or_inf(p); }, floor, opt.grid);
  const GradedGrid::Path raw = grid.shortest_path(z, w);
  out.method = DistanceMethod::kGridRefine;
  out.grid_value = raw.length;
  out.grid_nodes = grid.size();
  // Reported lengths come from adaptive quadrature along the witness, never
  // from the grid's three-point edge rule.
  std::vector<Complex> pts = raw.points;
  double length = 0.0;
  if (opt.refine) {
    int sweeps = 0;
    pts = refine_path(field, raw.points, opt.refinement, length, sweeps);
    out.refine_sweeps = sweeps;
  } else {
    length = detail::polyline_length(field, pts);
  }
  out.path = Curve::polyline(pts);
  if (field.exact()) {
    out.value = out.lower = out.upper = length;
  } else {
    const LengthBound bound = curve_length(domain, metric, out.path);
    out.upper = std::min(length, bound.upper);
    out.value = out.upper;
    out.lower = std::min(bound.lower, out.upper);
  }
  return out;
}

inline Curve geodesic_witness(const Domain& domain, MetricKind metric, Complex z, Complex w,
                              const DistanceOptions& opt = {}) {
  return distance(domain, metric, z, w, opt).path;
}

struct ProbeRow {
  double epsilon = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Lengths of the straight segments from z0 to the points at Euclidean
/// distance ε before boundary_target, one row per ε.
inline std::vector<ProbeRow> completeness_probe(const Domain& domain, MetricKind metric, Complex z0,
                                                Complex boundary_target, const std::vector<double>& epsilons,
                                                const QuadratureOptions& opt = {}) {
  domain.require_interior(z0);
  if (!domain.on_boundary(boundary_target)) throw PreconditionError("probe target must lie on the boundary");
  const double reach = std::abs(boundary_target - z0);
  const Complex back = (z0 - boundary_target) / reach;
  std::vector<ProbeRow> rows;
  for (double eps : epsilons) {
    if (!(eps > 0.0 && eps <= reach)) throw PreconditionError("probe epsilon must lie in (0, |target − z0|]");
    const Complex end = boundary_target + eps * back;
    if (!domain.contains(end)) throw PreconditionError("probe segment exits the domain");
    const LengthBound len = curve_length(domain, metric, Curve::line(z0, end), opt);
    rows.push_back({eps, len.lower, len.upper});
  }
  return rows;
}

/// max over members f of d_D(f(z), f(w)): a certified lower bound for the
/// Carathéodory distance and hence for the Kobayashi distance.
inline double caratheodory_distance_lower(const Domain& domain, Complex z, Complex w, const DiscValuedFamily& family) {
  domain.require_interior(z);
  domain.require_interior(w);
  if (family.members.empty()) throw PreconditionError("candidate family is empty");
  double best = 0.0;
  for (const auto& f : family.members) {
    const Complex fz = f(z), fw = f(w);
    if (!(std::abs(fz) < 1.0 && std::abs(fw) < 1.0)) throw PreconditionError("candidate map is not disc-valued");
    best = std::max(best, disc_distance(fz, fw));
  }
  return best;
}

inline double caratheodory_distance_lower(const Domain& domain, Complex z, Complex w) {
  DiscValuedFamily family = disc_valued_family(domain, z);
  for (auto& f : disc_valued_family(domain, w).members) family.members.push_back(std::move(f));
  return caratheodory_distance_lower(domain, z, w, family);
}

}  // namespace invmetric
