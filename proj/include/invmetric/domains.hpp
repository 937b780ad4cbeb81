#pragma once

// Planar domains: membership, boundary distance, nearest boundary points,
// normals, osculating radii and nontangential approach regions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "invmetric/complex.hpp"

namespace invmetric {

/// Points closer than this to the boundary are not interior.
inline constexpr double kInteriorTolerance = 1e-12;
/// Tolerance for "p lies on the boundary".
inline constexpr double kBoundaryTolerance = 1e-9;

struct UnitDisc {};
struct UpperHalfPlane {};
struct Annulus {
  double r_inner = 0.5;
};

/// Interior osculating radius r and exterior radius R. For the disc no finite
/// exterior radius exists; exterior_unbounded is set and R is +∞.
struct OsculatingRadii {
  double interior = 0.0;
  double exterior = 0.0;
  bool exterior_unbounded = false;
};

struct Normals {
  Complex outward;
  Complex inward;
};

/// Nearest point on the boundary together with the outward normal there.
struct BoundaryProjection {
  Complex point;
  double distance = 0.0;
  Complex outward;
};

struct ApproachRegionParams {
  double alpha = 2.0;
  double beta = 1.0;
  double r0 = 0.5;

  void validate() const {
    if (!(alpha > 1.0)) throw PreconditionError("approach aperture alpha must exceed 1");
    if (!(beta > 0.0)) throw PreconditionError("metric-ball radius beta must be positive");
    if (!(r0 > 0.0)) throw PreconditionError("normal-segment length r0 must be positive");
  }
};

/// Closed C² curve given by uniform parameter samples, counterclockwise.
/// Derivatives come from 5-point periodic central differences (in units of
/// the sample index); between samples the curve is the cubic Hermite
/// interpolant of positions and first derivatives.
class SmoothBoundary {
 public:
  static constexpr std::size_t kMinSamples = 256;

  SmoothBoundary(std::vector<Complex> samples, Complex basepoint)
      : pts_(std::move(samples)), basepoint_(basepoint) {
    const std::size_t n = pts_.size();
    if (n < kMinSamples)
      throw PreconditionError("smooth boundary needs at least " + std::to_string(kMinSamples) + " samples");
    for (auto p : pts_) require_finite(p, "boundary sample");
    require_finite(basepoint, "basepoint");
    if (signed_area() < 0.0) std::reverse(pts_.begin(), pts_.end());
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(pts_[i] - pts_[(i + 1) % n]) == 0.0) throw PreconditionError("repeated boundary sample");
    require_simple();
    compute_derivatives();
    compute_extent();
    build_buckets();
    if (!contains(basepoint_)) throw PreconditionError("basepoint must lie strictly inside the boundary");
    compute_osculating_radii();
  }

  std::size_t size() const { return pts_.size(); }
  const std::vector<Complex>& samples() const { return pts_; }
  const std::vector<double>& curvature() const { return curvature_; }
  Complex basepoint() const { return basepoint_; }
  double diameter() const { return diameter_; }
  Complex bounding_center() const { return bound_center_; }
  double bounding_radius() const { return bound_radius_; }
  Complex box_min() const { return box_min_; }
  Complex box_max() const { return box_max_; }
  const OsculatingRadii& osculating_radii() const { return radii_; }

  Complex hermite(std::size_t seg, double s) const {
    const auto [p0, t0, p1, t1] = segment(seg);
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * t0 + (-2 * s3 + 3 * s2) * p1 + (s3 - s2) * t1;
  }

  Complex hermite_derivative(std::size_t seg, double s) const {
    const auto [p0, t0, p1, t1] = segment(seg);
    const double s2 = s * s;
    return (6 * s2 - 6 * s) * p0 + (3 * s2 - 4 * s + 1) * t0 + (-6 * s2 + 6 * s) * p1 + (3 * s2 - 2 * s) * t1;
  }

  /// Nearest curve point, no uniqueness check.
  BoundaryProjection project(Complex z) const {
    const std::size_t i = nearest_sample(z);
    return refine_near(z, i);
  }

  /// Nearest curve point; throws AmbiguityError when a second, well separated
  /// boundary point is equally near to within 1e−9.
  BoundaryProjection unique_projection(Complex z) const {
    const std::size_t n = pts_.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = std::abs(pts_[i] - z);
    const double best_sample = *std::min_element(d.begin(), d.end());
    std::vector<BoundaryProjection> minima;
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] > d[(i + n - 1) % n] || d[i] > d[(i + 1) % n]) continue;
      if (d[i] > best_sample + 2.0 * max_spacing_) continue;
      minima.push_back(refine_near(z, i));
    }
    auto best = std::min_element(minima.begin(), minima.end(),
                                 [](const auto& a, const auto& b) { return a.distance < b.distance; });
    for (const auto& m : minima) {
      if (std::abs(m.point - best->point) > 1e-6 && std::abs(m.distance - best->distance) <= 1e-9)
        throw AmbiguityError("nearest boundary point is not unique");
    }
    return *best;
  }

  /// Distance from z to the curve (any z).
  double distance(Complex z) const { return project(z).distance; }

  bool contains(Complex z) const {
    if (outside_box(z)) return false;
    return interior_side(z, project(z));
  }

  /// Projection and membership from a single nearest-point search.
  std::pair<BoundaryProjection, bool> locate(Complex z) const {
    const BoundaryProjection proj = project(z);
    return {proj, !outside_box(z) && interior_side(z, proj)};
  }

  Normals normals_at(Complex p) const {
    const BoundaryProjection proj = project(p);
    if (proj.distance > kBoundaryTolerance) throw PreconditionError("point is not on the boundary");
    return {proj.outward, -proj.outward};
  }

 private:
  struct Segment {
    Complex p0, t0, p1, t1;
  };

  bool outside_box(Complex z) const {
    return z.real() < box_min_.real() || z.imag() < box_min_.imag() || z.real() > box_max_.real() ||
           z.imag() > box_max_.imag();
  }

  bool interior_side(Complex z, const BoundaryProjection& proj) const {
    if (proj.distance < kInteriorTolerance) return false;
    if (proj.distance < 2.0 * max_spacing_) return (std::conj(z - proj.point) * proj.outward).real() < 0.0;
    return crossing_parity(z);
  }

  Segment segment(std::size_t seg) const {
    const std::size_t n = pts_.size();
    const std::size_t j = (seg + 1) % n;
    return {pts_[seg], d1_[seg], pts_[j], d1_[j]};
  }

  Complex hermite_second(std::size_t seg, double s) const {
    const auto [p0, t0, p1, t1] = segment(seg);
    return (12 * s - 6) * p0 + (6 * s - 4) * t0 + (-12 * s + 6) * p1 + (6 * s - 2) * t1;
  }

  double signed_area() const {
    double a = 0.0;
    const std::size_t n = pts_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Complex p = pts_[i], q = pts_[(i + 1) % n];
      a += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * a;
  }

  static double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

  static bool segments_cross(Complex a, Complex b, Complex c, Complex d) {
    const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
  }

  /// Sweep over segments sorted by their left x-extent.
  void require_simple() const {
    const std::size_t n = pts_.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto lo = [&](std::size_t i) { return std::min(pts_[i].real(), pts_[(i + 1) % n].real()); };
    auto hi = [&](std::size_t i) { return std::max(pts_[i].real(), pts_[(i + 1) % n].real()); };
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lo(a) < lo(b); });
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = order[k];
      for (std::size_t m = k + 1; m < n && lo(order[m]) <= hi(i); ++m) {
        const std::size_t j = order[m];
        if (j == (i + 1) % n || i == (j + 1) % n) continue;
        if (segments_cross(pts_[i], pts_[(i + 1) % n], pts_[j], pts_[(j + 1) % n]))
          throw PreconditionError("smooth boundary is self-intersecting");
      }
    }
  }

  void compute_derivatives() {
    const std::size_t n = pts_.size();
    d1_.resize(n);
    curvature_.resize(n);
    auto at = [&](std::ptrdiff_t k) { return pts_[static_cast<std::size_t>((k % static_cast<std::ptrdiff_t>(n) + n) % n)]; };
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::ptrdiff_t>(i);
      const Complex first = (-at(k + 2) + 8.0 * at(k + 1) - 8.0 * at(k - 1) + at(k - 2)) / 12.0;
      const Complex second = (-at(k + 2) + 16.0 * at(k + 1) - 30.0 * at(k) + 16.0 * at(k - 1) - at(k - 2)) / 12.0;
      const double speed = std::abs(first);
      if (!(speed > 0.0)) throw NumericError("degenerate boundary parameterization");
      d1_[i] = first;
      curvature_[i] = cross(first, second) / (speed * speed * speed);
      if (!std::isfinite(curvature_[i])) throw NumericError("curvature estimate is not finite");
    }
  }

  void compute_extent() {
    const std::size_t n = pts_.size();
    box_min_ = box_max_ = pts_[0];
    Complex centroid(0.0);
    max_spacing_ = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex p = pts_[i];
      box_min_ = {std::min(box_min_.real(), p.real()), std::min(box_min_.imag(), p.imag())};
      box_max_ = {std::max(box_max_.real(), p.real()), std::max(box_max_.imag(), p.imag())};
      centroid += p;
      const double step = std::abs(pts_[(i + 1) % n] - p);
      max_spacing_ = std::max(max_spacing_, step);
      total += step;
    }
    mean_spacing_ = total / static_cast<double>(n);
    centroid /= static_cast<double>(n);
    diameter_ = 0.0;
    bound_radius_ = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      bound_radius_ = std::max(bound_radius_, std::abs(pts_[i] - centroid));
      for (std::size_t j = i + 1; j < n; ++j) diameter_ = std::max(diameter_, std::abs(pts_[i] - pts_[j]));
    }
    bound_center_ = centroid;
    // Hermite arcs bulge past the sample polygon by at most a fraction of the spacing.
    bound_radius_ += max_spacing_;
  }

  std::int64_t bucket_key(std::int64_t ix, std::int64_t iy) const { return ix * 1000003 + iy; }

  void bucket_coords(Complex z, std::int64_t& ix, std::int64_t& iy) const {
    ix = static_cast<std::int64_t>(std::floor((z.real() - box_min_.real()) / cell_));
    iy = static_cast<std::int64_t>(std::floor((z.imag() - box_min_.imag()) / cell_));
  }

  void build_buckets() {
    cell_ = 2.0 * mean_spacing_;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      std::int64_t ix, iy;
      bucket_coords(pts_[i], ix, iy);
      buckets_[bucket_key(ix, iy)].push_back(i);
    }
    nx_ = static_cast<std::int64_t>((box_max_.real() - box_min_.real()) / cell_) + 1;
    ny_ = static_cast<std::int64_t>((box_max_.imag() - box_min_.imag()) / cell_) + 1;
  }

  std::size_t nearest_sample(Complex z) const {
    // A linear scan of squared distances beats ring-by-ring hashing from deep
    // interior points unless the boundary is very finely sampled.
    if (pts_.size() <= 8192) return nearest_sample_brute(z);
    std::int64_t cx, cy;
    bucket_coords(z, cx, cy);
    const std::int64_t reach = std::max(nx_, ny_) + 2;
    if (cx < -4 || cy < -4 || cx > nx_ + 4 || cy > ny_ + 4) return nearest_sample_brute(z);
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::int64_t ring = 0; ring <= reach; ++ring) {
      for (std::int64_t dx = -ring; dx <= ring; ++dx) {
        for (std::int64_t dy = -ring; dy <= ring; ++dy) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          auto it = buckets_.find(bucket_key(cx + dx, cy + dy));
          if (it == buckets_.end()) continue;
          for (std::size_t i : it->second) {
            const double d = std::abs(pts_[i] - z);
            if (d < best_d) best_d = d, best = i;
          }
        }
      }
      if (best_d <= static_cast<double>(ring) * cell_) return best;
    }
    return best;
  }

  std::size_t nearest_sample_brute(Complex z) const {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      const double d = std::norm(pts_[i] - z);
      if (d < best_d) best_d = d, best = i;
    }
    return best;
  }

  BoundaryProjection refine_near(Complex z, std::size_t i) const {
    const std::size_t n = pts_.size();
    double best_d = std::numeric_limits<double>::infinity();
    std::size_t best_seg = i;
    double best_s = 0.0;
    for (std::size_t back = 0; back < 4; ++back) {
      const std::size_t seg = (i + n + 2 - back) % n;  // segments i+1, i, i-1, i-2
      double s = 0.0, ds = 0.0;
      double local = std::numeric_limits<double>::infinity();
      for (double s0 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double d = std::abs(hermite(seg, s0) - z);
        if (d < local) local = d, s = s0;
      }
      for (int it = 0; it < 30; ++it) {
        const Complex diff = hermite(seg, s) - z;
        const Complex h1 = hermite_derivative(seg, s);
        const Complex h2 = hermite_second(seg, s);
        const double g = (std::conj(diff) * h1).real();
        double gp = std::norm(h1) + (std::conj(diff) * h2).real();
        if (gp <= 0.0) gp = std::norm(h1);
        ds = -g / gp;
        const double next = std::clamp(s + ds, 0.0, 1.0);
        ds = next - s;
        s = next;
        if (std::abs(ds) < 1e-15) break;
      }
      const double d = std::abs(hermite(seg, s) - z);
      if (d < best_d) best_d = d, best_seg = seg, best_s = s;
    }
    const Complex tangent = hermite_derivative(best_seg, best_s);
    const Complex outward = Complex(0.0, -1.0) * tangent / std::abs(tangent);
    return {hermite(best_seg, best_s), best_d, outward};
  }

  bool crossing_parity(Complex z) const {
    bool inside = false;
    const std::size_t n = pts_.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Complex a = pts_[i], b = pts_[j];
      if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
        const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
        if (z.real() < x) inside = !inside;
      }
    }
    return inside;
  }

  /// Largest radius (from the curvature estimate, then shrunk in 5% steps)
  /// for which every tangent disc on the given side stays clear of the samples.
  double validated_radius(double radius, double side) const {
    const std::size_t n = pts_.size();
    for (int attempt = 0; attempt < 200; ++attempt) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const Complex outward = Complex(0.0, -1.0) * d1_[i] / std::abs(d1_[i]);
        const Complex center = pts_[i] + side * radius * outward;
        for (std::size_t j = 0; j < n; ++j) {
          if (std::abs(pts_[j] - center) < radius * (1.0 - 1e-7)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) return radius;
      radius *= 0.95;
    }
    throw NumericError("could not find a valid osculating radius");
  }

  void compute_osculating_radii() {
    const double kmax = *std::max_element(curvature_.begin(), curvature_.end());
    const double kmin = *std::min_element(curvature_.begin(), curvature_.end());
    if (!(kmax > 0.0)) throw NumericError("boundary has no positively curved arc");
    radii_.interior = validated_radius(1.0 / kmax, -1.0);
    const double exterior = kmin < 0.0 ? 1.0 / -kmin : 10.0 * diameter_;
    radii_.exterior = validated_radius(exterior, 1.0);
    radii_.exterior_unbounded = false;
  }

  std::vector<Complex> pts_;
  std::vector<Complex> d1_;
  std::vector<double> curvature_;
  Complex basepoint_;
  Complex box_min_, box_max_;
  Complex bound_center_;
  double bound_radius_ = 0.0;
  double diameter_ = 0.0;
  double max_spacing_ = 0.0;
  double mean_spacing_ = 0.0;
  double cell_ = 1.0;
  std::int64_t nx_ = 0, ny_ = 0;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets_;
  OsculatingRadii radii_;
};

/// Samples of the ellipse x²/a² + y²/b² = 1 at uniform parameter, counterclockwise.
inline std::vector<Complex> ellipse_samples(double a, double b, std::size_t n = 512, Complex center = 0.0) {
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    out[k] = center + Complex(a * std::cos(t), b * std::sin(t));
  }
  return out;
}

class Domain {
 public:
  using Variant = std::variant<UnitDisc, UpperHalfPlane, Annulus, std::shared_ptr<const SmoothBoundary>>;

  Domain() : rep_(UnitDisc{}) {}

  static Domain unit_disc() { return Domain(UnitDisc{}); }
  static Domain upper_half_plane() { return Domain(UpperHalfPlane{}); }
  static Domain annulus(double r_inner) {
    if (!(r_inner > 0.0 && r_inner < 1.0)) throw PreconditionError("annulus needs 0 < r_inner < 1");
    return Domain(Annulus{r_inner});
  }
  static Domain smooth(std::vector<Complex> boundary, Complex basepoint) {
    return Domain(std::make_shared<const SmoothBoundary>(std::move(boundary), basepoint));
  }
  static Domain ellipse(double a, double b, std::size_t n = 512) {
    return smooth(ellipse_samples(a, b, n), Complex(0.0));
  }

  const Variant& representation() const { return rep_; }
  bool is_disc() const { return std::holds_alternative<UnitDisc>(rep_); }
  bool is_half_plane() const { return std::holds_alternative<UpperHalfPlane>(rep_); }
  bool is_annulus() const { return std::holds_alternative<Annulus>(rep_); }
  bool is_smooth() const { return std::holds_alternative<std::shared_ptr<const SmoothBoundary>>(rep_); }
  bool is_bounded() const { return !is_half_plane(); }
  double annulus_radius() const { return std::get<Annulus>(rep_).r_inner; }
  const SmoothBoundary& smooth_boundary() const {
    return *std::get<std::shared_ptr<const SmoothBoundary>>(rep_);
  }

  std::string name() const {
    if (is_disc()) return "disc";
    if (is_half_plane()) return "halfplane";
    if (is_annulus()) return "annulus";
    return "smooth";
  }

  bool contains(Complex z) const {
    if (!is_finite(z)) return false;
    if (is_disc()) return std::abs(z) < 1.0 - kInteriorTolerance;
    if (is_half_plane()) return z.imag() > kInteriorTolerance;
    if (is_annulus()) {
      const double m = std::abs(z);
      return m > annulus_radius() + kInteriorTolerance && m < 1.0 - kInteriorTolerance;
    }
    return smooth_boundary().contains(z);
  }

  /// Euclidean distance to the boundary from any point of the plane.
  double unsigned_boundary_distance(Complex z) const {
    if (is_disc()) return std::abs(1.0 - std::abs(z));
    if (is_half_plane()) return std::abs(z.imag());
    if (is_annulus()) {
      const double m = std::abs(z);
      return std::min(std::abs(1.0 - m), std::abs(m - annulus_radius()));
    }
    return smooth_boundary().distance(z);
  }

  /// δ(z) for interior z.
  double boundary_distance(Complex z) const {
    require_interior(z);
    return unsigned_boundary_distance(z);
  }

  /// Nearest boundary point and outward normal without a uniqueness check.
  BoundaryProjection project(Complex z) const {
    if (is_disc()) {
      const double m = std::abs(z);
      const Complex u = m > 0.0 ? z / m : Complex(1.0);
      return {u, std::abs(1.0 - m), u};
    }
    if (is_half_plane()) return {Complex(z.real(), 0.0), std::abs(z.imag()), Complex(0.0, -1.0)};
    if (is_annulus()) {
      const double m = std::abs(z), r = annulus_radius();
      const Complex u = m > 0.0 ? z / m : Complex(1.0);
      if (std::abs(1.0 - m) <= std::abs(m - r)) return {u, std::abs(1.0 - m), u};
      return {r * u, std::abs(m - r), -u};
    }
    return smooth_boundary().project(z);
  }

  /// π(z): the unique nearest boundary point of an interior z.
  Complex nearest_boundary_point(Complex z) const {
    require_interior(z);
    if (is_disc()) {
      if (std::abs(z) < kBoundaryTolerance) throw AmbiguityError("every boundary point is nearest to the center");
      return z / std::abs(z);
    }
    if (is_half_plane()) return {z.real(), 0.0};
    if (is_annulus()) {
      const double m = std::abs(z), r = annulus_radius();
      if (std::abs((1.0 - m) - (m - r)) <= kBoundaryTolerance)
        throw AmbiguityError("point is equidistant from both boundary circles");
      return project(z).point;
    }
    return smooth_boundary().unique_projection(z).point;
  }

  bool on_boundary(Complex p, double tol = kBoundaryTolerance) const {
    return is_finite(p) && unsigned_boundary_distance(p) <= tol;
  }

  Normals normals(Complex p) const {
    if (!on_boundary(p)) throw PreconditionError("point is not on the boundary");
    if (is_smooth()) return smooth_boundary().normals_at(p);
    const Complex out = project(p).outward;
    return {out, -out};
  }

  OsculatingRadii osculating_radii() const {
    if (is_disc()) return {1.0, std::numeric_limits<double>::infinity(), true};
    if (is_half_plane()) throw PreconditionError("osculating radii need a bounded domain");
    if (is_annulus()) {
      const double r = annulus_radius();
      return {std::min(r, 0.5 * (1.0 - r)), r, false};
    }
    return smooth_boundary().osculating_radii();
  }

  double diameter() const {
    if (is_disc() || is_annulus()) return 2.0;
    if (is_half_plane()) return std::numeric_limits<double>::infinity();
    return smooth_boundary().diameter();
  }

  /// A disc containing the domain (bounded domains only).
  std::pair<Complex, double> bounding_circle() const {
    if (is_disc() || is_annulus()) return {Complex(0.0), 1.0};
    if (is_half_plane()) throw PreconditionError("the half-plane is unbounded");
    return {smooth_boundary().bounding_center(), smooth_boundary().bounding_radius()};
  }

  void require_interior(Complex z) const {
    if (!contains(z)) throw PreconditionError("point is not interior to the " + name() + " domain");
  }

 private:
  explicit Domain(Variant v) : rep_(std::move(v)) {}
  Variant rep_;
};

inline bool contains(const Domain& domain, Complex z) { return domain.contains(z); }
inline double boundary_distance(const Domain& domain, Complex z) { return domain.boundary_distance(z); }
inline Complex nearest_boundary_point(const Domain& domain, Complex z) { return domain.nearest_boundary_point(z); }
inline Normals normals(const Domain& domain, Complex p) { return domain.normals(p); }
inline OsculatingRadii osculating_radii(const Domain& domain) { return domain.osculating_radii(); }

/// z ∈ Γ_α(p) = {z : |z − p| < α·δ(z)}.
inline bool in_nontangential_region(const Domain& domain, Complex p, double alpha, Complex z) {
  if (!(alpha > 1.0)) throw PreconditionError("approach aperture alpha must exceed 1");
  if (!domain.on_boundary(p)) throw PreconditionError("approach vertex must lie on the boundary");
  return std::abs(z - p) < alpha * domain.boundary_distance(z);
}

}  // namespace invmetric
