#pragma once

// Infinitesimal metrics: closed forms where they exist, certified
// [lower, upper] brackets elsewhere.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "invmetric/complex.hpp"
#include "invmetric/domains.hpp"
#include "invmetric/holomaps.hpp"

namespace invmetric {

enum class MetricKind { kPoincare, kKobayashi, kCaratheodory, kQuasihyperbolic };

inline const char* to_string(MetricKind m) {
  switch (m) {
    case MetricKind::kPoincare: return "poincare";
    case MetricKind::kKobayashi: return "kobayashi";
    case MetricKind::kCaratheodory: return "caratheodory";
    case MetricKind::kQuasihyperbolic: return "quasihyperbolic";
  }
  return "unknown";
}

inline MetricKind metric_from_string(const std::string& s) {
  if (s == "poincare") return MetricKind::kPoincare;
  if (s == "kobayashi") return MetricKind::kKobayashi;
  if (s == "caratheodory") return MetricKind::kCaratheodory;
  if (s == "quasihyperbolic") return MetricKind::kQuasihyperbolic;
  throw PreconditionError("unknown metric '" + s + "'");
}

/// Exact value (lower == upper) or a [lower, upper] bracket.
struct DensityBound {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;

  static DensityBound exact_value(double v) { return {v, v, true}; }

  static DensityBound bracket(double lower, double upper) {
    if (!(lower >= 0.0) || !std::isfinite(upper))
      throw NumericError("density bracket endpoints must be finite and non-negative");
    if (lower > upper * (1.0 + 1e-12)) throw NumericError("density bracket inverted (lower > upper)");
    return {lower, std::max(lower, upper), false};
  }

  DensityBound scaled(double factor) const { return {lower * factor, upper * factor, exact}; }
  double width() const { return upper - lower; }
};

inline double poincare_density(Complex p, TangentVector xi) {
  require_finite(p, "point");
  if (!(std::abs(p) < 1.0)) throw PreconditionError("Poincare density needs |P| < 1");
  return xi.length() / (1.0 - std::norm(p));
}

/// ρ(a, b) = |a − b|/|1 − āb|.
inline double pseudohyperbolic(Complex a, Complex b) {
  if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0))
    throw PreconditionError("pseudohyperbolic distance needs points in the unit disc");
  return std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
}

namespace detail {

/// Interior projection on a smooth domain, one nearest-point search.
inline BoundaryProjection require_smooth_interior(const SmoothBoundary& boundary, Complex z) {
  require_finite(z, "point");
  const auto [proj, inside] = boundary.locate(z);
  if (!inside) throw PreconditionError("point is not in the interior of the domain");
  return proj;
}

}  // namespace detail

inline double quasihyperbolic_density(const Domain& domain, Complex z, TangentVector xi) {
  require_finite(xi.xi, "tangent vector");
  if (domain.is_smooth()) return xi.length() / detail::require_smooth_interior(domain.smooth_boundary(), z).distance;
  return xi.length() / domain.boundary_distance(z);
}

namespace detail {

/// Kobayashi density per unit |ξ| of a round annulus {R < |w − q| < R̃} at a
/// point at distance rho from q. inner_log = log(rho/R), outer_log = log(R̃/rho),
/// passed separately so that neither boundary loses precision.
inline double round_annulus_density(double rho, double inner_log, double outer_log) {
  const double width = inner_log + outer_log;
  const double angle = kPi * std::min(inner_log, outer_log) / width;
  return kPi / (2.0 * width * rho * std::sin(angle));
}

}  // namespace detail

/// Exact Kobayashi density of {r < |z| < 1}: the Poincaré metric pushed down
/// through the covering exp: {log r < Re w < 0} → annulus. The strip of width
/// h = log(1/r) carries density π/(2h sin(π x/h)), x the distance to its left
/// edge, and dw = dz/z, so
///   F(z, ξ) = π|ξ| / (2h|z| sin(π log(|z|/r)/h)).
/// Every deck transformation is an isometry, so all lifts give this value.
inline double annulus_kobayashi_density(double r_inner, Complex z, TangentVector xi) {
  const double m = std::abs(z);
  if (!(m > r_inner && m < 1.0)) throw PreconditionError("point is not inside the annulus");
  return xi.length() * detail::round_annulus_density(m, std::log(m / r_inner), -std::log(m));
}

/// Upper-half-plane density through the Cayley isometry.
inline double half_plane_density(Complex z, TangentVector xi) {
  const Complex w = cayley(z);
  return std::abs(cayley_derivative(z)) * xi.length() / (1.0 - std::norm(w));
}

namespace detail {

/// Per-unit-|ξ| bracket on a smooth domain.
///  upper: inscribed disc D(z, δ) and, inside the tubular neighborhood, the
///         interior osculating disc of radius r tangent at π(z);
///  lower: the comparison region U = D(q, R̃) \ D̄(q, R) with q the exterior
///         osculating center at π(z) and D(q, R̃) ⊇ Ω, together with the
///         bounding disc of Ω.
inline DensityBound smooth_kobayashi_unit(const SmoothBoundary& boundary, Complex z, const BoundaryProjection& proj) {
  const double delta = proj.distance;
  const OsculatingRadii& radii = boundary.osculating_radii();

  double upper = 1.0 / delta;
  const double r = radii.interior;
  if (delta < r) upper = std::min(upper, r / (delta * (2.0 * r - delta)));

  const double big_r = radii.exterior;
  const Complex q = proj.point + big_r * proj.outward;
  const Complex center = boundary.bounding_center();
  const double enclosing = std::abs(q - center) + boundary.bounding_radius();
  const double rho = big_r + delta;
  double lower = 0.0;
  if (enclosing > rho) lower = round_annulus_density(rho, std::log1p(delta / big_r), std::log(enclosing / rho));
  const double bound = boundary.bounding_radius();
  const double offset = std::abs(z - center);
  if (offset < bound) lower = std::max(lower, bound / (bound * bound - offset * offset));
  return DensityBound::bracket(lower, upper);
}

inline DensityBound smooth_kobayashi_unit(const SmoothBoundary& boundary, Complex z) {
  return smooth_kobayashi_unit(boundary, z, boundary.project(z));
}


}  // namespace detail

struct AnalyticDisc {
  HolomorphicMap map;  // D → Ω
  Complex preimage;    // map(preimage) = z
};

struct AnalyticDiscFamily {
  std::vector<AnalyticDisc> members;
};

struct DiscValuedFamily {
  std::vector<HolomorphicMap> members;  // Ω → D
};

using CandidateFamily = std::variant<AnalyticDiscFamily, DiscValuedFamily>;

/// Preimage under AnnulusCovering of z in the sheet shifted by 2πk.
inline Complex annulus_covering_preimage(double r_inner, Complex z, int deck = 0) {
  const double m = std::abs(z);
  if (!(m > r_inner && m < 1.0)) throw PreconditionError("point is not inside the annulus");
  const double h = -std::log(r_inner);
  const Complex w = std::log(z) + Complex(0.0, kTwoPi * deck);
  const Complex u = std::exp(Complex(0.0, -kPi / h) * w);
  return (u - Complex(0, 1)) / (u + Complex(0, 1));
}

/// Candidate analytic discs through z: affine inscribed discs ζ ↦ z + δe^{iφ}ζ
/// over n_directions angles, plus the domain's extremal or near-extremal discs
/// (Möbius discs, Cayley-pulled discs, covering-map discs, osculating disc).
inline AnalyticDiscFamily analytic_disc_family(const Domain& domain, Complex z, int n_directions = 32) {
  domain.require_interior(z);
  AnalyticDiscFamily family;
  const double delta = domain.boundary_distance(z);
  for (int k = 0; k < n_directions; ++k) {
    const Complex scale = std::polar(delta, kTwoPi * k / n_directions);
    family.members.push_back({AffineMap{scale, z}, Complex(0.0)});
  }
  if (domain.is_disc()) {
    for (int k = 0; k < 8; ++k) {
      const MobiusTransform m = mobius_compose(MobiusTransform::from_origin(z), MobiusTransform::rotation(kTwoPi * k / 8));
      family.members.push_back({HolomorphicMap(m), Complex(0.0)});
    }
  } else if (domain.is_half_plane()) {
    const HolomorphicMap to_half_plane = RationalMap{{Complex(0, 1), Complex(0, 1)}, {Complex(1), Complex(-1)}};
    family.members.push_back(
        {compose(to_half_plane, HolomorphicMap(MobiusTransform::from_origin(cayley(z)))), Complex(0.0)});
  } else if (domain.is_annulus()) {
    const double r = domain.annulus_radius();
    // other sheets give the same value but their preimages crowd the unit circle
    family.members.push_back({AnnulusCovering{r}, annulus_covering_preimage(r, z)});
  } else {
    const double r = domain.osculating_radii().interior;
    if (delta < r) {
      const BoundaryProjection proj = domain.project(z);
      const Complex center = proj.point - r * proj.outward;
      family.members.push_back({AffineMap{Complex(r), center}, (z - center) / r});
    }
  }
  return family;
}

/// Candidate maps Ω → D.
inline DiscValuedFamily disc_valued_family(const Domain& domain, Complex z) {
  domain.require_interior(z);
  DiscValuedFamily family;
  if (domain.is_disc()) {
    family.members.push_back(HolomorphicMap::identity());
    family.members.push_back(HolomorphicMap(MobiusTransform::to_origin(z)));
  } else if (domain.is_half_plane()) {
    family.members.push_back(RationalMap{{Complex(0, -1), Complex(1)}, {Complex(0, 1), Complex(1)}});
  } else if (domain.is_annulus()) {
    const double r = domain.annulus_radius();
    for (int n = 1; n <= 4; ++n) {
      std::vector<Complex> power(static_cast<std::size_t>(n) + 1, Complex(0.0));
      power.back() = 1.0;
      family.members.push_back(Polynomial{power});
      family.members.push_back(RationalMap{{Complex(std::pow(r, n))}, power});
    }
  } else {
    const auto [center, radius] = domain.bounding_circle();
    family.members.push_back(AffineMap{Complex(1.0 / radius), -center / radius});
    const double reach = std::abs(z - center) + radius;
    family.members.push_back(AffineMap{Complex(1.0 / reach), -z / reach});
    // w ↦ R/(w − q) sends the complement of the exterior osculating disc into D.
    const double big_r = domain.osculating_radii().exterior;
    const BoundaryProjection proj = domain.project(z);
    const Complex q = proj.point + big_r * proj.outward;
    family.members.push_back(RationalMap{{Complex(big_r)}, {-q, Complex(1.0)}});
  }
  return family;
}

/// min over members of |ξ|/|(f ∘ ϕ_{−a})′(0)| = |ξ|/(|f′(a)|(1 − |a|²)).
inline double kobayashi_upper_from_family(const AnalyticDiscFamily& family, Complex z, TangentVector xi) {
  if (family.members.empty()) throw PreconditionError("candidate family is empty");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& member : family.members) {
    const Complex a = member.preimage;
    if (!(std::abs(a) < 1.0)) throw PreconditionError("analytic disc preimage must lie in the unit disc");
    const Jet j = member.map.jet(a);
    if (std::abs(j.value - z) > 1e-9 * std::max(1.0, std::abs(z)))
      throw PreconditionError("analytic disc does not pass through the base point");
    const double stretch = std::abs(j.derivative) * (1.0 - std::norm(a));
    if (stretch > 0.0) best = std::min(best, xi.length() / stretch);
  }
  return best;
}

/// max over members of |(ϕ_{f(z)} ∘ f)′(z) ξ| = |f′(z)ξ|/(1 − |f(z)|²).
inline double caratheodory_lower_from_family(const DiscValuedFamily& family, Complex z, TangentVector xi) {
  if (family.members.empty()) throw PreconditionError("candidate family is empty");
  double best = 0.0;
  for (const auto& f : family.members) {
    const Jet j = f.jet(z);
    if (!(std::abs(j.value) < 1.0)) throw PreconditionError("candidate map is not disc-valued at the base point");
    best = std::max(best, std::abs(j.derivative) * xi.length() / (1.0 - std::norm(j.value)));
  }
  return best;
}

inline DensityBound kobayashi_density(const Domain& domain, Complex z, TangentVector xi) {
  require_finite(xi.xi, "tangent vector");
  if (domain.is_smooth()) {
    const SmoothBoundary& boundary = domain.smooth_boundary();
    const BoundaryProjection proj = detail::require_smooth_interior(boundary, z);
    if (xi.length() == 0.0) return DensityBound::exact_value(0.0);
    return detail::smooth_kobayashi_unit(boundary, z, proj).scaled(xi.length());
  }
  domain.require_interior(z);
  const double len = xi.length();
  if (len == 0.0) return DensityBound::exact_value(0.0);
  if (domain.is_disc()) return DensityBound::exact_value(len / (1.0 - std::norm(z)));
  if (domain.is_half_plane()) return DensityBound::exact_value(half_plane_density(z, xi));
  if (domain.is_annulus()) return DensityBound::exact_value(annulus_kobayashi_density(domain.annulus_radius(), z, xi));
  return detail::smooth_kobayashi_unit(domain.smooth_boundary(), z).scaled(len);
}

inline DensityBound caratheodory_density(const Domain& domain, Complex z, TangentVector xi,
                                         const CandidateFamily& family) {
  domain.require_interior(z);
  require_finite(xi.xi, "tangent vector");
  const auto* maps = std::get_if<DiscValuedFamily>(&family);
  if (!maps) throw PreconditionError("Caratheodory bounds need a disc-valued candidate family");
  if (maps->members.empty()) throw PreconditionError("candidate family is empty");
  if (xi.length() == 0.0) return DensityBound::exact_value(0.0);
  if (domain.is_disc() || domain.is_half_plane()) return kobayashi_density(domain, z, xi);
  const double lower = caratheodory_lower_from_family(*maps, z, xi);
  const double upper = kobayashi_density(domain, z, xi).upper;
  if (lower > upper + 1e-9) throw NumericError("Caratheodory lower bound exceeds the Kobayashi upper bound");
  return DensityBound::bracket(std::min(lower, upper), upper);
}

inline DensityBound caratheodory_density(const Domain& domain, Complex z, TangentVector xi) {
  domain.require_interior(z);
  return caratheodory_density(domain, z, xi, CandidateFamily(disc_valued_family(domain, z)));
}

/// Density of the requested metric at (z, ξ).
inline DensityBound density(const Domain& domain, MetricKind metric, Complex z, TangentVector xi) {
  switch (metric) {
    case MetricKind::kPoincare:
      if (domain.is_disc()) {
        domain.require_interior(z);
        return DensityBound::exact_value(poincare_density(z, xi));
      }
      if (domain.is_half_plane()) return kobayashi_density(domain, z, xi);
      throw PreconditionError("the Poincare metric is defined only on the disc and half-plane");
    case MetricKind::kKobayashi: return kobayashi_density(domain, z, xi);
    case MetricKind::kCaratheodory: return caratheodory_density(domain, z, xi);
    case MetricKind::kQuasihyperbolic: return DensityBound::exact_value(quasihyperbolic_density(domain, z, xi));
  }
  throw PreconditionError("unknown metric");
}

inline bool metric_available(const Domain& domain, MetricKind metric) {
  return metric != MetricKind::kPoincare || domain.is_disc() || domain.is_half_plane();
}

/// (1 − |f(a)|²)/(1 − |a|²) − |f′(a)|, non-negative for disc self-maps.
inline double schwarz_pick_gap(const HolomorphicMap& f, Complex a) {
  require_finite(a, "point");
  if (!(std::abs(a) < 1.0)) throw PreconditionError("Schwarz-Pick gap needs |a| < 1");
  if (disc_image_bound(f, 512) > 1.0 + 1e-9) throw PreconditionError("map is not a self-map of the disc");
  const Jet j = f.jet(a);
  return (1.0 - std::norm(j.value)) / (1.0 - std::norm(a)) - std::abs(j.derivative);
}

/// Constants c, C with c ≤ F·δ(z)/|ξ| ≤ C for the Kobayashi bracket whenever
/// δ(z) ≤ delta_max, from the osculating radii r (interior) and R (exterior):
///   lower: sin x ≤ x in the round-annulus density gives F·δ ≥ R/(2(R + δ));
///   upper: the interior osculating disc gives F·δ ≤ r/(2r − δ) for δ < r,
///          and the inscribed disc gives F·δ ≤ 1 always.
struct ComparisonConstants {
  double lower = 0.0;
  double upper = 0.0;
};

inline ComparisonConstants boundary_comparison_constants(const Domain& domain, double delta_max) {
  if (!(delta_max > 0.0)) throw PreconditionError("delta_max must be positive");
  const OsculatingRadii radii = domain.osculating_radii();
  ComparisonConstants out;
  out.lower = radii.exterior_unbounded ? 0.5 : radii.exterior / (2.0 * (radii.exterior + delta_max));
  out.upper = delta_max < radii.interior ? radii.interior / (2.0 * radii.interior - delta_max) : 1.0;
  return out;
}

}  // namespace invmetric
