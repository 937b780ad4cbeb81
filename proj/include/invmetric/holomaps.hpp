#pragma once

// Holomorphic maps with exact evaluation and exact analytic derivatives.

#include <algorithm>
#include <cmath>
#include <utility>
#include <variant>
#include <vector>

#include "invmetric/complex.hpp"
#include "invmetric/random.hpp"

namespace invmetric {

/// Coefficients in ascending degree.
struct Polynomial {
  std::vector<Complex> coefficients;
};

/// e^{iφ} ∏ (z − a_k)/(1 − ā_k z), every |a_k| < 1.
struct BlaschkeProduct {
  std::vector<Complex> zeros;
  double phase = 0.0;
};

struct RationalMap {
  std::vector<Complex> numerator;
  std::vector<Complex> denominator;
};

struct MobiusMap {
  MobiusTransform transform;
};

/// z ↦ scale·z + offset.
struct AffineMap {
  Complex scale{1.0, 0.0};
  Complex offset{0.0, 0.0};
};

/// Universal covering of the annulus {r < |z| < 1} by the unit disc:
/// disc → upper half-plane (Cayley inverse) → strip {0 < Im < π} (log) →
/// strip {log r < Re < 0} (multiplication by i·h/π, h = log(1/r)) → exp.
/// Sends 0 to √r.
struct AnnulusCovering {
  double r_inner = 0.5;
};

class HolomorphicMap;

/// maps[0] ∘ maps[1] ∘ … ; the last entry is applied first.
struct Composition {
  std::vector<HolomorphicMap> maps;
};

/// Value and first derivative at a point.
struct Jet {
  Complex value;
  Complex derivative;
};

class HolomorphicMap {
 public:
  using Variant = std::variant<Polynomial, BlaschkeProduct, RationalMap, MobiusMap, AffineMap,
                               AnnulusCovering, Composition>;

  HolomorphicMap() : rep_(Polynomial{{Complex(0.0), Complex(1.0)}}) {}
  HolomorphicMap(Polynomial p) : rep_(validated(std::move(p))) {}
  HolomorphicMap(BlaschkeProduct b) : rep_(validated(std::move(b))) {}
  HolomorphicMap(RationalMap r) : rep_(validated(std::move(r))) {}
  HolomorphicMap(MobiusMap m) : rep_(std::move(m)) {}
  HolomorphicMap(MobiusTransform m) : rep_(MobiusMap{m}) {}
  HolomorphicMap(AffineMap a) : rep_(a) {}
  HolomorphicMap(AnnulusCovering c) : rep_(validated(c)) {}
  HolomorphicMap(Composition c) : rep_(validated(std::move(c))) {}

  static HolomorphicMap identity() { return Polynomial{{Complex(0.0), Complex(1.0)}}; }
  static HolomorphicMap constant(Complex c) { return Polynomial{{c}}; }

  const Variant& representation() const { return rep_; }

  Jet jet(Complex z) const;
  Complex operator()(Complex z) const { return jet(z).value; }

 private:
  static Polynomial validated(Polynomial p) {
    if (p.coefficients.empty()) throw PreconditionError("polynomial needs at least one coefficient");
    for (auto c : p.coefficients) require_finite(c, "polynomial coefficient");
    return p;
  }
  static BlaschkeProduct validated(BlaschkeProduct b) {
    for (auto a : b.zeros) {
      require_finite(a, "Blaschke zero");
      if (std::abs(a) >= 1.0) throw PreconditionError("Blaschke zeros must lie strictly inside the disc");
    }
    if (!std::isfinite(b.phase)) throw PreconditionError("Blaschke phase must be finite");
    return b;
  }
  static RationalMap validated(RationalMap r) {
    if (r.numerator.empty() || r.denominator.empty())
      throw PreconditionError("rational map needs numerator and denominator coefficients");
    for (auto c : r.numerator) require_finite(c, "numerator coefficient");
    for (auto c : r.denominator) require_finite(c, "denominator coefficient");
    return r;
  }
  static AnnulusCovering validated(AnnulusCovering c) {
    if (!(c.r_inner > 0.0 && c.r_inner < 1.0))
      throw PreconditionError("annulus covering needs 0 < r_inner < 1");
    return c;
  }
  static Composition validated(Composition c) {
    if (c.maps.empty()) throw PreconditionError("composition must be non-empty");
    return c;
  }

  Variant rep_;
};

namespace detail {

inline Jet horner(const std::vector<Complex>& coeffs, Complex z) {
  Complex value(0.0), deriv(0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    deriv = deriv * z + value;
    value = value * z + *it;
  }
  return {value, deriv};
}

inline Jet annulus_covering_jet(double r_inner, Complex zeta) {
  const Complex one_minus = 1.0 - zeta;
  if (std::abs(one_minus) < kDenominatorFloor) throw PoleError("annulus covering is singular at 1");
  const double h = -std::log(r_inner);
  const Complex i(0.0, 1.0);
  const Complex u = i * (1.0 + zeta) / one_minus;
  if (std::abs(u) < kDenominatorFloor) throw PoleError("annulus covering is singular at -1");
  const Complex du = 2.0 * i / (one_minus * one_minus);
  const Complex w = i * (h / kPi) * std::log(u);
  const Complex value = std::exp(w);
  return {value, value * i * (h / kPi) * du / u};
}

}  // namespace detail

inline Jet HolomorphicMap::jet(Complex z) const {
  require_finite(z, "point");
  return std::visit(
      [z](const auto& f) -> Jet {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          return detail::horner(f.coefficients, z);
        } else if constexpr (std::is_same_v<T, BlaschkeProduct>) {
          Complex value = std::polar(1.0, f.phase), deriv(0.0);
          for (auto a : f.zeros) {
            const Complex den = 1.0 - std::conj(a) * z;
            if (std::abs(den) < kDenominatorFloor) throw PoleError("Blaschke factor has a pole here");
            const Complex factor = (z - a) / den;
            const Complex dfactor = (1.0 - std::norm(a)) / (den * den);
            deriv = deriv * factor + value * dfactor;
            value *= factor;
          }
          return {value, deriv};
        } else if constexpr (std::is_same_v<T, RationalMap>) {
          const Jet n = detail::horner(f.numerator, z);
          const Jet d = detail::horner(f.denominator, z);
          if (std::abs(d.value) < kDenominatorFloor) throw PoleError("rational map has a pole here");
          return {n.value / d.value,
                  (n.derivative * d.value - n.value * d.derivative) / (d.value * d.value)};
        } else if constexpr (std::is_same_v<T, MobiusMap>) {
          return {f.transform(z), f.transform.derivative(z)};
        } else if constexpr (std::is_same_v<T, AffineMap>) {
          return {f.scale * z + f.offset, f.scale};
        } else if constexpr (std::is_same_v<T, AnnulusCovering>) {
          return detail::annulus_covering_jet(f.r_inner, z);
        } else {
          Jet acc{z, Complex(1.0)};
          for (auto it = f.maps.rbegin(); it != f.maps.rend(); ++it) {
            const Jet inner = it->jet(acc.value);
            acc = {inner.value, inner.derivative * acc.derivative};
          }
          return acc;
        }
      },
      rep_);
}

inline Complex eval(const HolomorphicMap& f, Complex z) { return f.jet(z).value; }
inline Complex eval_derivative(const HolomorphicMap& f, Complex z) { return f.jet(z).derivative; }

/// f ∘ g. Nested compositions are flattened; no other canonicalization happens.
inline HolomorphicMap compose(const HolomorphicMap& f, const HolomorphicMap& g) {
  Composition out;
  for (const HolomorphicMap* part : {&f, &g}) {
    if (const auto* c = std::get_if<Composition>(&part->representation()))
      out.maps.insert(out.maps.end(), c->maps.begin(), c->maps.end());
    else
      out.maps.push_back(*part);
  }
  return HolomorphicMap(std::move(out));
}

namespace detail {

/// Winding number of the closed sample loop around 0.
inline int winding_about_origin(const std::vector<Complex>& loop) {
  double total = 0.0;
  for (std::size_t k = 0; k < loop.size(); ++k)
    total += std::arg(loop[(k + 1) % loop.size()] / loop[k]);
  return static_cast<int>(std::lround(total / kTwoPi));
}

inline void require_no_poles_in_closed_disc(const HolomorphicMap& f, int n) {
  std::visit(
      [n](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RationalMap>) {
          std::vector<Complex> loop;
          loop.reserve(static_cast<std::size_t>(n));
          for (int k = 0; k < n; ++k) {
            const Complex d = horner(g.denominator, std::polar(1.0, kTwoPi * k / n)).value;
            if (std::abs(d) < 1e-12) throw PoleError("rational map has a pole on the unit circle");
            loop.push_back(d);
          }
          if (winding_about_origin(loop) != 0)
            throw PoleError("rational map has a pole inside the unit disc");
        } else if constexpr (std::is_same_v<T, MobiusMap>) {
          // pole at 1/ā lies outside the closed disc
        } else if constexpr (std::is_same_v<T, AnnulusCovering>) {
          throw PoleError("annulus covering is singular on the unit circle");
        } else if constexpr (std::is_same_v<T, Composition>) {
          // only the innermost stage sees the closed disc itself
          require_no_poles_in_closed_disc(g.maps.back(), n);
        }
      },
      f.representation());
}

}  // namespace detail

/// max |f(e^{iθ_k})| over n uniformly spaced boundary samples, which bounds
/// sup_D |f| up to sampling error by the maximum principle.
inline double disc_image_bound(const HolomorphicMap& f, int n_boundary_samples) {
  if (n_boundary_samples <= 0) throw PreconditionError("need a positive number of boundary samples");
  detail::require_no_poles_in_closed_disc(f, std::max(n_boundary_samples, 64));
  double best = 0.0;
  for (int k = 0; k < n_boundary_samples; ++k)
    best = std::max(best, std::abs(f(std::polar(1.0, kTwoPi * k / n_boundary_samples))));
  return best;
}

/// Extensional equality on a fixed 64-point sample of the disc.
inline bool maps_equal(const HolomorphicMap& f, const HolomorphicMap& g, double tol = 1e-12) {
  for (int k = 0; k < 64; ++k) {
    const double radius = 0.9 * (k % 8 + 1) / 8.0;
    const Complex z = std::polar(radius, kTwoPi * (k / 8) / 8.0 + 0.1 * k);
    if (std::abs(f(z) - g(z)) > tol) return false;
  }
  return true;
}

/// Random disc self-map: Blaschke product of degree 1–4 with zeros uniform in
/// the disc of radius 0.9 and uniform phase, optionally scaled by s ∈ (0, 1].
inline HolomorphicMap random_blaschke(Rng& rng, bool scaled = false, int max_degree = 4) {
  BlaschkeProduct b;
  const int degree = rng.integer(1, max_degree);
  for (int k = 0; k < degree; ++k) b.zeros.push_back(rng.in_disc(0.9));
  b.phase = rng.uniform(0.0, kTwoPi);
  if (!scaled) return b;
  const double s = 1.0 - rng.uniform();  // (0, 1]
  return compose(AffineMap{Complex(s), Complex(0.0)}, HolomorphicMap(std::move(b)));
}

inline MobiusTransform random_mobius(Rng& rng, double max_radius = 0.95) {
  const Complex a = rng.in_disc(max_radius);
  return {a, rng.uniform(0.0, kTwoPi)};
}

}  // namespace invmetric
