#pragma once

// Complex points, tangent vectors and the automorphism group of the unit disc.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "invmetric/errors.hpp"

namespace invmetric {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Denominators smaller than this in magnitude are treated as poles.
inline constexpr double kDenominatorFloor = 1e-300;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) throw PreconditionError(std::string(what) + " must be finite");
}

/// A tangent vector at an implicit base point.
struct TangentVector {
  Complex xi{1.0, 0.0};

  TangentVector() = default;
  constexpr explicit TangentVector(Complex v) : xi(v) {}
  constexpr explicit TangentVector(double re, double im = 0.0) : xi(re, im) {}

  double length() const { return std::abs(xi); }
  TangentVector scaled(Complex c) const { return TangentVector(c * xi); }
};

/// Reduces an angle to [0, 2π).
inline double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

enum class DiscCheck { kNone, kStrict };

/// Disc automorphism z ↦ e^{iθ}(z − a)/(1 − āz), stored in this canonical
/// (center, rotation) form so that equal maps have equal parameters.
class MobiusTransform {
 public:
  MobiusTransform() = default;

  MobiusTransform(Complex center, double theta) : center_(center), theta_(normalize_angle(theta)) {
    require_finite(center, "Mobius center");
    if (!std::isfinite(theta)) throw PreconditionError("Mobius rotation must be finite");
    if (std::abs(center) >= 1.0) throw PreconditionError("Mobius center must satisfy |a| < 1");
  }

  static MobiusTransform identity() { return {}; }
  static MobiusTransform rotation(double theta) { return {Complex(0.0), theta}; }
  /// ϕ_a, the automorphism sending a to 0.
  static MobiusTransform to_origin(Complex a) { return {a, 0.0}; }
  /// ϕ_{−a}, the automorphism sending 0 to a.
  static MobiusTransform from_origin(Complex a) { return {-a, 0.0}; }

  Complex center() const { return center_; }
  double theta() const { return theta_; }
  Complex rotation_factor() const { return std::polar(1.0, theta_); }

  Complex operator()(Complex z) const {
    const Complex den = 1.0 - std::conj(center_) * z;
    if (std::abs(den) < kDenominatorFloor) throw PoleError("Mobius denominator vanishes");
    return rotation_factor() * (z - center_) / den;
  }

  Complex derivative(Complex z) const {
    const Complex den = 1.0 - std::conj(center_) * z;
    if (std::abs(den) < kDenominatorFloor) throw PoleError("Mobius denominator vanishes");
    return rotation_factor() * (1.0 - std::norm(center_)) / (den * den);
  }

 private:
  Complex center_{0.0, 0.0};
  double theta_ = 0.0;
};

inline Complex mobius_apply(const MobiusTransform& m, Complex z, DiscCheck check = DiscCheck::kNone) {
  require_finite(z, "point");
  if (check == DiscCheck::kStrict && std::abs(z) >= 1.0)
    throw PreconditionError("point must lie in the open unit disc");
  return m(z);
}

inline Complex mobius_derivative(const MobiusTransform& m, Complex z) {
  require_finite(z, "point");
  return m.derivative(z);
}

/// Inverse of e^{iθ}ϕ_a is e^{−iθ}ϕ_{−a e^{iθ}}.
inline MobiusTransform mobius_inverse(const MobiusTransform& m) {
  return {-m.center() * m.rotation_factor(), -m.theta()};
}

/// m1 ∘ m2 (apply m2 first), re-derived in canonical form from the product of
/// the 2×2 coefficient matrices [[e^{iθ}, −e^{iθ}a], [−ā, 1]].
inline MobiusTransform mobius_compose(const MobiusTransform& m1, const MobiusTransform& m2) {
  const Complex u1 = m1.rotation_factor(), a1 = m1.center();
  const Complex u2 = m2.rotation_factor(), a2 = m2.center();
  const Complex p1 = u1, q1 = -u1 * a1, r1 = -std::conj(a1), s1 = 1.0;
  const Complex p2 = u2, q2 = -u2 * a2, r2 = -std::conj(a2), s2 = 1.0;
  const Complex p = p1 * p2 + q1 * r2;
  const Complex q = p1 * q2 + q1 * s2;
  const Complex s = r1 * q2 + s1 * s2;
  if (std::abs(p) < kDenominatorFloor || std::abs(s) < kDenominatorFloor)
    throw NumericError("degenerate Mobius composition");
  const Complex a = -q / p;
  const double theta = std::arg(p / s);
  if (std::abs(a) >= 1.0) throw NumericError("Mobius composition left the disc group");
  return {a, theta};
}

/// Cayley map z ↦ (z − i)/(z + i), upper half-plane onto the unit disc, i ↦ 0.
inline Complex cayley(Complex z) {
  require_finite(z, "point");
  if (!(z.imag() > 0.0)) throw PreconditionError("cayley: point must lie in the upper half-plane");
  return (z - Complex(0, 1)) / (z + Complex(0, 1));
}

inline Complex cayley_derivative(Complex z) {
  if (!(z.imag() > 0.0)) throw PreconditionError("cayley: point must lie in the upper half-plane");
  const Complex den = z + Complex(0, 1);
  return Complex(0, 2) / (den * den);
}

/// w ↦ i(1 + w)/(1 − w), unit disc onto the upper half-plane, 0 ↦ i.
inline Complex cayley_inverse(Complex w) {
  require_finite(w, "point");
  if (!(std::abs(w) < 1.0)) throw PreconditionError("cayley_inverse: point must lie in the unit disc");
  return Complex(0, 1) * (1.0 + w) / (1.0 - w);
}

inline Complex cayley_inverse_derivative(Complex w) {
  if (!(std::abs(w) < 1.0)) throw PreconditionError("cayley_inverse: point must lie in the unit disc");
  const Complex den = 1.0 - w;
  return Complex(0, 2) / (den * den);
}

}  // namespace invmetric
