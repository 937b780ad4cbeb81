#include <catch_amalgamated.hpp>

#include "invmetric/invmetric.hpp"
#include "oracles.hpp"

using namespace invmetric;
using Catch::Matchers::WithinAbs;

namespace {

double rho(Complex a, Complex b) { return std::abs(a - b) / std::abs(1.0 - std::conj(a) * b); }

}  // namespace

TEST_CASE("mobius apply examples") {
  CHECK(mobius_apply(MobiusTransform::identity(), {0.3, 0.4}) == Complex(0.3, 0.4));
  CHECK(std::abs(mobius_apply(MobiusTransform(0.5, 0.0), 0.5)) < 1e-16);
  CHECK_THAT(mobius_apply(MobiusTransform(0.5, 0.0), 0.0).real(), WithinAbs(-0.5, 1e-16));
}

TEST_CASE("mobius apply rejects points outside the disc in strict mode") {
  CHECK_THROWS_AS(mobius_apply(MobiusTransform(0.2, 0.0), 1.0, DiscCheck::kStrict), PreconditionError);
  CHECK_NOTHROW(mobius_apply(MobiusTransform(0.2, 0.0), 1.0));
  CHECK_THROWS_AS(MobiusTransform(1.0, 0.0), PreconditionError);
}

TEST_CASE("mobius derivative examples") {
  CHECK(mobius_derivative(MobiusTransform::identity(), {0.1, -0.7}) == Complex(1.0));
  CHECK_THAT(std::abs(mobius_derivative(MobiusTransform(0.5, 0.0), 0.5)), WithinAbs(4.0 / 3.0, 1e-15));
  CHECK_THAT(mobius_derivative(MobiusTransform(0.5, 0.0), 0.0).real(), WithinAbs(0.75, 1e-16));
}

TEST_CASE("mobius derivative matches finite differences") {
  Rng rng(7);
  for (int k = 0; k < 200; ++k) {
    const MobiusTransform m = random_mobius(rng, 0.9);
    const Complex z = rng.in_disc(0.9);
    const Complex fd = oracle::fd_derivative([&](Complex s) { return m(s); }, z, 1e-5);
    CHECK(std::abs(fd - mobius_derivative(m, z)) < 1e-7 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("mobius inverse examples") {
  const MobiusTransform id = mobius_inverse(MobiusTransform::identity());
  CHECK(id.center() == Complex(0.0));
  CHECK(id.theta() == 0.0);

  const MobiusTransform inv = mobius_inverse(MobiusTransform(0.5, 0.0));
  CHECK_THAT(inv.center().real(), WithinAbs(-0.5, 1e-16));
  CHECK(inv.theta() == 0.0);

  const MobiusTransform rot = mobius_inverse(MobiusTransform::rotation(kPi / 3));
  CHECK_THAT(rot.theta(), WithinAbs(kTwoPi - kPi / 3, 1e-15));

  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const MobiusTransform m = random_mobius(rng);
    const Complex z = rng.in_disc(0.99);
    CHECK(std::abs(mobius_inverse(m)(m(z)) - z) < 1e-14);
  }
}

TEST_CASE("mobius composition") {
  Rng rng(11);
  const MobiusTransform m = random_mobius(rng);
  const MobiusTransform left = mobius_compose(MobiusTransform::identity(), m);
  CHECK(std::abs(left.center() - m.center()) < 1e-15);
  CHECK_THAT(left.theta(), WithinAbs(m.theta(), 1e-15));

  const MobiusTransform back = mobius_compose(m, mobius_inverse(m));
  CHECK(std::abs(back.center()) < 1e-15);
  CHECK(std::min(back.theta(), kTwoPi - back.theta()) < 1e-14);

  const MobiusTransform pair = mobius_compose(MobiusTransform(0.3, 0.0), MobiusTransform(-0.3, 0.0));
  CHECK(std::abs(pair.center()) < 1e-14);
  for (int k = 0; k < 100; ++k) {
    const Complex z = rng.in_disc(0.99);
    CHECK(std::abs(pair(z) - z) < 1e-14);
  }
}

TEST_CASE("mobius composition is pointwise and associative") {
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const MobiusTransform a = random_mobius(rng), b = random_mobius(rng), c = random_mobius(rng);
    const Complex z = rng.in_disc(0.95);
    CHECK(std::abs(mobius_compose(a, b)(z) - a(b(z))) < 1e-13);
    const Complex lhs = mobius_compose(mobius_compose(a, b), c)(z);
    const Complex rhs = mobius_compose(a, mobius_compose(b, c))(z);
    CHECK(std::abs(lhs - rhs) < 1e-13);
    CHECK(std::abs(mobius_compose(a, b).center()) < 1.0);
  }
}

TEST_CASE("mobius maps preserve the disc and the pseudohyperbolic distance") {
  Rng rng(9);
  for (int k = 0; k < 10000; ++k) {
    const MobiusTransform m = random_mobius(rng);
    const Complex z = rng.in_disc(0.999), w = rng.in_disc(0.999);
    REQUIRE(std::abs(m(z)) < 1.0);
    if (k % 10 == 0) CHECK_THAT(rho(m(z), m(w)), WithinAbs(rho(z, w), 1e-12));
  }
}

TEST_CASE("cayley map") {
  CHECK(std::abs(cayley({0.0, 1.0})) < 1e-16);
  CHECK(std::abs(cayley_inverse(0.0) - Complex(0.0, 1.0)) < 1e-16);
  Rng rng(2);
  for (int k = 0; k < 100; ++k) {
    const Complex z(rng.uniform(-5.0, 5.0), rng.uniform(0.01, 5.0));
    CHECK(std::abs(cayley_inverse(cayley(z)) - z) < 1e-14 * std::max(1.0, std::abs(z)));
    CHECK(std::abs(cayley(z)) < 1.0);
    const Complex fd = oracle::fd_derivative(cayley, z, 1e-6);
    CHECK(std::abs(fd - cayley_derivative(z)) < 1e-7);
  }
  CHECK_THROWS_AS(cayley({0.0, -1.0}), PreconditionError);
  CHECK_THROWS_AS(cayley_inverse(1.5), PreconditionError);
}

TEST_CASE("seeded generator is reproducible") {
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) CHECK(a.uniform() == b.uniform());
  Rng c(1);
  for (int k = 0; k < 1000; ++k) {
    const double u = c.uniform();
    CHECK((u >= 0.0 && u < 1.0));
  }
}
