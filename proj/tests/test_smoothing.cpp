#include <doctest.h>

#include "alefs/errors.hpp"
#include "alefs/smoothing.hpp"
#include "support.hpp"

using namespace alefs;
using alefs::testing::TrigSum;

namespace {

// int eta_eps(t) cos(k t) dt by composite Simpson in t, normalized by the same rule.
double symbol_by_quadrature(double eps, int k) {
  const int m = 20000;
  const double dt = 2.0 * eps / m;
  double num = 0.0, den = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double t = -eps + i * dt;
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double e = MollifierKernel::profile(t / eps);
    num += w * e * std::cos(k * t);
    den += w * e;
  }
  return num / den;
}

}  // namespace

TEST_SUITE("smoothing") {
  TEST_CASE("mollified cosine is scaled by the kernel transform") {
    const int n = 128;
    const auto g = ReferenceCurve::circle(n);
    for (double eps : {0.05, 0.2, 0.7})
      for (int k : {1, 3, 10, 40}) {
        const double oracle = symbol_by_quadrature(eps, k);
        const BoundaryScalar out = mollify(testing::cos_mode(n, k), eps, g);
        CHECK((out - oracle * testing::cos_mode(n, k)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(oracle) <= 1.0);
      }
  }

  TEST_CASE("unit mass and mean preservation") {
    const auto g = ReferenceCurve::circle(64);
    std::mt19937 rng(4);
    const BoundaryScalar f = TrigSum::random(rng, 20, 1.0).sample(64);
    for (double eps : {0.01, 0.1, 1.0}) {
      CHECK(MollifierKernel(eps, g).symbol(0) == 1.0);
      CHECK(std::abs(mollify(f, eps, g).mean() - f.mean()) <= 1e-12);
    }
  }

  TEST_CASE("contraction in L2") {
    const auto g = ReferenceCurve::circle(64);
    std::mt19937 rng(9);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 20; ++trial) {
      BoundaryScalar f(64);
      for (auto& x : f) x = nd(rng);
      CHECK(l2_norm(mollify(f, 0.3, g), g) <= l2_norm(f, g) * (1.0 + 1e-14));
    }
  }

  TEST_CASE("profile is nonnegative with support in (-1, 1)") {
    for (double u = -1.5; u <= 1.5; u += 0.01) {
      CHECK(MollifierKernel::profile(u) >= 0.0);
      if (std::abs(u) >= 1.0) CHECK(MollifierKernel::profile(u) == 0.0);
    }
  }

  TEST_CASE("kernel support errors") {
    const auto g = ReferenceCurve::circle(32);
    CHECK_THROWS_AS(MollifierKernel(0.0, g), KernelSupportError);
    CHECK_THROWS_AS(MollifierKernel(-0.1, g), KernelSupportError);
    CHECK_THROWS_AS(MollifierKernel(M_PI / 2.0, g), KernelSupportError);
    CHECK_NOTHROW(MollifierKernel(M_PI / 2.0 - 1e-3, g));
  }

  TEST_CASE("mollifications with different widths commute") {
    const auto g = ReferenceCurve::circle(128);
    std::mt19937 rng(6);
    const BoundaryScalar f = TrigSum::random(rng, 30, 1.0).sample(128);
    const BoundaryScalar a = mollify(mollify(f, 0.3, g), 0.1, g), b = mollify(mollify(f, 0.1, g), 0.3, g);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
  }

  TEST_CASE("double mollification converges as eps shrinks") {
    const auto g = ReferenceCurve::circle(128);
    std::mt19937 rng(12);
    const HeightField h = TrigSum::random(rng, 10, 0.1).sample(128);
    double prev = 1e300;
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
      const double d = l2_norm(double_mollify(h, eps, g) - h, g);
      CHECK(d < prev);
      prev = d;
    }
  }

  TEST_CASE("commutator bound and its derivative") {
    const int n = 256;
    const auto g = ReferenceCurve::circle(n);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = TrigSum::random(rng, 8, 1.0), gg = TrigSum::random(rng, 8, 1.0);
      const double fp = f.sup(1), gl2 = l2_norm(gg.sample(n), g);
      double prev = 1e300, c_prev = 0.0;
      for (double eps : {0.2, 0.1, 0.05}) {
        const BoundaryScalar c = commutator(f.sample(n), gg.sample(n), eps, g);
        const double nc = l2_norm(c, g);
        CHECK(nc <= eps * fp * gl2 * 1.05);
        CHECK(nc < prev);
        prev = nc;
        const double C = l2_norm(arc_derivative(c, 1, g), g) / (fp * gl2);
        // Upper bound only: for smooth g the derivative also vanishes with eps.
        if (c_prev > 0.0) CHECK(C <= 2.0 * c_prev);
        c_prev = C;
      }
    }
  }

  TEST_CASE("damped height evolution without forcing decays exponentially") {
    const int n = 32;
    const auto g = ReferenceCurve::circle(n);
    const double eps = 0.3, dt = 0.01;
    HeightField h0 = testing::cos_mode(n, 2, 0.1);
    h0.array() += 0.25;
    const std::vector<BoundaryScalar> f(5, BoundaryScalar::Zero(n));
    const auto hs = damped_height_evolution(h0, f, eps, dt, 5, g);
    REQUIRE(hs.size() == 6);
    for (int m = 0; m <= 5; ++m) {
      HeightField expect = testing::cos_mode(n, 2, 0.1 * std::exp(-m * dt / (eps * eps)));
      expect.array() += 0.25;
      CHECK((hs[m] - expect).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }

  TEST_CASE("damped height evolution with constant forcing") {
    const int n = 32;
    const auto g = ReferenceCurve::circle(n);
    const double eps = 0.2, dt = 0.05;
    const HeightField h0 = testing::cos_mode(n, 2);
    const std::vector<BoundaryScalar> f(4, testing::cos_mode(n, 3));
    const auto hs = damped_height_evolution(h0, f, eps, dt, 4, g);
    const double e = std::exp(-4 * dt / (eps * eps));
    const HeightField expect = testing::cos_mode(n, 2, e) + testing::cos_mode(n, 3, -(1.0 - e) / 9.0);
    CHECK((hs.back() - expect).cwiseAbs().maxCoeff() <= 1e-13);
  }

  TEST_CASE("damped height evolution argument errors") {
    const auto g = ReferenceCurve::circle(16);
    const std::vector<BoundaryScalar> f(2, BoundaryScalar::Zero(16));
    CHECK_THROWS_AS(damped_height_evolution(HeightField::Zero(16), f, 0.0, 0.1, 2, g), DegenerateDamping);
    CHECK_THROWS(damped_height_evolution(HeightField::Zero(16), f, 0.1, 0.1, 3, g));
  }
}
