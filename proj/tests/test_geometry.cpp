#include <doctest.h>

#include "alefs/errors.hpp"
#include "alefs/geometry.hpp"
#include "alefs/spectral.hpp"
#include "support.hpp"

using namespace alefs;
using alefs::testing::TrigSum;

namespace {

// Signed curvature of the polar curve r(s) = 1 + h(s), positive for the circle.
double polar_curvature(const TrigSum& h, double s) {
  const double r = 1.0 + h.eval(s), r1 = h.eval(s, 1), r2 = h.eval(s, 2);
  return (r * r + 2.0 * r1 * r1 - r * r2) / std::pow(r * r + r1 * r1, 1.5);
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("unit circle reference data") {
    const auto g = ReferenceCurve::circle(32);
    CHECK(g.length() == doctest::Approx(2.0 * M_PI));
    CHECK(g.is_unit_circle());
    for (int j = 0; j < 32; ++j) {
      CHECK(g.b0()[j] == doctest::Approx(1.0));
      CHECK(g.normal().row(j).dot(g.X().row(j)) == doctest::Approx(1.0));
      CHECK(std::abs(g.normal().row(j).dot(g.tangent().row(j))) < 1e-14);
    }
  }

  TEST_CASE("from_samples recovers circle curvature") {
    const int n = 64;
    BoundaryVector X(n, 2);
    for (int j = 0; j < n; ++j) X.row(j) << 2.0 * std::cos(2.0 * M_PI * j / n), 2.0 * std::sin(2.0 * M_PI * j / n);
    const auto g = ReferenceCurve::from_samples(X);
    CHECK(g.length() == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
    CHECK((g.b0().array() - 0.5).abs().maxCoeff() < 1e-10);
    CHECK(g.b0_prime().cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("arc derivatives of a trigonometric sum") {
    std::mt19937 rng(3);
    const auto t = TrigSum::random(rng, 10, 0.3);
    const auto g = ReferenceCurve::circle(64);
    for (int order = 1; order <= 3; ++order)
      CHECK((arc_derivative(t.sample(64), order, g) - t.sample(64, order)).cwiseAbs().maxCoeff() < 1e-11);
  }

  TEST_CASE("curvature of circles") {
    const auto g = ReferenceCurve::circle(64);
    CHECK((curvature(HeightField::Zero(64), g).array() + 1.0).abs().maxCoeff() <= 1e-12);
    for (double c : {-0.3, 0.1, 0.5}) {
      const HeightField h = HeightField::Constant(64, c);
      CHECK((curvature(h, g).array() + 1.0 / (1.0 + c)).abs().maxCoeff() <= 1e-10);
    }
  }

  TEST_CASE("curvature matches the polar curve formula") {
    std::mt19937 rng(11);
    const int n = 128;
    const auto g = ReferenceCurve::circle(n);
    for (int trial = 0; trial < 10; ++trial) {
      const auto t = TrigSum::random(rng, 12, 0.2);
      const BoundaryScalar k = curvature(t.sample(n), g);
      double err = 0.0;
      for (int j = 0; j < n; ++j) err = std::max(err, std::abs(k[j] + polar_curvature(t, g.s(j))));
      CHECK(err < 1e-8);
    }
  }

  TEST_CASE("metric and normals") {
    std::mt19937 rng(5);
    const int n = 64;
    const auto g = ReferenceCurve::circle(n);
    const auto t = TrigSum::random(rng, 6, 0.1);
    const HeightField h = t.sample(n);
    const BoundaryScalar gm = metric(h, g);
    const BoundaryVector un = unnormalized_normal(h, g), nn = unit_normal(h, g);
    for (int j = 0; j < n; ++j) {
      const double r = 1.0 + t.eval(g.s(j)), r1 = t.eval(g.s(j), 1);
      CHECK(gm[j] == doctest::Approx(r * r + r1 * r1).epsilon(1e-11));
      CHECK(un.row(j).norm() == doctest::Approx(std::sqrt(gm[j])).epsilon(1e-11));
      CHECK(nn.row(j).norm() == doctest::Approx(1.0).epsilon(1e-13));
      // tangent of the deformed curve: d/ds ((1 + h) N)
      const Eigen::RowVector2d tan(r1 * std::cos(g.s(j)) - r * std::sin(g.s(j)),
                                   r1 * std::sin(g.s(j)) + r * std::cos(g.s(j)));
      CHECK(std::abs(nn.row(j).dot(tan)) < 1e-11);
    }
  }

  TEST_CASE("regularized curvature reduces to curvature for unsmoothed height") {
    std::mt19937 rng(8);
    const auto g = ReferenceCurve::circle(64);
    const HeightField h = TrigSum::random(rng, 8, 0.15).sample(64);
    CHECK((regularized_curvature(h, h, g) - curvature(h, g)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((regularized_curvature(HeightField::Zero(64), HeightField::Zero(64), g).array() + 1.0)
              .abs()
              .maxCoeff() <= 1e-14);
  }

  TEST_CASE("curvature commutes with rotation by a grid shift") {
    std::mt19937 rng(21);
    const int n = 64, shift = 7;
    const auto g = ReferenceCurve::circle(n);
    const HeightField h = TrigSum::random(rng, 8, 0.15).sample(n);
    HeightField hs(n);
    for (int j = 0; j < n; ++j) hs[j] = h[(j + shift) % n];
    const BoundaryScalar k = curvature(h, g), ks = curvature(hs, g);
    double err = 0.0;
    for (int j = 0; j < n; ++j) err = std::max(err, std::abs(ks[j] - k[(j + shift) % n]));
    CHECK(err < 1e-12);
  }

  TEST_CASE("area and length") {
    const auto g = ReferenceCurve::circle(64);
    const double a = 0.05;
    CHECK(enclosed_area(testing::cos_mode(64, 3, a), g) == doctest::Approx(M_PI * (1.0 + a * a / 2.0)).epsilon(1e-13));
    CHECK(interface_length(HeightField::Constant(64, 0.2), g) == doctest::Approx(2.0 * M_PI * 1.2).epsilon(1e-13));
    CHECK(enclosed_area(HeightField::Constant(64, 0.2), g) == doctest::Approx(M_PI * 1.44).epsilon(1e-13));
  }

  TEST_CASE("laplace beltrami on the reference circle") {
    const auto g = ReferenceCurve::circle(32);
    const BoundaryScalar f = testing::cos_mode(32, 4);
    CHECK((laplace_beltrami(f, g) + 16.0 * f).cwiseAbs().maxCoeff() < 1e-11);
  }

  TEST_CASE("sobolev norm normalization") {
    const auto g = ReferenceCurve::circle(64);
    std::mt19937 rng(1);
    const auto f = TrigSum::random(rng, 5, 1.0).sample(64);
    CHECK(sobolev_norm(f, 0.0, g) == doctest::Approx(std::sqrt(f.squaredNorm() / 64)).epsilon(1e-12));
    // cos(3s) has |c_3|^2 = |c_-3|^2 = 1/4
    CHECK(sobolev_norm(testing::cos_mode(64, 3), 1.0, g) == doctest::Approx(std::sqrt(10.0 / 2.0)).epsilon(1e-12));
    CHECK(l2_norm(testing::cos_mode(64, 3), g) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  }

  TEST_CASE("admissibility") {
    const auto g = ReferenceCurve::circle(16);
    CHECK_THROWS_AS(check_admissible(HeightField::Constant(16, -1.0), g), AdmissibilityViolation);
    CHECK_NOTHROW(check_admissible(HeightField::Constant(16, -0.5), g));
  }

  TEST_CASE("spectral round trip") {
    std::mt19937 rng(2);
    const Eigen::VectorXd f = TrigSum::random(rng, 10, 1.0).sample(48);
    CHECK((spectral::synthesize(spectral::coefficients(f)) - f).cwiseAbs().maxCoeff() < 1e-14);
    const auto c = spectral::coefficients(f);
    CHECK(spectral::evaluate(c, 2.0 * M_PI * 5 / 48) == doctest::Approx(f[5]).epsilon(1e-13));
  }
}
