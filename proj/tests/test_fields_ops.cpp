#include <doctest.h>

#include "alefs/fields_ops.hpp"
#include "support.hpp"

using namespace alefs;

namespace {

VectorField sample(const DiskGrid& grid, const std::function<Vec2(double, double)>& f) {
  VectorField out(grid.size(), 2);
  for (int n = 0; n < grid.size(); ++n) out.row(n) = f(grid.x(n), grid.y(n)).transpose();
  return out;
}

Vec2 quad_field(double x, double y) { return Vec2(x * x, x * y); }

}  // namespace

TEST_SUITE("fields_ops") {
  TEST_CASE("divergence and deformation of a quadratic field") {
    const DiskGrid grid(8, 32);
    const VectorField w = sample(grid, quad_field);
    const ScalarField d = divergence(grid, w);
    const TensorField D = def_tensor(grid, w);
    for (int n = 0; n < grid.size(); ++n) {
      const double x = grid.x(n), y = grid.y(n);
      CHECK(std::abs(d[n] - 3.0 * x) < 1e-10);
      CHECK(std::abs(D(n, 0) - 4.0 * x) < 1e-10);
      CHECK(std::abs(D(n, 1) - y) < 1e-10);
      CHECK(std::abs(D(n, 2) - y) < 1e-10);
      CHECK(std::abs(D(n, 3) - 2.0 * x) < 1e-10);
    }
  }

  TEST_CASE("L on the identity map is laplacian plus grad div") {
    const auto g = ReferenceCurve::circle(32);
    const DiskGrid grid(8, 32);
    const AleMap m = harmonic_extend(HeightField::Zero(32), g, grid);
    const VectorField L = apply_L(m, sample(grid, quad_field));
    CHECK((L.col(0).array() - 5.0).abs().maxCoeff() < 1e-9);
    CHECK(L.col(1).cwiseAbs().maxCoeff() < 1e-9);
  }

  TEST_CASE("stress under a scaling map") {
    const auto g = ReferenceCurve::circle(32);
    const DiskGrid grid(8, 32);
    const double lam = 1.2;
    const AleMap m = harmonic_extend(HeightField::Constant(32, lam - 1.0), g, grid);
    const VectorField w = sample(grid, quad_field);
    const TensorField S = stress_field(m, w), D = def_tensor(grid, w);
    CHECK((S - D / (lam * lam)).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("static circle traction balances constant pressure") {
    const int nt = 32;
    const auto g = ReferenceCurve::circle(nt);
    const DiskGrid grid(8, nt);
    const AleMap m = harmonic_extend(HeightField::Zero(nt), g, grid);
    const double sigma = 1.0;
    const BoundaryVector t = traction(m, VectorField::Zero(grid.size(), 2), ScalarField::Constant(grid.size(), sigma));
    // -q N with q = sigma b0 equals sigma times the circle curvature times N
    CHECK((t + sigma * g.normal()).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("traction of a linear strain") {
    const int nt = 32;
    const auto g = ReferenceCurve::circle(nt);
    const DiskGrid grid(8, nt);
    const AleMap m = harmonic_extend(HeightField::Zero(nt), g, grid);
    const VectorField w = sample(grid, [](double x, double y) { return Vec2(x, -y); });
    const BoundaryVector t = traction(m, w, ScalarField::Zero(grid.size()));
    for (int j = 0; j < nt; ++j) {
      const double c = std::cos(grid.theta(j)), s = std::sin(grid.theta(j));
      CHECK(std::abs(t(j, 0) - 2.0 * c) < 1e-10);
      CHECK(std::abs(t(j, 1) + 2.0 * s) < 1e-10);
    }
  }

  TEST_CASE("forcing on the identity map is the transport term") {
    const auto g = ReferenceCurve::circle(32);
    const DiskGrid grid(8, 32);
    const AleMap m = harmonic_extend(HeightField::Zero(32), g, grid);
    const VectorField w = sample(grid, quad_field);
    const VectorField f = forcing_F(m, VectorField::Zero(grid.size(), 2), w);
    for (int n = 0; n < grid.size(); ++n) {
      const double x = grid.x(n), y = grid.y(n);
      CHECK(std::abs(f(n, 0) + 2.0 * x * x * x) < 1e-10);
      CHECK(std::abs(f(n, 1) + 2.0 * x * x * y) < 1e-10);
    }
    CHECK(forcing_F(m, VectorField::Zero(grid.size(), 2), VectorField::Zero(grid.size(), 2)).cwiseAbs().maxCoeff() ==
          0.0);
  }

  TEST_CASE("piola time derivative of scaling maps") {
    const auto g = ReferenceCurve::circle(16);
    const DiskGrid grid(6, 16);
    const AleMap a = harmonic_extend(HeightField::Zero(16), g, grid);
    const AleMap b = harmonic_extend(HeightField::Constant(16, 0.25), g, grid);
    CHECK(piola_time_derivative(a, a, 0.1).cwiseAbs().maxCoeff() == 0.0);
    const TensorField pt = piola_time_derivative(a, b, 0.5);
    const double expect = (1.0 / 1.25 - 1.0) / 0.5;
    CHECK((pt.col(0).array() - expect).abs().maxCoeff() < 1e-13);
    CHECK(pt.col(1).cwiseAbs().maxCoeff() < 1e-13);
  }

  TEST_CASE("bilinear form is symmetric and nonnegative on the identity map") {
    const auto g = ReferenceCurve::circle(32);
    const DiskGrid grid(8, 32);
    const AleMap m = harmonic_extend(HeightField::Zero(32), g, grid);
    const VectorField w = sample(grid, quad_field);
    const VectorField p = sample(grid, [](double x, double y) { return Vec2(y * y - x, x * y * y); });
    CHECK(bilinear_B(m, w, p) == doctest::Approx(bilinear_B(m, p, w)).epsilon(1e-12));
    CHECK(bilinear_B(m, w, w) > 0.0);
    // rigid rotation has zero deformation
    const VectorField rot = sample(grid, [](double x, double y) { return Vec2(-y, x); });
    CHECK(std::abs(bilinear_B(m, rot, rot)) < 1e-12);
  }
}
