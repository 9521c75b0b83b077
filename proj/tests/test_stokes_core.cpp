#include <doctest.h>

#include <limits>
#include <random>

#include "alefs/errors.hpp"
#include "alefs/fields_ops.hpp"
#include "alefs/stokes_core.hpp"

using namespace alefs;

namespace {

const FeSystem& small_fe() {
  static const FeSystem fe{PolarMesh(4, 16)};
  return fe;
}

HarmonicMap identity_map(int nt) {
  const auto g = ReferenceCurve::circle(nt);
  return HarmonicMap(g.X());
}

}  // namespace

TEST_SUITE("stokes_core") {
  TEST_CASE("coefficient symmetry") {
    const DiskGrid grid(6, 16);
    CHECK_NOTHROW(check_symmetry(CoefficientTensor::isotropic(1.0, 0.0), grid));
    CHECK_THROWS_AS(check_symmetry(CoefficientTensor::isotropic(1.0, 0.5), grid), CoefficientSymmetryViolation);
    const auto a = CoefficientTensor::isotropic(1.0, 0.0, [](double x, double) { return 1.0 + 0.1 * x; });
    CHECK_NOTHROW(check_symmetry(a, grid));
    const double d = near_identity_distance(a, grid, 1.0, 0.0);
    CHECK(d > 0.0);
    CHECK(d < 0.1);
  }

  TEST_CASE("mass matrices integrate constants") {
    const FeSystem& fe = small_fe();
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(fe.velocity_dofs());
    CHECK(one.dot(fe.mass() * one) == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
    const Eigen::VectorXd p1 = Eigen::VectorXd::Ones(fe.pressure_dofs());
    CHECK(p1.dot(fe.pressure_mass() * p1) == doctest::Approx(M_PI).epsilon(1e-12));
    CHECK(fe.pressure_mean(p1 * 3.0) == doctest::Approx(3.0).epsilon(1e-12));
    // a constant velocity has no divergence and no boundary stiffness
    CHECK((fe.divergence() * one).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((fe.boundary_stiffness() * one).cwiseAbs().maxCoeff() < 1e-13);
  }

  TEST_CASE("divergence of an expansion field integrates to the boundary flux") {
    const FeSystem fe{PolarMesh(8, 32)};
    const Eigen::VectorXd w = fe_interpolate(fe.mesh(), [](double x, double y) { return Vec2(x, y); });
    const double total = (fe.divergence() * w).sum();
    CHECK(total == doctest::Approx(2.0 * M_PI).epsilon(1e-3));
  }

  TEST_CASE("multiplier solve is discretely divergence free") {
    const FeSystem& fe = small_fe();
    const Eigen::VectorXd load = fe.volume_load([](double x, double y) { return Vec2(y, x * x); });
    const SpMat K = fe.mass() + fe.viscous(identity_map(16));
    const MixedSolution s = solve_mixed(fe, K, load, 0.0, fe.boundary_dofs());
    CHECK(fe.div_norm(s.w) < 1e-12);
    for (int d : fe.boundary_dofs()) CHECK(s.w[d] == 0.0);
  }

  TEST_CASE("reused factorization matches a fresh solve") {
    const FeSystem& fe = small_fe();
    const SpMat K1 = fe.mass() * 100.0 + fe.viscous(identity_map(16));
    const auto g = ReferenceCurve::circle(16);
    BoundaryVector b = g.X();
    for (int j = 0; j < 16; ++j) b.row(j) *= 1.0 + 0.02 * std::cos(2.0 * g.s(j));
    const SpMat K2 = fe.mass() * 100.0 + fe.viscous(HarmonicMap(b));
    const Eigen::VectorXd rhs = fe.volume_load([](double x, double y) { return Vec2(1.0 + y, x); });
    MixedSolver solver(fe, 1e-6);
    solver.factor(K1);
    const MixedSolution reused = solver.solve(K2, rhs);
    CHECK(solver.refinements() > 0);
    const MixedSolution fresh = solve_mixed(fe, K2, rhs, 1e-6);
    CHECK((reused.w - fresh.w).cwiseAbs().maxCoeff() < 1e-10 * fresh.w.cwiseAbs().maxCoeff());
  }

  TEST_CASE("step operator is positive on random probes") {
    const FeSystem fe{PolarMesh(6, 16)};
    const auto g = ReferenceCurve::circle(16);
    BoundaryVector b = g.X();
    for (int j = 0; j < 16; ++j) b.row(j) *= 1.0 + 0.05 * std::cos(2.0 * g.s(j)) + 0.03 * std::sin(5.0 * g.s(j));
    const double dt = 1e-2, eps = 0.3;
    const SpMat K = SpMat(fe.mass() / dt) + fe.viscous(HarmonicMap(b)) + eps * eps * fe.boundary_stiffness();
    std::mt19937 rng(11);
    std::normal_distribution<double> nd;
    double smallest = std::numeric_limits<double>::infinity();
    for (int probe = 0; probe < 100; ++probe) {
      Eigen::VectorXd v(fe.velocity_dofs());
      for (auto& x : v) x = nd(rng);
      smallest = std::min(smallest, v.dot(K * v) / v.squaredNorm());
    }
    CHECK(smallest > 0.0);
  }

  TEST_CASE("static circle penalized step") {
    const FeSystem fe{PolarMesh(6, 32)};
    const double sigma = 1.0, theta = 1e-6;
    const Eigen::VectorXd load = fe.boundary_load([&](double t) { return Vec2(-sigma * std::cos(t), -sigma * std::sin(t)); });
    const MixedSolution s =
        solve_penalized_step(fe, identity_map(32), load, Eigen::VectorXd::Zero(fe.velocity_dofs()), 1e-3, theta, 0.1);
    // q = -Pi div w / theta = sigma needs the uniform compression w = -sigma theta (x, y) / 2
    CHECK(s.w.cwiseAbs().maxCoeff() == doctest::Approx(0.5 * sigma * theta).epsilon(1e-3));
    CHECK(fe.pressure_mean(s.q) == doctest::Approx(sigma).epsilon(1e-3));
    CHECK_THROWS(solve_penalized_step(fe, identity_map(32), load, Eigen::VectorXd::Zero(fe.velocity_dofs()), 0.0,
                                      theta, 0.1));
  }

  TEST_CASE("planted pressure is recovered") {
    const FeSystem& fe = small_fe();
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    Eigen::VectorXd q(fe.pressure_dofs());
    for (auto& x : q) x = nd(rng);
    const Eigen::VectorXd T = SpMat(fe.divergence().transpose()) * q;
    CHECK((recover_pressure_from_functional(fe, T) - q).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("variable stokes rejects unsymmetric coefficients") {
    const FeSystem fe{PolarMesh(6, 16)};
    const auto f = [](double, double) { return Vec2(1.0, 0.0); };
    CHECK_THROWS_AS(solve_variable_stokes(fe, CoefficientTensor::isotropic(1.0, 1.0), f, std::nullopt, StokesBc{}),
                    CoefficientSymmetryViolation);
    const StokesSolution s = solve_variable_stokes(fe, CoefficientTensor::isotropic(1.0, 0.0), f, std::nullopt, StokesBc{});
    CHECK(s.div_norm < 1e-6);
    CHECK(std::abs(fe.pressure_mean(s.q)) < 1e-10);
  }

  TEST_CASE("hydrostatic traction problem") {
    const FeSystem fe{PolarMesh(6, 16)};
    const double p0 = 0.7;
    StokesBc bc;
    bc.kind = StokesBc::Kind::traction;
    const StokesSolution s =
        solve_variable_stokes(fe, CoefficientTensor::isotropic(1.0, 0.0), [](double, double) { return Vec2(0.0, 0.0); },
                              [&](double t) { return Vec2(-p0 * std::cos(t), -p0 * std::sin(t)); }, bc);
    CHECK(s.w.cwiseAbs().maxCoeff() < 1e-8);
    // the weak traction balance gives q = +p0 for g = -p0 N
    CHECK((s.q.array() - p0).abs().maxCoeff() < 1e-8);
  }

  TEST_CASE("gradient forcing with no-slip gives rest") {
    const FeSystem fe{PolarMesh(6, 24)};
    const auto f = [](double x, double y) { return Vec2(2.0 * x, 2.0 * y); };
    const StokesSolution s = solve_variable_stokes(fe, CoefficientTensor::isotropic(1.0, 0.0), f, std::nullopt, StokesBc{});
    // r^2 is not in the pressure space, so w is only small at the discretization level
    CHECK(s.w.cwiseAbs().maxCoeff() < 1e-3);
    // q = r^2 - 1/2 up to a constant
    const Eigen::VectorXd expect = fe_interpolate_pressure(fe.mesh(), [](double x, double y) { return x * x + y * y - 0.5; });
    CHECK(fe.pressure_l2(s.q - expect) < 1e-2);
  }

  TEST_CASE("solve_div on a polynomial") {
    const DiskGrid grid(16, 32);
    ScalarField p(grid.size());
    for (int n = 0; n < grid.size(); ++n) {
      const double x = grid.x(n), y = grid.y(n);
      p[n] = 0.5 + x - 2.0 * x * y + y * y * y;
    }
    const DivSolution s = solve_div(p, grid);
    CHECK((divergence(grid, s.u) - p).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(s.mean == doctest::Approx(0.5 + 0.0).epsilon(1e-10));
  }
}
