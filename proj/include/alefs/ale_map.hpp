#pragma once

#include <array>
#include <complex>
#include <vector>

#include "alefs/disk_grid.hpp"
#include "alefs/geometry.hpp"

namespace alefs {

// Map value and derivatives at one point. F(i, j) = d_j psi^i, dF[m](i, j) = d_m d_j psi^i.
struct MapPoint {
  Vec2 psi;
  Mat2 F;
  std::array<Mat2, 2> dF;
};

// Harmonic extension of periodic boundary data into the unit disk. Each component is
// Re f(z) with f a polynomial in z = x + i y, so values and Cartesian derivatives of
// any order are available pointwise.
class HarmonicMap {
 public:
  HarmonicMap() = default;
  // Boundary samples b(theta_j), one row per sample.
  explicit HarmonicMap(const BoundaryVector& boundary);

  MapPoint sample(double x, double y) const;
  // Laplacian of both components from the polar form u_rr + u_r / r + u_tt / r^2.
  Vec2 polar_laplacian(double x, double y) const;

 private:
  // Polynomial coefficients per component.
  std::array<std::vector<std::complex<double>>, 2> a_;
  // Fourier coefficients per component for the polar evaluation.
  std::array<Eigen::VectorXcd, 2> c_;
};

// Grid samples of psi, grad psi, J and A built from the mollified height.
class AleMap {
 public:
  AleMap(const DiskGrid& grid, const HeightField& h_ee, const HarmonicMap& map);

  const DiskGrid& grid() const { return grid_; }
  const HeightField& boundary_height() const { return h_ee_; }
  const HarmonicMap& harmonic() const { return map_; }

  const VectorField& psi() const { return psi_; }
  const TensorField& grad_psi() const { return F_; }
  // Second derivatives, column c of the pair is d_c of grad_psi.
  const std::array<TensorField, 2>& hess_psi() const { return dF_; }
  const ScalarField& J() const { return J_; }
  const TensorField& A() const { return A_; }

  MapPoint at(int node) const;

 private:
  DiskGrid grid_;
  HeightField h_ee_;
  HarmonicMap map_;
  VectorField psi_;
  TensorField F_, A_;
  std::array<TensorField, 2> dF_;
  ScalarField J_;
};

// Extension of X + h_ee N; throws NotDiffeomorphism when min J <= 1e-8 on the grid
// or on the boundary ring.
AleMap harmonic_extend(const HeightField& h_ee, const ReferenceCurve& gamma, const DiskGrid& grid);

// max_j |(J A^T N)(s_j) - sqrt(g) n(s_j)| with J and A extrapolated from the grid to r = 1.
double piola_residual(const AleMap& m, const HeightField& h_ee, const ReferenceCurve& gamma);

// w = J A v
VectorField pushforward_w(const VectorField& v, const AleMap& m);
// v = J^-1 grad_psi w
VectorField pullback_v(const VectorField& w, const AleMap& m);
// (psi_curr - psi_prev) / dt
VectorField map_time_derivative(const AleMap& m_prev, const AleMap& m_curr, double dt);

// max |Laplacian psi| over the grid nodes, polar form of the modal expansion.
double harmonic_residual(const AleMap& m);

}  // namespace alefs
