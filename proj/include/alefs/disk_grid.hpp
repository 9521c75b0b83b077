#pragma once

#include <Eigen/Dense>
#include <vector>

#include "alefs/geometry.hpp"

namespace alefs {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Nodal samples on a DiskGrid; node = i * n_theta + j.
using ScalarField = Eigen::VectorXd;
// Cartesian components per node.
using VectorField = Eigen::MatrixX2d;
// 2x2 tensors per node, row layout (T00, T01, T10, T11).
using TensorField = Eigen::MatrixX4d;

inline Mat2 tensor_at(const TensorField& t, Eigen::Index node) {
  Mat2 m;
  m << t(node, 0), t(node, 1), t(node, 2), t(node, 3);
  return m;
}
inline void set_tensor(TensorField& t, Eigen::Index node, const Mat2& m) {
  t.row(node) << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
}

// Polar grid of the unit disk, staggered in r: r_i = (i + 1/2) / n_r, theta_j = 2 pi j / n_theta.
class DiskGrid {
 public:
  DiskGrid(int n_r, int n_theta);

  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  int size() const { return n_r_ * n_theta_; }
  int node(int i, int j) const { return i * n_theta_ + j; }
  double dr() const { return 1.0 / n_r_; }
  double dtheta() const { return 2.0 * M_PI / n_theta_; }
  double r(int i) const { return (i + 0.5) / n_r_; }
  double theta(int j) const { return dtheta() * j; }
  double x(int node) const;
  double y(int node) const;
  // r_i dr dtheta; sums to pi.
  const Eigen::VectorXd& weights() const { return weights_; }
  double integrate(const ScalarField& f) const { return weights_.dot(f); }

  bool operator==(const DiskGrid& o) const { return n_r_ == o.n_r_ && n_theta_ == o.n_theta_; }
  bool operator!=(const DiskGrid& o) const { return !(*this == o); }

 private:
  int n_r_, n_theta_;
  Eigen::VectorXd weights_;
};

// Finite-difference weights (Fornberg) for the order-th derivative at x0.
std::vector<double> fd_weights(const std::vector<double>& nodes, double x0, int order);

// Derivative, trace and interpolation operators on a DiskGrid. Radial operators act
// along the diameter through each node, which is a uniform line of 2 n_r samples
// that crosses the origin; angular operators are spectral on each ring.
class GridOps {
 public:
  explicit GridOps(const DiskGrid& grid);

  const DiskGrid& grid() const { return grid_; }

  ScalarField radial_derivative(const ScalarField& f, int order) const;
  ScalarField angular_derivative(const ScalarField& f, int order) const;
  // (f_x, f_y)
  VectorField gradient(const ScalarField& f) const;
  // (i, j) = d_j w^i
  TensorField gradient(const VectorField& w) const;
  ScalarField divergence(const VectorField& w) const;

  // Extrapolation of nodal values to r = 1 at theta_j.
  BoundaryScalar trace(const ScalarField& f) const;
  BoundaryVector trace(const VectorField& f) const;
  TensorField trace(const TensorField& f) const;

  // Interpolation at an arbitrary point of the closed disk.
  double interpolate(const ScalarField& f, double x, double y) const;

  // sqrt(sum w |f|^2) and discrete Sobolev norms built from gradient().
  double l2_norm(const ScalarField& f) const;
  double l2_norm(const VectorField& f) const;
  double h1_norm(const VectorField& f) const;
  double h2_norm(const VectorField& f) const;

 private:
  struct Stencil {
    int first;  // first line index
    std::vector<double> w;
  };
  // Value of line index k (0..2 n_r - 1) on the diameter through angle j.
  int line_node(int k, int j) const;
  double apply_line(const ScalarField& f, const Stencil& st, int j) const;

  DiskGrid grid_;
  std::vector<Stencil> d1_, d2_;
  Stencil trace_;
};

}  // namespace alefs
