#pragma once

#include <array>
#include <functional>
#include <vector>

#include "alefs/disk_grid.hpp"

namespace alefs {

// Structured polar mesh of the unit disk with n_r x n_theta curved quadrilaterals in
// (rho, theta). Velocity uses biquadratic elements, pressure bilinear ones; the nodes
// at rho = 0 collapse to a single center node.
//
// Velocity nodes: rho = k / (2 n_r), theta = m pi / n_theta, k in [0, 2 n_r], m in [0, 2 n_theta).
// Pressure nodes: rho = a / n_r, theta = 2 pi b / n_theta.
// DiskGrid node (i, j) coincides with velocity node (2 i + 1, 2 j).
class PolarMesh {
 public:
  struct QuadPoint {
    double x, y, rho, theta, weight;
    std::array<double, 9> N;
    std::array<Vec2, 9> dN;  // Cartesian gradients
    std::array<double, 4> Np;
  };
  struct EdgePoint {
    double theta, weight;
    std::array<double, 3> N, dN;  // dN is d/dtheta
  };

  PolarMesh(int n_r, int n_theta);

  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  int n_velocity() const { return 1 + 4 * n_r_ * n_theta_; }
  int n_pressure() const { return 1 + n_r_ * n_theta_; }
  int n_elements() const { return n_r_ * n_theta_; }
  DiskGrid grid() const { return DiskGrid(n_r_, n_theta_); }

  int vnode(int k, int m) const;
  int pnode(int a, int b) const;
  // Cartesian position of a velocity / pressure node.
  Vec2 vposition(int node) const;
  Vec2 pposition(int node) const;

  const std::array<int, 9>& velocity_nodes(int e) const { return vel_[e]; }
  const std::array<int, 4>& pressure_nodes(int e) const { return pre_[e]; }
  const std::vector<QuadPoint>& quadrature(int e) const { return quad_[e]; }

  // Boundary edge b spans theta in [b, b + 1] * 2 pi / n_theta with nodes m = 2b, 2b+1, 2b+2.
  std::array<int, 3> edge_nodes(int b) const;
  const std::vector<EdgePoint>& edge_quadrature(int b) const { return edge_[b]; }

  int grid_to_velocity(int grid_node) const;
  int boundary_velocity(int j) const { return vnode(2 * n_r_, 2 * j); }

 private:
  int n_r_, n_theta_;
  std::vector<std::array<int, 9>> vel_;
  std::vector<std::array<int, 4>> pre_;
  std::vector<std::vector<QuadPoint>> quad_;
  std::vector<std::vector<EdgePoint>> edge_;
};

// Velocity coefficient vectors are stacked by component: [w^1 nodes, w^2 nodes].
Vec2 fe_value(const PolarMesh& mesh, const Eigen::VectorXd& w, int e, const PolarMesh::QuadPoint& q);
Mat2 fe_gradient(const PolarMesh& mesh, const Eigen::VectorXd& w, int e, const PolarMesh::QuadPoint& q);
double fe_pressure(const PolarMesh& mesh, const Eigen::VectorXd& p, int e, const PolarMesh::QuadPoint& q);

// Nodal interpolation of an analytic field.
Eigen::VectorXd fe_interpolate(const PolarMesh& mesh, const std::function<Vec2(double, double)>& f);
Eigen::VectorXd fe_interpolate_pressure(const PolarMesh& mesh, const std::function<double(double, double)>& f);

// Samples on the DiskGrid and on the boundary ring theta_j.
VectorField fe_to_grid(const PolarMesh& mesh, const Eigen::VectorXd& w);
ScalarField pressure_to_grid(const PolarMesh& mesh, const Eigen::VectorXd& q);
BoundaryVector fe_boundary_trace(const PolarMesh& mesh, const Eigen::VectorXd& w);

}  // namespace alefs
