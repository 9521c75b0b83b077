#include "alefs/polar_mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace alefs {

namespace {

constexpr std::array<double, 4> kGaussX = {-0.8611363115940526, -0.3399810435848563,
                                           0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGaussW = {0.3478548451374538, 0.6521451548625461,
                                           0.6521451548625461, 0.3478548451374538};

std::array<double, 3> quad_basis(double t) {
  return {2.0 * (t - 0.5) * (t - 1.0), -4.0 * t * (t - 1.0), 2.0 * t * (t - 0.5)};
}
std::array<double, 3> quad_basis_d(double t) { return {4.0 * t - 3.0, -8.0 * t + 4.0, 4.0 * t - 1.0}; }

}  // namespace

PolarMesh::PolarMesh(int n_r, int n_theta) : n_r_(n_r), n_theta_(n_theta) {
  if (n_r < 1) throw std::invalid_argument("PolarMesh needs n_r >= 1");
  if (n_theta < 8 || n_theta % 2 != 0) throw std::invalid_argument("PolarMesh needs an even n_theta >= 8");
  const double dth = 2.0 * M_PI / n_theta;
  vel_.resize(n_elements());
  pre_.resize(n_elements());
  quad_.resize(n_elements());
  for (int a = 0; a < n_r; ++a)
    for (int b = 0; b < n_theta; ++b) {
      const int e = a * n_theta + b;
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) vel_[e][p * 3 + q] = vnode(2 * a + p, 2 * b + q);
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) pre_[e][p * 2 + q] = pnode(a + p, b + q);
      auto& qs = quad_[e];
      for (int gi = 0; gi < 4; ++gi)
        for (int gj = 0; gj < 4; ++gj) {
          const double xi = 0.5 * (1.0 + kGaussX[gi]), eta = 0.5 * (1.0 + kGaussX[gj]);
          QuadPoint qp;
          qp.rho = (a + xi) / n_r;
          qp.theta = (b + eta) * dth;
          const double c = std::cos(qp.theta), s = std::sin(qp.theta);
          qp.x = qp.rho * c;
          qp.y = qp.rho * s;
          qp.weight = 0.25 * kGaussW[gi] * kGaussW[gj] * qp.rho * dth / n_r;
          const auto Lr = quad_basis(xi), Lt = quad_basis(eta);
          const auto dLr = quad_basis_d(xi), dLt = quad_basis_d(eta);
          for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
              const double dr = dLr[p] * Lt[q] * n_r;
              const double dt = Lr[p] * dLt[q] / dth;
              qp.N[p * 3 + q] = Lr[p] * Lt[q];
              qp.dN[p * 3 + q] = Vec2(c * dr - s * dt / qp.rho, s * dr + c * dt / qp.rho);
            }
          qp.Np = {(1 - xi) * (1 - eta), (1 - xi) * eta, xi * (1 - eta), xi * eta};
          qs.push_back(qp);
        }
    }
  edge_.resize(n_theta);
  for (int b = 0; b < n_theta; ++b)
    for (int g = 0; g < 4; ++g) {
      const double eta = 0.5 * (1.0 + kGaussX[g]);
      EdgePoint ep;
      ep.theta = (b + eta) * dth;
      ep.weight = 0.5 * kGaussW[g] * dth;
      const auto L = quad_basis(eta), dL = quad_basis_d(eta);
      for (int q = 0; q < 3; ++q) {
        ep.N[q] = L[q];
        ep.dN[q] = dL[q] / dth;
      }
      edge_[b].push_back(ep);
    }
}

int PolarMesh::vnode(int k, int m) const {
  if (k == 0) return 0;
  const int nm = 2 * n_theta_;
  return 1 + (k - 1) * nm + ((m % nm) + nm) % nm;
}

int PolarMesh::pnode(int a, int b) const {
  if (a == 0) return 0;
  return 1 + (a - 1) * n_theta_ + ((b % n_theta_) + n_theta_) % n_theta_;
}

Vec2 PolarMesh::vposition(int node) const {
  if (node == 0) return Vec2::Zero();
  const int k = (node - 1) / (2 * n_theta_) + 1, m = (node - 1) % (2 * n_theta_);
  const double rho = k / (2.0 * n_r_), th = m * M_PI / n_theta_;
  return Vec2(rho * std::cos(th), rho * std::sin(th));
}

Vec2 PolarMesh::pposition(int node) const {
  if (node == 0) return Vec2::Zero();
  const int a = (node - 1) / n_theta_ + 1, b = (node - 1) % n_theta_;
  const double rho = double(a) / n_r_, th = 2.0 * M_PI * b / n_theta_;
  return Vec2(rho * std::cos(th), rho * std::sin(th));
}

std::array<int, 3> PolarMesh::edge_nodes(int b) const {
  return {vnode(2 * n_r_, 2 * b), vnode(2 * n_r_, 2 * b + 1), vnode(2 * n_r_, 2 * b + 2)};
}

int PolarMesh::grid_to_velocity(int grid_node) const {
  return vnode(2 * (grid_node / n_theta_) + 1, 2 * (grid_node % n_theta_));
}

Vec2 fe_value(const PolarMesh& mesh, const Eigen::VectorXd& w, int e, const PolarMesh::QuadPoint& q) {
  const int nv = mesh.n_velocity();
  const auto& nodes = mesh.velocity_nodes(e);
  Vec2 out = Vec2::Zero();
  for (int a = 0; a < 9; ++a) {
    out[0] += q.N[a] * w[nodes[a]];
    out[1] += q.N[a] * w[nv + nodes[a]];
  }
  return out;
}

Mat2 fe_gradient(const PolarMesh& mesh, const Eigen::VectorXd& w, int e, const PolarMesh::QuadPoint& q) {
  const int nv = mesh.n_velocity();
  const auto& nodes = mesh.velocity_nodes(e);
  Mat2 g = Mat2::Zero();
  for (int a = 0; a < 9; ++a) {
    g.row(0) += w[nodes[a]] * q.dN[a].transpose();
    g.row(1) += w[nv + nodes[a]] * q.dN[a].transpose();
  }
  return g;
}

double fe_pressure(const PolarMesh& mesh, const Eigen::VectorXd& p, int e, const PolarMesh::QuadPoint& q) {
  const auto& nodes = mesh.pressure_nodes(e);
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) acc += q.Np[a] * p[nodes[a]];
  return acc;
}

Eigen::VectorXd fe_interpolate(const PolarMesh& mesh, const std::function<Vec2(double, double)>& f) {
  const int nv = mesh.n_velocity();
  Eigen::VectorXd w(2 * nv);
  for (int n = 0; n < nv; ++n) {
    const Vec2 p = mesh.vposition(n);
    const Vec2 v = f(p.x(), p.y());
    w[n] = v[0];
    w[nv + n] = v[1];
  }
  return w;
}

Eigen::VectorXd fe_interpolate_pressure(const PolarMesh& mesh, const std::function<double(double, double)>& f) {
  Eigen::VectorXd q(mesh.n_pressure());
  for (int n = 0; n < mesh.n_pressure(); ++n) {
    const Vec2 p = mesh.pposition(n);
    q[n] = f(p.x(), p.y());
  }
  return q;
}

VectorField fe_to_grid(const PolarMesh& mesh, const Eigen::VectorXd& w) {
  const int nv = mesh.n_velocity();
  const int n = mesh.n_r() * mesh.n_theta();
  VectorField out(n, 2);
  for (int k = 0; k < n; ++k) {
    const int v = mesh.grid_to_velocity(k);
    out(k, 0) = w[v];
    out(k, 1) = w[nv + v];
  }
  return out;
}

ScalarField pressure_to_grid(const PolarMesh& mesh, const Eigen::VectorXd& q) {
  const int nt = mesh.n_theta();
  ScalarField out(mesh.n_r() * nt);
  for (int i = 0; i < mesh.n_r(); ++i)
    for (int j = 0; j < nt; ++j) out[i * nt + j] = 0.5 * (q[mesh.pnode(i, j)] + q[mesh.pnode(i + 1, j)]);
  return out;
}

BoundaryVector fe_boundary_trace(const PolarMesh& mesh, const Eigen::VectorXd& w) {
  const int nv = mesh.n_velocity();
  BoundaryVector out(mesh.n_theta(), 2);
  for (int j = 0; j < mesh.n_theta(); ++j) {
    const int v = mesh.boundary_velocity(j);
    out(j, 0) = w[v];
    out(j, 1) = w[nv + v];
  }
  return out;
}

}  // namespace alefs
