#include "alefs/disk_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "alefs/errors.hpp"
#include "alefs/spectral.hpp"

namespace alefs {

DiskGrid::DiskGrid(int n_r, int n_theta) : n_r_(n_r), n_theta_(n_theta) {
  if (n_r < 6) throw std::invalid_argument("DiskGrid needs n_r >= 6");
  if (n_theta < 8 || n_theta % 2 != 0)
    throw std::invalid_argument("DiskGrid needs an even n_theta >= 8");
  weights_.resize(size());
  for (int i = 0; i < n_r; ++i)
    for (int j = 0; j < n_theta; ++j) weights_[node(i, j)] = r(i) * dr() * dtheta();
}

double DiskGrid::x(int n) const { return r(n / n_theta_) * std::cos(theta(n % n_theta_)); }
double DiskGrid::y(int n) const { return r(n / n_theta_) * std::sin(theta(n % n_theta_)); }

std::vector<double> fd_weights(const std::vector<double>& x, double x0, int m) {
  // Fornberg, Math. Comp. 51 (1988); c[j][k] holds weights for derivative k.
  const int n = int(x.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

namespace {

double line_position(int k, int n_r) { return (k - n_r + 0.5) / n_r; }

}  // namespace

GridOps::GridOps(const DiskGrid& grid) : grid_(grid) {
  const int nr = grid.n_r();
  const int len = 2 * nr;
  auto make = [&](int k, int order) {
    const int width = (order == 1) ? 5 : 6;
    int first = k - 2;
    if (k + 2 > len - 1) first = len - width;
    const int w = (k + 2 > len - 1) ? width : 5;
    std::vector<double> pos(w);
    for (int q = 0; q < w; ++q) pos[q] = line_position(first + q, nr);
    return Stencil{first, fd_weights(pos, line_position(k, nr), order)};
  };
  for (int i = 0; i < nr; ++i) {
    d1_.push_back(make(nr + i, 1));
    d2_.push_back(make(nr + i, 2));
  }
  std::vector<double> pos(5);
  for (int q = 0; q < 5; ++q) pos[q] = line_position(len - 5 + q, nr);
  trace_ = Stencil{len - 5, fd_weights(pos, 1.0, 0)};
}

int GridOps::line_node(int k, int j) const {
  const int nr = grid_.n_r(), nt = grid_.n_theta();
  if (k >= nr) return grid_.node(k - nr, j);
  return grid_.node(nr - 1 - k, (j + nt / 2) % nt);
}

double GridOps::apply_line(const ScalarField& f, const Stencil& st, int j) const {
  double acc = 0.0;
  for (size_t q = 0; q < st.w.size(); ++q) acc += st.w[q] * f[line_node(st.first + int(q), j)];
  return acc;
}

ScalarField GridOps::radial_derivative(const ScalarField& f, int order) const {
  if (order < 1 || order > 2) throw std::invalid_argument("radial_derivative order must be 1 or 2");
  const auto& table = (order == 1) ? d1_ : d2_;
  ScalarField out(grid_.size());
  for (int i = 0; i < grid_.n_r(); ++i)
    for (int j = 0; j < grid_.n_theta(); ++j) out[grid_.node(i, j)] = apply_line(f, table[i], j);
  return out;
}

ScalarField GridOps::angular_derivative(const ScalarField& f, int order) const {
  const int nt = grid_.n_theta();
  ScalarField out(grid_.size());
  for (int i = 0; i < grid_.n_r(); ++i) {
    const Eigen::VectorXd ring = f.segment(i * nt, nt);
    out.segment(i * nt, nt) = spectral::derivative(ring, order, 2.0 * M_PI);
  }
  return out;
}

VectorField GridOps::gradient(const ScalarField& f) const {
  const ScalarField fr = radial_derivative(f, 1);
  const ScalarField ft = angular_derivative(f, 1);
  VectorField g(grid_.size(), 2);
  for (int i = 0; i < grid_.n_r(); ++i) {
    const double r = grid_.r(i);
    for (int j = 0; j < grid_.n_theta(); ++j) {
      const int n = grid_.node(i, j);
      const double c = std::cos(grid_.theta(j)), s = std::sin(grid_.theta(j));
      g(n, 0) = c * fr[n] - s * ft[n] / r;
      g(n, 1) = s * fr[n] + c * ft[n] / r;
    }
  }
  return g;
}

TensorField GridOps::gradient(const VectorField& w) const {
  TensorField t(grid_.size(), 4);
  for (int i = 0; i < 2; ++i) {
    const VectorField g = gradient(ScalarField(w.col(i)));
    t.col(2 * i) = g.col(0);
    t.col(2 * i + 1) = g.col(1);
  }
  return t;
}

ScalarField GridOps::divergence(const VectorField& w) const {
  return gradient(ScalarField(w.col(0))).col(0) + gradient(ScalarField(w.col(1))).col(1);
}

BoundaryScalar GridOps::trace(const ScalarField& f) const {
  BoundaryScalar out(grid_.n_theta());
  for (int j = 0; j < grid_.n_theta(); ++j) out[j] = apply_line(f, trace_, j);
  return out;
}

BoundaryVector GridOps::trace(const VectorField& f) const {
  BoundaryVector out(grid_.n_theta(), 2);
  for (int c = 0; c < 2; ++c) out.col(c) = trace(ScalarField(f.col(c)));
  return out;
}

TensorField GridOps::trace(const TensorField& f) const {
  TensorField out(grid_.n_theta(), 4);
  for (int c = 0; c < 4; ++c) out.col(c) = trace(ScalarField(f.col(c)));
  return out;
}

double GridOps::interpolate(const ScalarField& f, double x, double y) const {
  const int nr = grid_.n_r(), nt = grid_.n_theta();
  const double rho = std::hypot(x, y);
  const double phi = std::atan2(y, x);
  const int len = 2 * nr;
  // Six nearest line nodes to s = rho.
  int k0 = int(std::floor(rho * nr + nr - 0.5)) - 2;
  k0 = std::clamp(k0, 0, len - 6);
  std::vector<double> pos(6), val(6);
  for (int q = 0; q < 6; ++q) {
    const int k = k0 + q;
    pos[q] = line_position(k, nr);
    const int ring = (k >= nr) ? k - nr : nr - 1 - k;
    const double angle = (k >= nr) ? phi : phi + M_PI;
    const Eigen::VectorXd samples = f.segment(ring * nt, nt);
    val[q] = spectral::evaluate(spectral::coefficients(samples), angle);
  }
  const std::vector<double> w = fd_weights(pos, rho, 0);
  double acc = 0.0;
  for (int q = 0; q < 6; ++q) acc += w[q] * val[q];
  return acc;
}

double GridOps::l2_norm(const ScalarField& f) const {
  return std::sqrt(grid_.weights().dot(f.cwiseAbs2()));
}

double GridOps::l2_norm(const VectorField& f) const {
  return std::sqrt(grid_.weights().dot(f.rowwise().squaredNorm()));
}

double GridOps::h1_norm(const VectorField& f) const {
  const TensorField g = gradient(f);
  return std::sqrt(grid_.weights().dot(f.rowwise().squaredNorm() + g.rowwise().squaredNorm()));
}

double GridOps::h2_norm(const VectorField& f) const {
  const TensorField g = gradient(f);
  Eigen::VectorXd acc = f.rowwise().squaredNorm() + g.rowwise().squaredNorm();
  for (int c = 0; c < 2; ++c) {
    VectorField gc(grid_.size(), 2);
    gc.col(0) = g.col(2 * c);
    gc.col(1) = g.col(2 * c + 1);
    acc += gradient(gc).rowwise().squaredNorm();
  }
  return std::sqrt(grid_.weights().dot(acc));
}

}  // namespace alefs
