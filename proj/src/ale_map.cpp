#include "alefs/ale_map.hpp"

#include <cmath>
#include <string>

#include "alefs/errors.hpp"
#include "alefs/spectral.hpp"

namespace alefs {

using cd = std::complex<double>;

HarmonicMap::HarmonicMap(const BoundaryVector& boundary) {
  const int n = int(boundary.rows());
  for (int c = 0; c < 2; ++c) {
    c_[c] = spectral::coefficients(boundary.col(c));
    auto& a = a_[c];
    a.assign(n / 2 + 1, cd(0.0));
    a[0] = c_[c][0];
    for (int k = 1; k <= n / 2; ++k) a[k] = (2 * k == n) ? cd(c_[c][k].real(), 0.0) : 2.0 * c_[c][k];
  }
}

MapPoint HarmonicMap::sample(double x, double y) const {
  const cd z(x, y);
  MapPoint p;
  for (int c = 0; c < 2; ++c) {
    const auto& a = a_[c];
    cd f = a.back(), d1 = 0.0, d2 = 0.0;
    for (int k = int(a.size()) - 2; k >= 0; --k) {
      d2 = d2 * z + d1;
      d1 = d1 * z + f;
      f = f * z + a[k];
    }
    d2 *= 2.0;
    p.psi[c] = f.real();
    p.F(c, 0) = d1.real();
    p.F(c, 1) = -d1.imag();
    p.dF[0](c, 0) = d2.real();
    p.dF[0](c, 1) = -d2.imag();
    p.dF[1](c, 0) = -d2.imag();
    p.dF[1](c, 1) = -d2.real();
  }
  return p;
}

Vec2 HarmonicMap::polar_laplacian(double x, double y) const {
  const double r = std::hypot(x, y), th = std::atan2(y, x);
  Vec2 out;
  for (int c = 0; c < 2; ++c) {
    const int n = int(c_[c].size());
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const int m = spectral::signed_mode(k, n);
      const double am = std::abs(m);
      const double urr = am * (am - 1.0) * std::pow(r, am - 2.0);
      const double ur = am * std::pow(r, am - 1.0);
      const double utt = -double(m) * m * std::pow(r, am);
      const double radial = (k == 0) ? 0.0 : urr + ur / r + utt / (r * r);
      const cd e = (2 * k == n) ? cd(std::cos(m * th), 0.0) : std::exp(cd(0.0, m * th));
      acc += radial * (2 * k == n ? c_[c][k].real() * e.real() : (c_[c][k] * e).real());
    }
    out[c] = acc;
  }
  return out;
}

AleMap::AleMap(const DiskGrid& grid, const HeightField& h_ee, const HarmonicMap& map)
    : grid_(grid), h_ee_(h_ee), map_(map) {
  const int n = grid.size();
  psi_.resize(n, 2);
  F_.resize(n, 4);
  A_.resize(n, 4);
  dF_[0].resize(n, 4);
  dF_[1].resize(n, 4);
  J_.resize(n);
  for (int k = 0; k < n; ++k) {
    const MapPoint p = map_.sample(grid.x(k), grid.y(k));
    psi_.row(k) = p.psi.transpose();
    set_tensor(F_, k, p.F);
    set_tensor(dF_[0], k, p.dF[0]);
    set_tensor(dF_[1], k, p.dF[1]);
    J_[k] = p.F.determinant();
    set_tensor(A_, k, p.F.inverse());
  }
}

MapPoint AleMap::at(int node) const {
  MapPoint p;
  p.psi = psi_.row(node).transpose();
  p.F = tensor_at(F_, node);
  p.dF[0] = tensor_at(dF_[0], node);
  p.dF[1] = tensor_at(dF_[1], node);
  return p;
}

AleMap harmonic_extend(const HeightField& h_ee, const ReferenceCurve& gamma, const DiskGrid& grid) {
  if (!gamma.is_unit_circle())
    throw GridMismatch("harmonic extension is implemented for the unit disk");
  if (gamma.n_theta() != grid.n_theta())
    throw GridMismatch("curve and disk grid have different angular resolution");
  check_admissible(h_ee, gamma);
  const HarmonicMap map(boundary_points(h_ee, gamma));
  AleMap m(grid, h_ee, map);
  double jmin = m.J().minCoeff();
  // The boundary ring is checked at twice the angular resolution.
  for (int j = 0; j < 2 * grid.n_theta(); ++j) {
    const double th = M_PI * j / grid.n_theta();
    jmin = std::min(jmin, map.sample(std::cos(th), std::sin(th)).F.determinant());
  }
  if (!(jmin > 1e-8))
    throw NotDiffeomorphism("min J = " + std::to_string(jmin) + " <= 1e-8");
  return m;
}

double piola_residual(const AleMap& m, const HeightField& h_ee, const ReferenceCurve& gamma) {
  const GridOps ops(m.grid());
  const BoundaryScalar J = ops.trace(m.J());
  const TensorField A = ops.trace(m.A());
  const BoundaryVector rhs = unnormalized_normal(h_ee, gamma);
  double res = 0.0;
  for (int j = 0; j < gamma.n_theta(); ++j) {
    const Vec2 N = gamma.normal().row(j).transpose();
    const Vec2 lhs = J[j] * tensor_at(A, j).transpose() * N;
    res = std::max(res, (lhs - rhs.row(j).transpose()).norm());
  }
  return res;
}

VectorField pushforward_w(const VectorField& v, const AleMap& m) {
  if (v.rows() != m.grid().size()) throw GridMismatch("field and map grids differ");
  VectorField w(v.rows(), 2);
  for (int k = 0; k < v.rows(); ++k)
    w.row(k) = (m.J()[k] * tensor_at(m.A(), k) * v.row(k).transpose()).transpose();
  return w;
}

VectorField pullback_v(const VectorField& w, const AleMap& m) {
  if (w.rows() != m.grid().size()) throw GridMismatch("field and map grids differ");
  VectorField v(w.rows(), 2);
  for (int k = 0; k < w.rows(); ++k)
    v.row(k) = (tensor_at(m.grad_psi(), k) * w.row(k).transpose() / m.J()[k]).transpose();
  return v;
}

VectorField map_time_derivative(const AleMap& m_prev, const AleMap& m_curr, double dt) {
  if (m_prev.grid() != m_curr.grid()) throw GridMismatch("maps live on different grids");
  if (!(dt > 0.0)) throw std::invalid_argument("map_time_derivative needs dt > 0");
  return (m_curr.psi() - m_prev.psi()) / dt;
}

double harmonic_residual(const AleMap& m) {
  const DiskGrid& g = m.grid();
  double res = 0.0;
  for (int k = 0; k < g.size(); ++k)
    res = std::max(res, m.harmonic().polar_laplacian(g.x(k), g.y(k)).cwiseAbs().maxCoeff());
  return res;
}

}  // namespace alefs
