#include "alefs/fields_ops.hpp"

#include "alefs/errors.hpp"

namespace alefs {

namespace {

void require_grid(const DiskGrid& g, Eigen::Index rows) {
  if (rows != g.size()) throw GridMismatch("field does not match the disk grid");
}

}  // namespace

ScalarField divergence(const DiskGrid& grid, const VectorField& w) {
  require_grid(grid, w.rows());
  return GridOps(grid).divergence(w);
}

TensorField def_tensor(const DiskGrid& grid, const VectorField& v) {
  require_grid(grid, v.rows());
  const TensorField g = GridOps(grid).gradient(v);
  TensorField d(g.rows(), 4);
  d.col(0) = 2.0 * g.col(0);
  d.col(1) = g.col(1) + g.col(2);
  d.col(2) = d.col(1);
  d.col(3) = 2.0 * g.col(3);
  return d;
}

TensorField stress_field(const AleMap& m, const VectorField& w) {
  require_grid(m.grid(), w.rows());
  const TensorField gw = GridOps(m.grid()).gradient(w);
  TensorField S(w.rows(), 4);
  for (int k = 0; k < w.rows(); ++k) {
    const MapJet jet = make_jet(m.at(k));
    set_tensor(S, k, transformed_stress(jet, w.row(k).transpose(), tensor_at(gw, k)));
  }
  return S;
}

VectorField apply_L(const AleMap& m, const VectorField& w) {
  const GridOps ops(m.grid());
  const TensorField S = stress_field(m, w);
  VectorField out(w.rows(), 2);
  for (int s = 0; s < 2; ++s) {
    VectorField row(w.rows(), 2);
    row.col(0) = S.col(2 * s);
    row.col(1) = S.col(2 * s + 1);
    out.col(s) = ops.divergence(row);
  }
  return out;
}

BoundaryVector traction(const AleMap& m, const VectorField& w, const ScalarField& q) {
  require_grid(m.grid(), q.size());
  const GridOps ops(m.grid());
  const TensorField S = ops.trace(stress_field(m, w));
  const BoundaryScalar qb = ops.trace(q);
  const int n = m.grid().n_theta();
  BoundaryVector out(n, 2);
  for (int j = 0; j < n; ++j) {
    const double th = m.grid().theta(j);
    const Vec2 N(std::cos(th), std::sin(th));
    out.row(j) = ((tensor_at(S, j) - qb[j] * Mat2::Identity()) * N).transpose();
  }
  return out;
}

TensorField piola_time_derivative(const AleMap& m_prev, const AleMap& m_curr, double dt) {
  if (m_prev.grid() != m_curr.grid()) throw GridMismatch("maps live on different grids");
  if (!(dt > 0.0)) throw std::invalid_argument("piola_time_derivative needs dt > 0");
  TensorField out(m_curr.grid().size(), 4);
  for (int k = 0; k < out.rows(); ++k) {
    const Mat2 a = tensor_at(m_curr.grad_psi(), k) / m_curr.J()[k];
    const Mat2 b = tensor_at(m_prev.grad_psi(), k) / m_prev.J()[k];
    set_tensor(out, k, (a - b) / dt);
  }
  return out;
}

VectorField forcing_F(const AleMap& m, const VectorField& psi_t, const VectorField& w,
                      const ForcingHistory* history) {
  require_grid(m.grid(), w.rows());
  require_grid(m.grid(), psi_t.rows());
  const TensorField gw = GridOps(m.grid()).gradient(w);
  VectorField out(w.rows(), 2);
  for (int k = 0; k < w.rows(); ++k) {
    ForcingTerms t;
    t.psi_t = psi_t.row(k).transpose();
    if (history) {
      t.P_t = tensor_at(history->P_t, k);
      t.w_t = history->w_t.row(k).transpose();
    }
    out.row(k) = forcing(make_jet(m.at(k)), w.row(k).transpose(), tensor_at(gw, k), t).transpose();
  }
  return out;
}

double bilinear_B(const AleMap& m, const VectorField& w, const VectorField& phi) {
  require_grid(m.grid(), phi.rows());
  const TensorField S = stress_field(m, w);
  const TensorField gp = GridOps(m.grid()).gradient(phi);
  return m.grid().integrate(S.cwiseProduct(gp).rowwise().sum());
}

}  // namespace alefs
