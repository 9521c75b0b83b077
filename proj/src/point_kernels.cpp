#include "alefs/point_kernels.hpp"

namespace alefs {

MapJet make_jet(const MapPoint& p) {
  MapJet m;
  m.F = p.F;
  m.J = p.F.determinant();
  m.A = p.F.inverse();
  m.P = p.F / m.J;
  for (int k = 0; k < 2; ++k) {
    m.dF[k] = p.dF[k];
    m.dA[k] = -m.A * p.dF[k] * m.A;
    const double dJ = m.J * (m.A * p.dF[k]).trace();
    m.dP[k] = p.dF[k] / m.J - p.F * dJ / (m.J * m.J);
  }
  return m;
}

MapJet identity_jet() {
  MapPoint p;
  p.psi.setZero();
  p.F.setIdentity();
  p.dF[0].setZero();
  p.dF[1].setZero();
  return make_jet(p);
}

Mat2 velocity_gradient(const MapJet& m, const Vec2& w, const Mat2& gw) {
  Mat2 gv = m.P * gw;
  gv.col(0) += m.dP[0] * w;
  gv.col(1) += m.dP[1] * w;
  return gv;
}

Mat2 eulerian_def(const MapJet& m, const Mat2& gv) {
  const Mat2 G = gv * m.A;
  return G + G.transpose();
}

Mat2 transformed_stress(const MapJet& m, const Vec2& w, const Mat2& gw) {
  return m.F.transpose() * eulerian_def(m, velocity_gradient(m, w, gw)) * m.A.transpose();
}

Vec2 forcing(const MapJet& m, const Vec2& w, const Mat2& gw, const ForcingTerms& t) {
  const Vec2 v = m.P * w;
  const Mat2 gv = velocity_gradient(m, w, gw);
  const Mat2 def = eulerian_def(m, gv);
  Vec2 out = -m.F.transpose() * (gv * m.A * (v - t.psi_t));
  out -= m.F.transpose() * (t.P_t * w);
  // Q(i, s, l) = d_k (F(i, s) A(k, l))
  for (int s = 0; s < 2; ++s) {
    double acc = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l) {
        double q = 0.0;
        for (int k = 0; k < 2; ++k) q += m.dF[k](i, s) * m.A(k, l) + m.F(i, s) * m.dA[k](k, l);
        acc += q * def(i, l);
      }
    out[s] += acc;
  }
  out += t.w_t - m.F.transpose() * m.F * t.w_t / m.J;
  return out;
}

}  // namespace alefs
