#pragma once

#include <array>

#include "alefs/ale_map.hpp"

namespace alefs {

// Map data at one point with everything the transformed operators need.
// P = F / J so that v = P w.
struct MapJet {
  Mat2 F, A, P;
  double J = 1.0;
  std::array<Mat2, 2> dF, dA, dP;
};

MapJet make_jet(const MapPoint& p);
MapJet identity_jet();

// grad v for v = P w, (i, j) = d_j v^i. gw is grad w in the same layout.
Mat2 velocity_gradient(const MapJet& m, const Vec2& w, const Mat2& gw);
// Eulerian symmetric gradient G + G^T with G = grad(v) A.
Mat2 eulerian_def(const MapJet& m, const Mat2& gv);
// S(s, k): the bracket of the transformed viscous operator, S = F^T Def A^T.
// div S is L_psi(w); (S - q I) N is the traction; S : grad(phi) integrates to B_psi.
Mat2 transformed_stress(const MapJet& m, const Vec2& w, const Mat2& gw);

struct ForcingTerms {
  Vec2 psi_t = Vec2::Zero();
  Mat2 P_t = Mat2::Zero();
  Vec2 w_t = Vec2::Zero();
};

// Linearized right-hand side at one point: transport, (J^-1 grad psi)_t and commutator
// groups plus (I - J^-1 F^T F) w_t.
Vec2 forcing(const MapJet& m, const Vec2& w, const Mat2& gw, const ForcingTerms& t);

}  // namespace alefs
