#pragma once

#include "alefs/ale_map.hpp"
#include "alefs/point_kernels.hpp"

namespace alefs {

// Grid-collocated versions of the transformed operators. Derivatives come from
// GridOps; map data is sampled exactly from the harmonic polynomial.

ScalarField divergence(const DiskGrid& grid, const VectorField& w);
// grad v + grad v^T
TensorField def_tensor(const DiskGrid& grid, const VectorField& v);

// S at every node, see transformed_stress.
TensorField stress_field(const AleMap& m, const VectorField& w);

// div S
VectorField apply_L(const AleMap& m, const VectorField& w);
// (S - q I) N on r = 1, one-sided extrapolation of S and q.
BoundaryVector traction(const AleMap& m, const VectorField& w, const ScalarField& q);

// Optional time-differenced map data for forcing_F. P_t holds (J^-1 grad psi)_t per node.
struct ForcingHistory {
  TensorField P_t;
  VectorField w_t;
};
VectorField forcing_F(const AleMap& m, const VectorField& psi_t, const VectorField& w,
                      const ForcingHistory* history = nullptr);
// Backward difference of J^-1 grad psi between two maps.
TensorField piola_time_derivative(const AleMap& m_prev, const AleMap& m_curr, double dt);

// Grid quadrature of S : grad(phi).
double bilinear_B(const AleMap& m, const VectorField& w, const VectorField& phi);

}  // namespace alefs
