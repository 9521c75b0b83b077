#pragma once

#include <Eigen/Sparse>
#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "alefs/ale_map.hpp"
#include "alefs/polar_mesh.hpp"

namespace alefs {

using SpMat = Eigen::SparseMatrix<double>;

// a^{jk}_{rs} at a point, stored at ((j * 2 + k) * 2 + r) * 2 + s.
using Rank4 = std::array<double, 16>;
inline int rank4_index(int j, int k, int r, int s) { return ((j * 2 + k) * 2 + r) * 2 + s; }

struct CoefficientTensor {
  std::function<Rank4(double x, double y)> at;

  // scale(x, y) * (l1 delta_jk delta_rs + l2 delta_rk delta_js); scale defaults to 1.
  static CoefficientTensor isotropic(double l1, double l2,
                                     std::function<double(double, double)> scale = {});
};

// Throws CoefficientSymmetryViolation unless a^{jk}_{rs} = a^{kj}_{rs} = a^{jk}_{sr}
// at every grid node (relative tolerance 1e-12).
void check_symmetry(const CoefficientTensor& a, const DiskGrid& grid);
// max over nodes of |a - l1 delta_jk delta_rs - l2 delta_rk delta_js|.
double near_identity_distance(const CoefficientTensor& a, const DiskGrid& grid, double l1, double l2);

// Quadrature point handed to load callbacks.
using VolumeLoad = std::function<Vec2(const PolarMesh::QuadPoint&, int element)>;

// Finite element operators on a PolarMesh. Velocity unknowns are stacked by
// component, pressure unknowns follow in the mixed systems.
class FeSystem {
 public:
  explicit FeSystem(const PolarMesh& mesh);

  const PolarMesh& mesh() const { return mesh_; }
  int velocity_dofs() const { return 2 * mesh_.n_velocity(); }
  int pressure_dofs() const { return mesh_.n_pressure(); }

  // (w, phi)
  const SpMat& mass() const { return mass_; }
  // (p, q)
  const SpMat& pressure_mass() const { return pmass_; }
  // rows: pressure basis p, columns: velocity basis phi, entry (p, div phi)
  const SpMat& divergence() const { return div_; }
  // (w', phi') on the boundary circle
  const SpMat& boundary_stiffness() const { return bstiff_; }

  // B_psi(w, phi), rows are test functions.
  SpMat viscous(const HarmonicMap& map) const;
  // int a^{jk}_{rs} w^r_{,j} phi^s_{,k}
  SpMat coefficient_form(const CoefficientTensor& a) const;

  Eigen::VectorXd volume_load(const VolumeLoad& f) const;
  Eigen::VectorXd volume_load(const std::function<Vec2(double, double)>& f) const;
  // g sampled at theta_j; trigonometric interpolation between samples.
  Eigen::VectorXd boundary_load(const BoundaryVector& g) const;
  Eigen::VectorXd boundary_load(const std::function<Vec2(double theta)>& g) const;

  double l2_norm(const Eigen::VectorXd& w) const;
  double h1_norm(const Eigen::VectorXd& w) const;
  double pressure_l2(const Eigen::VectorXd& q) const;
  double pressure_mean(const Eigen::VectorXd& q) const;
  // || Pi div w ||_{L2}, Pi the L2 projection onto the pressure space.
  double div_norm(const Eigen::VectorXd& w) const;

  // Velocity dofs on r = 1, both components.
  std::vector<int> boundary_dofs() const;

 private:
  PolarMesh mesh_;
  SpMat mass_, pmass_, div_, bstiff_;
};

struct MixedSolution {
  Eigen::VectorXd w;
  Eigen::VectorXd q;
};

// Solver for [[K, -D^T], [-D, -theta Mp]] [w; q] = [rhs; 0]. theta = 0 is the
// multiplier problem; Dirichlet dofs get w = 0. The LU of the last factored K is
// reused for nearby K through iterative refinement, and refactored when the
// refinement stalls.
class MixedSolver {
 public:
  MixedSolver(const FeSystem& fe, double theta, std::vector<int> dirichlet = {});
  ~MixedSolver();
  MixedSolver(MixedSolver&&) noexcept;

  void factor(const SpMat& K);
  MixedSolution solve(const SpMat& K, const Eigen::VectorXd& rhs);
  int refinements() const { return refinements_; }

 private:
  struct Lu;
  SpMat assemble(const SpMat& K) const;
  Eigen::VectorXd apply(const SpMat& K, const Eigen::VectorXd& x) const;
  Eigen::VectorXd lu_solve(const Eigen::VectorXd& b) const;

  const FeSystem* fe_;
  double theta_;
  std::vector<int> dirichlet_;
  std::vector<char> fixed_;
  std::unique_ptr<Lu> lu_;
  int refinements_ = 0;
};

MixedSolution solve_mixed(const FeSystem& fe, const SpMat& K, const Eigen::VectorXd& rhs,
                          double theta, const std::vector<int>& dirichlet = {});

// One backward Euler step of the penalized linear problem:
// (w - w_prev, phi) / dt + B(w, phi) + (1 / theta)(Pi div w, Pi div phi)
//   + eps^2 (w', phi')_Gamma = load(phi).
// load holds (F, phi) + (G, phi)_Gamma. Returns w and q = -Pi div w / theta.
MixedSolution solve_penalized_step(const FeSystem& fe, const HarmonicMap& map,
                                   const Eigen::VectorXd& load, const Eigen::VectorXd& w_prev,
                                   double dt, double theta, double eps);

// Least-squares q with (q, div phi) = T(phi) over all velocity test functions, where
// T(phi) = (w_t, phi) + B(w, phi) + eps^2 (w', phi') - load(phi).
Eigen::VectorXd recover_pressure(const FeSystem& fe, const HarmonicMap& map, const Eigen::VectorXd& w,
                                 const Eigen::VectorXd& w_t, const Eigen::VectorXd& load, double eps);
// Same with T given; test functions in `fixed` are excluded and the result has zero mean.
Eigen::VectorXd recover_pressure_from_functional(const FeSystem& fe, const Eigen::VectorXd& T,
                                                 const std::vector<int>& fixed = {});

struct StokesBc {
  enum class Kind { traction, dirichlet };
  Kind kind = Kind::dirichlet;
  double eps = 0.0;
  // Boundary term is eps^power (w', phi').
  int eps_power = 1;
};

struct StokesSolution {
  Eigen::VectorXd w, q;
  double w_h1 = 0.0, q_l2 = 0.0, div_norm = 0.0;
};

// -(a^{jk}_{rs} w^r_{,j})_{,k} + q_{,s} = f^s, div w = 0, with either the traction
// condition a w_{,j} N_k - q N_s = eps^p Delta_0 w^s + g^s or w = 0 on the boundary.
StokesSolution solve_variable_stokes(const FeSystem& fe, const CoefficientTensor& a,
                                     const std::function<Vec2(double, double)>& f,
                                     const std::optional<std::function<Vec2(double)>>& g,
                                     const StokesBc& bc);

struct DivSolution {
  VectorField u;
  double mean = 0.0;
};

// u with div u = p on the grid: a Neumann potential for p - mean(p) corrected by a
// stream function so that the mean-free part vanishes on r = 1, plus mean/2 (x, y).
DivSolution solve_div(const ScalarField& p, const DiskGrid& grid);

}  // namespace alefs
