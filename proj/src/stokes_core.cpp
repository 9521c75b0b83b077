#include "alefs/stokes_core.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/UmfPackSupport>
#include <cmath>
#include <limits>
#include <string>

#include "alefs/errors.hpp"
#include "alefs/point_kernels.hpp"
#include "alefs/spectral.hpp"

namespace alefs {

using Triplets = std::vector<Eigen::Triplet<double>>;

CoefficientTensor CoefficientTensor::isotropic(double l1, double l2,
                                               std::function<double(double, double)> scale) {
  CoefficientTensor t;
  t.at = [l1, l2, scale](double x, double y) {
    const double c = scale ? scale(x, y) : 1.0;
    Rank4 a{};
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s)
            a[rank4_index(j, k, r, s)] = c * (l1 * (j == k) * (r == s) + l2 * (r == k) * (j == s));
    return a;
  };
  return t;
}

void check_symmetry(const CoefficientTensor& a, const DiskGrid& grid) {
  for (int n = 0; n < grid.size(); ++n) {
    const Rank4 v = a.at(grid.x(n), grid.y(n));
    double scale = 1.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s) {
            const double x = v[rank4_index(j, k, r, s)];
            if (std::abs(x - v[rank4_index(k, j, r, s)]) > 1e-12 * scale ||
                std::abs(x - v[rank4_index(j, k, s, r)]) > 1e-12 * scale)
              throw CoefficientSymmetryViolation(
                  "a^{jk}_{rs} symmetry fails at node " + std::to_string(n) + " (j,k,r,s) = (" +
                  std::to_string(j) + "," + std::to_string(k) + "," + std::to_string(r) + "," +
                  std::to_string(s) + ")");
          }
  }
}

double near_identity_distance(const CoefficientTensor& a, const DiskGrid& grid, double l1, double l2) {
  const Rank4 ref = CoefficientTensor::isotropic(l1, l2).at(0.0, 0.0);
  double d = 0.0;
  for (int n = 0; n < grid.size(); ++n) {
    const Rank4 v = a.at(grid.x(n), grid.y(n));
    for (int i = 0; i < 16; ++i) d = std::max(d, std::abs(v[i] - ref[i]));
  }
  return d;
}

FeSystem::FeSystem(const PolarMesh& mesh) : mesh_(mesh) {
  const int nv = mesh.n_velocity(), np = mesh.n_pressure();
  Triplets tm, tp, td, tb;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto& vn = mesh.velocity_nodes(e);
    const auto& pn = mesh.pressure_nodes(e);
    for (const auto& q : mesh.quadrature(e)) {
      for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) {
          const double v = q.weight * q.N[a] * q.N[b];
          tm.emplace_back(vn[b], vn[a], v);
          tm.emplace_back(nv + vn[b], nv + vn[a], v);
        }
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) tp.emplace_back(pn[i], pn[j], q.weight * q.Np[i] * q.Np[j]);
        for (int a = 0; a < 9; ++a)
          for (int c = 0; c < 2; ++c) td.emplace_back(pn[i], c * nv + vn[a], q.weight * q.Np[i] * q.dN[a][c]);
      }
    }
  }
  for (int b = 0; b < mesh.n_theta(); ++b) {
    const auto nodes = mesh.edge_nodes(b);
    for (const auto& ep : mesh.edge_quadrature(b))
      for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) {
          const double v = ep.weight * ep.dN[a] * ep.dN[c];
          tb.emplace_back(nodes[c], nodes[a], v);
          tb.emplace_back(nv + nodes[c], nv + nodes[a], v);
        }
  }
  mass_.resize(2 * nv, 2 * nv);
  mass_.setFromTriplets(tm.begin(), tm.end());
  pmass_.resize(np, np);
  pmass_.setFromTriplets(tp.begin(), tp.end());
  div_.resize(np, 2 * nv);
  div_.setFromTriplets(td.begin(), td.end());
  bstiff_.resize(2 * nv, 2 * nv);
  bstiff_.setFromTriplets(tb.begin(), tb.end());
}

namespace {

// Adds an 18 x 18 element block; local index c * 9 + a.
void scatter(Triplets& t, const std::array<int, 9>& vn, int nv, const Eigen::Matrix<double, 18, 18>& K) {
  for (int s = 0; s < 2; ++s)
    for (int b = 0; b < 9; ++b)
      for (int r = 0; r < 2; ++r)
        for (int a = 0; a < 9; ++a) {
          const double v = K(s * 9 + b, r * 9 + a);
          if (v != 0.0) t.emplace_back(s * nv + vn[b], r * nv + vn[a], v);
        }
}

}  // namespace

SpMat FeSystem::viscous(const HarmonicMap& map) const {
  const int nv = mesh_.n_velocity();
  Triplets t;
  t.reserve(size_t(mesh_.n_elements()) * 324);
  for (int e = 0; e < mesh_.n_elements(); ++e) {
    Eigen::Matrix<double, 18, 18> K = Eigen::Matrix<double, 18, 18>::Zero();
    for (const auto& q : mesh_.quadrature(e)) {
      const MapJet jet = make_jet(map.sample(q.x, q.y));
      // S is linear in (w, grad w); tabulate its response to unit inputs.
      std::array<Mat2, 2> Sw;
      std::array<std::array<Mat2, 2>, 2> Sg;
      for (int r = 0; r < 2; ++r) {
        Sw[r] = transformed_stress(jet, Vec2::Unit(r), Mat2::Zero());
        for (int j = 0; j < 2; ++j) {
          Mat2 E = Mat2::Zero();
          E(r, j) = 1.0;
          Sg[r][j] = transformed_stress(jet, Vec2::Zero(), E);
        }
      }
      for (int r = 0; r < 2; ++r)
        for (int a = 0; a < 9; ++a) {
          const Mat2 S = q.N[a] * Sw[r] + q.dN[a][0] * Sg[r][0] + q.dN[a][1] * Sg[r][1];
          for (int b = 0; b < 9; ++b) {
            const Vec2 c = S * q.dN[b];
            K(b, r * 9 + a) += q.weight * c[0];
            K(9 + b, r * 9 + a) += q.weight * c[1];
          }
        }
    }
    scatter(t, mesh_.velocity_nodes(e), nv, K);
  }
  SpMat out(2 * nv, 2 * nv);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SpMat FeSystem::coefficient_form(const CoefficientTensor& a) const {
  const int nv = mesh_.n_velocity();
  Triplets t;
  t.reserve(size_t(mesh_.n_elements()) * 324);
  for (int e = 0; e < mesh_.n_elements(); ++e) {
    Eigen::Matrix<double, 18, 18> K = Eigen::Matrix<double, 18, 18>::Zero();
    for (const auto& q : mesh_.quadrature(e)) {
      const Rank4 c = a.at(q.x, q.y);
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
          for (int A = 0; A < 9; ++A)
            for (int B = 0; B < 9; ++B) {
              double v = 0.0;
              for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) v += c[rank4_index(j, k, r, s)] * q.dN[A][j] * q.dN[B][k];
              K(s * 9 + B, r * 9 + A) += q.weight * v;
            }
    }
    scatter(t, mesh_.velocity_nodes(e), nv, K);
  }
  SpMat out(2 * nv, 2 * nv);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

Eigen::VectorXd FeSystem::volume_load(const VolumeLoad& f) const {
  const int nv = mesh_.n_velocity();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * nv);
  for (int e = 0; e < mesh_.n_elements(); ++e) {
    const auto& vn = mesh_.velocity_nodes(e);
    for (const auto& q : mesh_.quadrature(e)) {
      const Vec2 v = f(q, e);
      for (int a = 0; a < 9; ++a) {
        out[vn[a]] += q.weight * q.N[a] * v[0];
        out[nv + vn[a]] += q.weight * q.N[a] * v[1];
      }
    }
  }
  return out;
}

Eigen::VectorXd FeSystem::volume_load(const std::function<Vec2(double, double)>& f) const {
  return volume_load([&](const PolarMesh::QuadPoint& q, int) { return f(q.x, q.y); });
}

Eigen::VectorXd FeSystem::boundary_load(const std::function<Vec2(double)>& g) const {
  const int nv = mesh_.n_velocity();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * nv);
  for (int b = 0; b < mesh_.n_theta(); ++b) {
    const auto nodes = mesh_.edge_nodes(b);
    for (const auto& ep : mesh_.edge_quadrature(b)) {
      const Vec2 v = g(ep.theta);
      for (int a = 0; a < 3; ++a) {
        out[nodes[a]] += ep.weight * ep.N[a] * v[0];
        out[nv + nodes[a]] += ep.weight * ep.N[a] * v[1];
      }
    }
  }
  return out;
}

Eigen::VectorXd FeSystem::boundary_load(const BoundaryVector& g) const {
  if (g.rows() != mesh_.n_theta()) throw GridMismatch("boundary data does not match the mesh");
  const Eigen::VectorXcd c0 = spectral::coefficients(g.col(0));
  const Eigen::VectorXcd c1 = spectral::coefficients(g.col(1));
  return boundary_load(
      [&](double th) { return Vec2(spectral::evaluate(c0, th), spectral::evaluate(c1, th)); });
}

double FeSystem::l2_norm(const Eigen::VectorXd& w) const { return std::sqrt(std::max(0.0, w.dot(mass_ * w))); }

double FeSystem::h1_norm(const Eigen::VectorXd& w) const {
  double acc = 0.0;
  for (int e = 0; e < mesh_.n_elements(); ++e)
    for (const auto& q : mesh_.quadrature(e))
      acc += q.weight * (fe_value(mesh_, w, e, q).squaredNorm() + fe_gradient(mesh_, w, e, q).squaredNorm());
  return std::sqrt(acc);
}

double FeSystem::pressure_l2(const Eigen::VectorXd& q) const {
  return std::sqrt(std::max(0.0, q.dot(pmass_ * q)));
}

double FeSystem::pressure_mean(const Eigen::VectorXd& q) const { return (pmass_ * q).sum() / M_PI; }

double FeSystem::div_norm(const Eigen::VectorXd& w) const {
  const Eigen::VectorXd r = div_ * w;
  Eigen::SimplicialLDLT<SpMat> ldlt(pmass_);
  return std::sqrt(std::max(0.0, r.dot(ldlt.solve(r))));
}

std::vector<int> FeSystem::boundary_dofs() const {
  const int nv = mesh_.n_velocity();
  std::vector<int> out;
  for (int m = 0; m < 2 * mesh_.n_theta(); ++m) {
    const int v = mesh_.vnode(2 * mesh_.n_r(), m);
    out.push_back(v);
    out.push_back(nv + v);
  }
  return out;
}

struct MixedSolver::Lu {
  Eigen::UmfPackLU<SpMat> lu;
};

MixedSolver::MixedSolver(const FeSystem& fe, double theta, std::vector<int> dirichlet)
    : fe_(&fe), theta_(theta), dirichlet_(std::move(dirichlet)), fixed_(fe.velocity_dofs(), 0) {
  if (!(theta >= 0.0)) throw std::invalid_argument("penalty parameter must be >= 0");
  for (int d : dirichlet_) fixed_[d] = 1;
}

MixedSolver::~MixedSolver() = default;
MixedSolver::MixedSolver(MixedSolver&&) noexcept = default;

SpMat MixedSolver::assemble(const SpMat& K) const {
  const int nu = fe_->velocity_dofs(), np = fe_->pressure_dofs();
  if (K.rows() != nu || K.cols() != nu) throw GridMismatch("mixed system sizes do not match");
  const SpMat& D = fe_->divergence();
  const SpMat& Mp = fe_->pressure_mass();
  Triplets t;
  t.reserve(K.nonZeros() + 2 * D.nonZeros() + Mp.nonZeros() + dirichlet_.size());
  for (int c = 0; c < K.outerSize(); ++c)
    for (SpMat::InnerIterator it(K, c); it; ++it)
      if (!fixed_[it.row()]) t.emplace_back(it.row(), it.col(), it.value());
  for (int c = 0; c < D.outerSize(); ++c)
    for (SpMat::InnerIterator it(D, c); it; ++it) {
      if (!fixed_[it.col()]) t.emplace_back(it.col(), nu + it.row(), -it.value());
      t.emplace_back(nu + it.row(), it.col(), -it.value());
    }
  if (theta_ > 0.0)
    for (int c = 0; c < Mp.outerSize(); ++c)
      for (SpMat::InnerIterator it(Mp, c); it; ++it) t.emplace_back(nu + it.row(), nu + it.col(), -theta_ * it.value());
  for (int d : dirichlet_) t.emplace_back(d, d, 1.0);
  SpMat A(nu + np, nu + np);
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

Eigen::VectorXd MixedSolver::apply(const SpMat& K, const Eigen::VectorXd& x) const {
  const int nu = fe_->velocity_dofs(), np = fe_->pressure_dofs();
  const Eigen::VectorXd w = x.head(nu), q = x.tail(np);
  Eigen::VectorXd y(nu + np);
  y.head(nu) = K * w - fe_->divergence().transpose() * q;
  for (int d : dirichlet_) y[d] = w[d];
  y.tail(np) = -(fe_->divergence() * w) - theta_ * (fe_->pressure_mass() * q);
  return y;
}

void MixedSolver::factor(const SpMat& K) {
  lu_ = std::make_unique<Lu>();
  // Refinement is done here against the current operator.
  lu_->lu.umfpackControl()(UMFPACK_IRSTEP) = 0;
  lu_->lu.compute(assemble(K));
  if (lu_->lu.info() != Eigen::Success) {
    lu_.reset();
    throw SolverDivergence("sparse LU factorization failed");
  }
}

Eigen::VectorXd MixedSolver::lu_solve(const Eigen::VectorXd& b) const {
  Eigen::VectorXd x = lu_->lu.solve(b);
  if (lu_->lu.info() != Eigen::Success) throw SolverDivergence("sparse LU solve failed");
  return x;
}

MixedSolution MixedSolver::solve(const SpMat& K, const Eigen::VectorXd& rhs) {
  const int nu = fe_->velocity_dofs(), np = fe_->pressure_dofs();
  if (rhs.size() != nu) throw GridMismatch("right-hand side does not match the velocity space");
  Eigen::VectorXd b = Eigen::VectorXd::Zero(nu + np);
  b.head(nu) = rhs;
  for (int d : dirichlet_) b[d] = 0.0;
  const double bnorm = std::max(b.norm(), std::numeric_limits<double>::min());
  constexpr double kTol = 1e-13;
  constexpr int kMaxSteps = 30;
  refinements_ = 0;
  bool refactored = false;
  if (!lu_) {
    factor(K);
    refactored = true;
  }
  for (;;) {
    Eigen::VectorXd x = lu_solve(b);
    double prev = std::numeric_limits<double>::infinity();
    bool stalled = false;
    for (int it = 0; it <= kMaxSteps; ++it) {
      const Eigen::VectorXd r = b - apply(K, x);
      const double rn = r.norm();
      if (!std::isfinite(rn)) break;
      if (rn <= kTol * bnorm) return {x.head(nu), x.tail(np)};
      if (rn > 0.5 * prev) {
        stalled = true;
        // A fresh factorization that stalls has reached its attainable accuracy.
        if (refactored && rn <= 1e-10 * bnorm) return {x.head(nu), x.tail(np)};
        break;
      }
      prev = rn;
      x += lu_solve(r);
      ++refinements_;
    }
    if (refactored) {
      if (!stalled && x.allFinite()) return {x.head(nu), x.tail(np)};
      throw SolverDivergence("mixed solve did not reach the residual tolerance");
    }
    factor(K);
    refactored = true;
  }
}

MixedSolution solve_mixed(const FeSystem& fe, const SpMat& K, const Eigen::VectorXd& rhs, double theta,
                          const std::vector<int>& dirichlet) {
  MixedSolver solver(fe, theta, dirichlet);
  return solver.solve(K, rhs);
}

MixedSolution solve_penalized_step(const FeSystem& fe, const HarmonicMap& map, const Eigen::VectorXd& load,
                                   const Eigen::VectorXd& w_prev, double dt, double theta, double eps) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const SpMat K = SpMat(fe.mass() / dt) + fe.viscous(map) + SpMat(eps * eps * fe.boundary_stiffness());
  const Eigen::VectorXd rhs = fe.mass() * w_prev / dt + load;
  return solve_mixed(fe, K, rhs, theta);
}

Eigen::VectorXd recover_pressure_from_functional(const FeSystem& fe, const Eigen::VectorXd& T,
                                                 const std::vector<int>& fixed) {
  const int nu = fe.velocity_dofs(), np = fe.pressure_dofs();
  Eigen::VectorXd mask = Eigen::VectorXd::Ones(nu);
  for (int d : fixed) mask[d] = 0.0;
  const SpMat D = fe.divergence() * mask.asDiagonal();
  SpMat N = D * SpMat(D.transpose());
  Eigen::VectorXd rhs = D * T.cwiseProduct(mask);
  if (!fixed.empty()) {
    // Constants are in the kernel; pin the center value.
    N.prune([](Eigen::Index r, Eigen::Index c, double) { return r != 0 && c != 0; });
    N.coeffRef(0, 0) = 1.0;
    rhs[0] = 0.0;
  }
  Eigen::SimplicialLDLT<SpMat> ldlt(N);
  if (ldlt.info() != Eigen::Success) throw SolverDivergence("pressure normal equations are singular");
  Eigen::VectorXd q = ldlt.solve(rhs);
  if (!q.allFinite()) throw SolverDivergence("pressure recovery produced non-finite values");
  if (!fixed.empty()) q.array() -= fe.pressure_mean(q);
  (void)np;
  return q;
}

Eigen::VectorXd recover_pressure(const FeSystem& fe, const HarmonicMap& map, const Eigen::VectorXd& w,
                                 const Eigen::VectorXd& w_t, const Eigen::VectorXd& load, double eps) {
  const Eigen::VectorXd T =
      fe.mass() * w_t + fe.viscous(map) * w + eps * eps * (fe.boundary_stiffness() * w) - load;
  return recover_pressure_from_functional(fe, T);
}

StokesSolution solve_variable_stokes(const FeSystem& fe, const CoefficientTensor& a,
                                     const std::function<Vec2(double, double)>& f,
                                     const std::optional<std::function<Vec2(double)>>& g,
                                     const StokesBc& bc) {
  check_symmetry(a, fe.mesh().grid());
  SpMat K = fe.coefficient_form(a);
  Eigen::VectorXd rhs = fe.volume_load(f);
  std::vector<int> fixed, pinned;
  if (bc.kind == StokesBc::Kind::traction) {
    if (bc.eps < 0.0) throw std::invalid_argument("traction problem needs eps >= 0");
    if (bc.eps > 0.0) K += std::pow(bc.eps, bc.eps_power) * fe.boundary_stiffness();
    if (g) rhs += fe.boundary_load(*g);
    // Constant velocities are in the kernel; fix w = 0 at the center. The pressure is
    // still tested against every velocity function.
    pinned = {0, fe.mesh().n_velocity()};
  } else {
    if (g) throw std::invalid_argument("dirichlet problem takes no boundary traction");
    fixed = fe.boundary_dofs();
    pinned = fixed;
  }
  constexpr double kThetaInner = 1e-8;
  const MixedSolution mix = solve_mixed(fe, K, rhs, kThetaInner, pinned);
  StokesSolution out;
  out.w = mix.w;
  out.q = recover_pressure_from_functional(fe, K * mix.w - rhs, fixed);
  out.w_h1 = fe.h1_norm(out.w);
  out.q_l2 = fe.pressure_l2(out.q);
  out.div_norm = fe.div_norm(out.w);
  return out;
}

}  // namespace alefs
