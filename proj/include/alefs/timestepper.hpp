#pragma once

#include <functional>
#include <string>
#include <vector>

#include "alefs/ale_map.hpp"
#include "alefs/stokes_core.hpp"

namespace alefs {

struct SolverConfig {
  int n_r = 16;
  int n_theta = 64;
  double dt = 1e-3;
  double t_end = 0.1;
  // 0 selects default_epsilon(n_theta).
  double epsilon = 0.0;
  double theta = 1e-6;
  double sigma = 1.0;
  double varsigma = 0.25;
  double fp_tol = 1e-9;
  int fp_max_iter = 50;
  double relax = 0.7;
  std::string output_dir = "alefs_run";
  int snapshot_every = 10;
  std::string seed_case = "equilibrium";
  double perturbation_amplitude = 0.02;
  int perturbation_mode = 2;

  // Three angular cells of the unit circle.
  static double default_epsilon(int n_theta);
  // Copy with derived defaults filled in.
  SolverConfig normalized() const;
  // Throws ValidationError naming the violated invariant.
  void validate() const;
  int total_steps() const;
};

// Velocity and pressure are finite element coefficient vectors on the PolarMesh.
struct SimState {
  int step = 0;
  double t = 0.0;
  HeightField h;
  Eigen::VectorXd w;
  Eigen::VectorXd q;
  // E(t) = running sup of (|v|_H1^2 + |h|_H2^2) + time integral of |v|_H2^2
  double energy_sup = 0.0;
  double energy_integral = 0.0;
  int fp_iters = 0;
  // largest ratio of successive fixed-point increments in the last step
  double fp_contraction = 0.0;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double kinetic = 0.0;
  double surface_energy = 0.0;
  double total_energy = 0.0;
  double area = 0.0;
  double length = 0.0;
  double div_norm = 0.0;
  double h_H2 = 0.0;
  double v_H1 = 0.0;
  double v_H2 = 0.0;
  double E = 0.0;
  int fp_iters = 0;
};

bool validate_smallness(const HeightField& h, double varsigma, const ReferenceCurve& gamma);

class Simulator {
 public:
  explicit Simulator(const SolverConfig& cfg);

  const SolverConfig& config() const { return cfg_; }
  const ReferenceCurve& curve() const { return gamma_; }
  const DiskGrid& grid() const { return grid_; }
  const PolarMesh& mesh() const { return fe_.mesh(); }
  const FeSystem& fe() const { return fe_; }
  double epsilon() const { return cfg_.epsilon; }

  // Initial state from h0 and a velocity w0 in the divergence-free variable; w0 is
  // projected by one penalty solve. An empty w0 means zero.
  SimState initial_state(const HeightField& h0, const Eigen::VectorXd& w0 = {}) const;
  // Initial height of the configured seed case; custom_csv is read by io.
  HeightField seed_height() const;

  // One time step of the relaxed fixed-point map.
  SimState phi_step(const SimState& s) const;
  DiagnosticsRecord energy(const SimState& s) const;

  // Grid samples used by snapshots.
  AleMap state_map(const SimState& s) const;
  VectorField grid_velocity(const SimState& s) const;

 private:
  SolverConfig cfg_;
  ReferenceCurve gamma_;
  DiskGrid grid_;
  FeSystem fe_;
};

enum class RunStatus { completed, smallness_violation, fixed_point_divergence, not_diffeomorphism };
std::string to_string(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::completed;
  std::string message;
  SimState final_state;
};

// Steps until cfg.total_steps() or an error. The observer sees every accepted state,
// including the initial one when it is at step 0.
RunResult run(const Simulator& sim, const SimState& start,
              const std::function<void(const SimState&, const DiagnosticsRecord&)>& observer = {});

}  // namespace alefs
