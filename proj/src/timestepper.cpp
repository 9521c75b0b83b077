#include "alefs/timestepper.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "alefs/errors.hpp"
#include "alefs/point_kernels.hpp"
#include "alefs/smoothing.hpp"

namespace alefs {

double SolverConfig::default_epsilon(int n_theta) { return 3.0 * 2.0 * M_PI / n_theta; }

SolverConfig SolverConfig::normalized() const {
  SolverConfig c = *this;
  if (c.epsilon == 0.0 && c.n_theta > 0) c.epsilon = default_epsilon(c.n_theta);
  return c;
}

void SolverConfig::validate() const {
  auto fail = [](const std::string& what) { throw ValidationError(what); };
  if (n_r < 6) fail("n_r >= 6");
  if (n_theta < 8 || n_theta % 2 != 0) fail("n_theta even and >= 8");
  if (!(dt > 0.0)) fail("dt > 0");
  if (!(t_end > 0.0)) fail("t_end > 0");
  if (!(epsilon > 0.0)) fail("epsilon > 0");
  if (!(epsilon < 2.0 * M_PI / 4.0)) fail("epsilon < length / 4");
  if (!(theta > 0.0)) fail("theta > 0");
  if (!(sigma > 0.0)) fail("sigma > 0");
  if (!(varsigma > 0.0)) fail("varsigma > 0");
  if (!(fp_tol > 0.0)) fail("fp_tol > 0");
  if (fp_max_iter < 1) fail("fp_max_iter >= 1");
  if (!(relax > 0.0 && relax <= 1.0)) fail("relax in (0, 1]");
  if (snapshot_every < 1) fail("snapshot_every >= 1");
  if (output_dir.empty()) fail("output_dir non-empty");
  if (seed_case != "equilibrium" && seed_case != "mode_k_perturbation" && seed_case != "custom_csv")
    fail("seed_case in {equilibrium, mode_k_perturbation, custom_csv}");
  if (perturbation_mode < 0 || perturbation_mode >= n_theta / 2) fail("0 <= perturbation_mode < n_theta / 2");
  if (!std::isfinite(perturbation_amplitude)) fail("perturbation_amplitude finite");
}

int SolverConfig::total_steps() const { return int(std::llround(t_end / dt)); }

bool validate_smallness(const HeightField& h, double varsigma, const ReferenceCurve& gamma) {
  return sobolev_norm(h, 1.7, gamma) < varsigma;
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::smallness_violation: return "smallness_violation";
    case RunStatus::fixed_point_divergence: return "fixed_point_divergence";
    case RunStatus::not_diffeomorphism: return "not_diffeomorphism";
  }
  return "unknown";
}

namespace {

SolverConfig checked(const SolverConfig& cfg) {
  SolverConfig c = cfg.normalized();
  c.validate();
  return c;
}

}  // namespace

Simulator::Simulator(const SolverConfig& cfg)
    : cfg_(checked(cfg)),
      gamma_(ReferenceCurve::circle(cfg_.n_theta, 1.0)),
      grid_(cfg_.n_r, cfg_.n_theta),
      fe_(PolarMesh(cfg_.n_r, cfg_.n_theta)) {}

HeightField Simulator::seed_height() const {
  HeightField h = HeightField::Zero(cfg_.n_theta);
  if (cfg_.seed_case == "mode_k_perturbation")
    for (int j = 0; j < cfg_.n_theta; ++j)
      h[j] = cfg_.perturbation_amplitude * std::cos(cfg_.perturbation_mode * gamma_.s(j));
  else if (cfg_.seed_case == "custom_csv")
    throw std::invalid_argument("custom_csv heights are loaded by the io layer");
  return h;
}

SimState Simulator::initial_state(const HeightField& h0, const Eigen::VectorXd& w0) const {
  if (h0.size() != cfg_.n_theta) throw GridMismatch("initial height does not match n_theta");
  check_admissible(h0, gamma_);
  if (!validate_smallness(h0, cfg_.varsigma, gamma_))
    throw SmallnessViolation("initial height violates |h|_{H^1.7} < varsigma");
  SimState s;
  s.h = h0;
  s.w = Eigen::VectorXd::Zero(fe_.velocity_dofs());
  s.q = Eigen::VectorXd::Zero(fe_.pressure_dofs());
  if (w0.size() > 0) {
    if (w0.size() != fe_.velocity_dofs()) throw GridMismatch("initial velocity does not match the mesh");
    s.w = solve_mixed(fe_, fe_.mass(), fe_.mass() * w0, cfg_.theta).w;
  }
  const DiagnosticsRecord d = energy(s);
  s.energy_sup = d.v_H1 * d.v_H1 + d.h_H2 * d.h_H2;
  return s;
}

AleMap Simulator::state_map(const SimState& s) const {
  return harmonic_extend(double_mollify(s.h, cfg_.epsilon, gamma_), gamma_, grid_);
}

VectorField Simulator::grid_velocity(const SimState& s) const {
  return pullback_v(fe_to_grid(fe_.mesh(), s.w), state_map(s));
}

SimState Simulator::phi_step(const SimState& s) const {
  const double dt = cfg_.dt, eps = cfg_.epsilon;
  if (!validate_smallness(s.h, cfg_.varsigma, gamma_))
    throw SmallnessViolation("|h|_{H^1.7} >= varsigma at t = " + std::to_string(s.t));
  const PolarMesh& mesh = fe_.mesh();
  const int nt = cfg_.n_theta;

  // Map data of the current state at every quadrature point, for psi_t and P_t.
  const HarmonicMap base = state_map(s).harmonic();
  std::vector<std::vector<std::pair<Vec2, Mat2>>> base_qp(mesh.n_elements());
  for (int e = 0; e < mesh.n_elements(); ++e)
    for (const auto& q : mesh.quadrature(e)) {
      const MapPoint p = base.sample(q.x, q.y);
      base_qp[e].emplace_back(p.psi, p.F / p.F.determinant());
    }

  const Eigen::VectorXd Mw = fe_.mass() * s.w / dt;
  const SpMat stiff = eps * eps * fe_.boundary_stiffness();

  MixedSolver solver(fe_, cfg_.theta);
  Eigen::VectorXd w_bar = s.w, w_new;
  HeightField h_bar = s.h, h_new;
  Eigen::VectorXd load;
  HarmonicMap map;
  double last_delta = 0.0, contraction = 0.0;
  int iter = 0;
  bool converged = false;
  while (!converged) {
    if (++iter > cfg_.fp_max_iter)
      throw FixedPointDivergence("no convergence in " + std::to_string(cfg_.fp_max_iter) +
                                 " fixed-point iterations, last increment " + std::to_string(last_delta));
    const HeightField hee = double_mollify(h_bar, eps, gamma_);
    const AleMap mbar = harmonic_extend(hee, gamma_, grid_);
    map = mbar.harmonic();

    const BoundaryScalar kappa = regularized_curvature(h_bar, hee, gamma_);
    BoundaryVector G(nt, 2);
    for (int j = 0; j < nt; ++j) G.row(j) = cfg_.sigma * kappa[j] * gamma_.normal().row(j);

    const Eigen::VectorXd& wb = w_bar;
    const Eigen::VectorXd& wn = s.w;
    load = fe_.volume_load([&](const PolarMesh::QuadPoint& q, int e) {
             const MapPoint p = map.sample(q.x, q.y);
             const MapJet jet = make_jet(p);
             const auto& [psi0, P0] = base_qp[e][&q - mesh.quadrature(e).data()];
             ForcingTerms t;
             t.psi_t = (p.psi - psi0) / dt;
             t.P_t = (jet.P - P0) / dt;
             t.w_t = (fe_value(mesh, wb, e, q) - fe_value(mesh, wn, e, q)) / dt;
             return forcing(jet, fe_value(mesh, wb, e, q), fe_gradient(mesh, wb, e, q), t);
           }) +
           fe_.boundary_load(G);

    const SpMat K = SpMat(fe_.mass() / dt) + fe_.viscous(map) + stiff;
    w_new = solver.solve(K, Mw + load).w;

    const BoundaryVector trace = fe_boundary_trace(mesh, w_new);
    h_new.resize(nt);
    for (int j = 0; j < nt; ++j)
      h_new[j] = s.h[j] + dt * trace.row(j).dot(gamma_.normal().row(j)) / (1.0 + gamma_.b0()[j] * hee[j]);

    const Eigen::VectorXd dw = cfg_.relax * (w_new - w_bar);
    const HeightField dh = cfg_.relax * (h_new - h_bar);
    w_bar += dw;
    h_bar += dh;
    const double delta = std::max(fe_.l2_norm(dw), l2_norm(dh, gamma_));
    if (!std::isfinite(delta)) throw FixedPointDivergence("non-finite fixed-point increment");
    if (iter > 1 && last_delta > 0.0) contraction = std::max(contraction, delta / last_delta);
    last_delta = delta;
    converged = delta <= cfg_.fp_tol;
  }

  SimState out;
  out.step = s.step + 1;
  out.t = out.step * dt;
  out.h = h_new;
  out.w = w_new;
  out.q = recover_pressure(fe_, map, w_new, (w_new - s.w) / dt, load, eps);
  out.fp_iters = iter;
  out.fp_contraction = contraction;
  check_admissible(out.h, gamma_);
  if (!validate_smallness(out.h, cfg_.varsigma, gamma_))
    throw SmallnessViolation("|h|_{H^1.7} >= varsigma at t = " + std::to_string(out.t));
  out.energy_sup = s.energy_sup;
  out.energy_integral = s.energy_integral;
  const DiagnosticsRecord d = energy(out);
  out.energy_sup = std::max(s.energy_sup, d.v_H1 * d.v_H1 + d.h_H2 * d.h_H2);
  out.energy_integral = s.energy_integral + dt * d.v_H2 * d.v_H2;
  return out;
}

DiagnosticsRecord Simulator::energy(const SimState& s) const {
  DiagnosticsRecord d;
  d.t = s.t;
  const AleMap m = state_map(s);
  const PolarMesh& mesh = fe_.mesh();
  double kin = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e)
    for (const auto& q : mesh.quadrature(e)) {
      const Mat2 F = m.harmonic().sample(q.x, q.y).F;
      const Vec2 w = fe_value(mesh, s.w, e, q);
      kin += q.weight * (F * w).squaredNorm() / F.determinant();
    }
  d.kinetic = 0.5 * kin;
  d.length = interface_length(s.h, gamma_);
  d.area = enclosed_area(s.h, gamma_);
  d.surface_energy = cfg_.sigma * d.length;
  d.total_energy = d.kinetic + d.surface_energy;
  d.div_norm = fe_.div_norm(s.w);
  d.h_H2 = sobolev_norm(s.h, 2.0, gamma_);
  const GridOps ops(grid_);
  const VectorField v = pullback_v(fe_to_grid(mesh, s.w), m);
  d.v_H1 = ops.h1_norm(v);
  d.v_H2 = ops.h2_norm(v);
  d.E = std::max(s.energy_sup, d.v_H1 * d.v_H1 + d.h_H2 * d.h_H2) + s.energy_integral;
  d.fp_iters = s.fp_iters;
  return d;
}

RunResult run(const Simulator& sim, const SimState& start,
              const std::function<void(const SimState&, const DiagnosticsRecord&)>& observer) {
  RunResult res;
  res.final_state = start;
  if (observer && start.step == 0) observer(start, sim.energy(start));
  const int total = sim.config().total_steps();
  try {
    while (res.final_state.step < total) {
      SimState next = sim.phi_step(res.final_state);
      res.final_state = std::move(next);
      if (observer) observer(res.final_state, sim.energy(res.final_state));
    }
  } catch (const SmallnessViolation& e) {
    res.status = RunStatus::smallness_violation;
    res.message = e.what();
  } catch (const NotDiffeomorphism& e) {
    res.status = RunStatus::not_diffeomorphism;
    res.message = e.what();
  } catch (const AdmissibilityViolation& e) {
    res.status = RunStatus::not_diffeomorphism;
    res.message = e.what();
  } catch (const FixedPointDivergence& e) {
    res.status = RunStatus::fixed_point_divergence;
    res.message = e.what();
  } catch (const SolverDivergence& e) {
    res.status = RunStatus::fixed_point_divergence;
    res.message = e.what();
  }
  return res;
}

}  // namespace alefs
