// alefs command line: run, check, selftest.
#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "alefs/errors.hpp"
#include "alefs/fields_ops.hpp"
#include "alefs/io.hpp"
#include "alefs/smoothing.hpp"

namespace fs = std::filesystem;
using namespace alefs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

HeightField initial_height(const Simulator& sim) {
  if (sim.config().seed_case != "custom_csv") return sim.seed_height();
  const std::string path = (fs::path(sim.config().output_dir) / "initial_height.csv").string();
  if (!fs::exists(path)) throw ValidationError("seed_case custom_csv needs " + path);
  const HeightField h = read_height_csv(path);
  if (h.size() != sim.config().n_theta)
    throw ValidationError(path + " has " + std::to_string(h.size()) + " rows, n_theta is " +
                          std::to_string(sim.config().n_theta));
  return h;
}

int cmd_run(const std::string& config_path, const std::string& resume) {
  SolverConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  const std::string dir = cfg.output_dir;
  Manifest man;
  man.config = cfg;
  man.start_time = utc_now();
  man.timeseries = "timeseries.csv";
  auto finish = [&](const std::string& status, const std::string& msg, int code) {
    man.status = status;
    man.message = msg;
    man.end_time = utc_now();
    try {
      fs::create_directories(dir);
      write_manifest(man, (fs::path(dir) / "manifest.json").string());
    } catch (const std::exception& e) {
      std::cerr << "manifest not written: " << e.what() << "\n";
    }
    if (!msg.empty()) std::cerr << status << ": " << msg << "\n";
    return code;
  };

  try {
    const Simulator sim(cfg);
    SimState start;
    try {
      start = resume.empty() ? sim.initial_state(initial_height(sim)) : read_snapshot(resume);
    } catch (const ValidationError& e) {
      return finish("io_error", e.what(), kExitConfig);
    }
    fs::create_directories(dir);
    TimeseriesWriter ts((fs::path(dir) / man.timeseries).string(), !resume.empty());
    int last_snapshot = -1;
    const auto observer = [&](const SimState& s, const DiagnosticsRecord& d) {
      ts.write(d);
      if (s.step % cfg.snapshot_every == 0) {
        man.snapshots.push_back(write_snapshot(sim, s, dir));
        last_snapshot = s.step;
      }
      std::cout << "step " << s.step << " t=" << format_double(s.t) << " E=" << format_double(d.total_energy)
                << " fp=" << s.fp_iters << "\n";
    };
    const RunResult res = run(sim, start, observer);
    if (res.final_state.step != last_snapshot) man.snapshots.push_back(write_snapshot(sim, res.final_state, dir));
    const bool ok = res.status == RunStatus::completed;
    return finish(to_string(res.status), res.message, ok ? kExitOk : kExitSolver);
  } catch (const ValidationError& e) {
    return finish("io_error", e.what(), kExitConfig);
  } catch (const IoError& e) {
    return finish("io_error", e.what(), kExitSolver);
  } catch (const Error& e) {
    return finish("not_diffeomorphism", e.what(), kExitSolver);
  } catch (const std::exception& e) {
    return finish("io_error", e.what(), kExitSolver);
  }
}

int cmd_check(const std::string& config_path) {
  try {
    const SolverConfig cfg = load_config(config_path);
    std::cout << format_config(cfg);
    const Simulator sim(cfg);
    const HeightField h0 = initial_height(sim);
    const MollifierKernel k(cfg.epsilon, sim.curve());
    std::cout << "# derived\n"
              << "steps = " << cfg.total_steps() << "\n"
              << "ds = " << format_double(sim.curve().ds()) << "\n"
              << "mollifier_symbol_k2 = " << format_double(k.symbol(2)) << "\n"
              << "velocity_unknowns = " << sim.fe().velocity_dofs() << "\n"
              << "pressure_unknowns = " << sim.fe().pressure_dofs() << "\n"
              << "h0_H1.7 = " << format_double(sobolev_norm(h0, 1.7, sim.curve())) << "\n"
              << "smallness_ok = " << (validate_smallness(h0, cfg.varsigma, sim.curve()) ? "true" : "false")
              << "\n";
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_selftest() {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, double value) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << format_double(value) << ")\n";
    if (!ok) ++failures;
  };
  try {
    const int nt = 64;
    const ReferenceCurve gamma = ReferenceCurve::circle(nt, 1.0);
    const DiskGrid grid(16, nt);

    const HeightField zero = HeightField::Zero(nt);
    const double circle_err = (curvature(zero, gamma).array() + 1.0).abs().maxCoeff();
    report("circle curvature is -b0", circle_err < 1e-12, circle_err);

    HeightField c = HeightField::Constant(nt, 0.1);
    const AleMap scaled = harmonic_extend(c, gamma, grid);
    const double jerr = (scaled.J().array() - 1.21).abs().maxCoeff();
    report("scaling map J = (1+c)^2", jerr < 1e-12, jerr);
    const double piola = piola_residual(scaled, c, gamma);
    report("Piola identity on the scaling map", piola < 1e-10, piola);

    HeightField h(nt);
    for (int j = 0; j < nt; ++j) h[j] = 0.03 * std::cos(3.0 * gamma.s(j));
    const AleMap m = harmonic_extend(h, gamma, grid);
    const double harm = harmonic_residual(m);
    report("harmonic extension residual", harm < 1e-10, harm);

    Eigen::VectorXd f(nt), g(nt);
    for (int j = 0; j < nt; ++j) {
      f[j] = std::sin(gamma.s(j));
      g[j] = std::cos(2.0 * gamma.s(j));
    }
    const MollifierKernel k(0.3, gamma);
    const double comm = (k.apply(arc_derivative(g, 1, gamma)) - arc_derivative(k.apply(g), 1, gamma))
                            .cwiseAbs()
                            .maxCoeff();
    report("mollifier commutes with d/ds", comm < 1e-12, comm);

    std::vector<BoundaryScalar> forcing(3, g);
    const auto hs = damped_height_evolution(f, forcing, 0.2, 0.01, 3, gamma);
    report("damped height evolution finite", hs.back().allFinite(), hs.back().norm());

    SolverConfig cfg;
    cfg.n_r = 6;
    cfg.n_theta = 16;
    cfg.dt = 1e-3;
    cfg.t_end = 2e-3;
    const Simulator sim(cfg);
    SimState s = sim.initial_state(HeightField::Zero(16));
    s = sim.phi_step(s);
    const double wmax = s.w.cwiseAbs().maxCoeff();
    report("static circle stays at rest", wmax < 1e-6, wmax);
  } catch (const std::exception& e) {
    std::cout << "FAIL selftest raised: " << e.what() << "\n";
    return 1;
  }
  std::cout << (failures == 0 ? "selftest passed\n" : "selftest failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-boundary Navier-Stokes simulator on a perturbed disk"};
  app.require_subcommand(1);
  std::string config, resume;
  auto* run = app.add_subcommand("run", "Run a simulation from a config file");
  run->add_option("config", config, "Config file")->required();
  run->add_option("--resume", resume, "Snapshot JSON to continue from");
  auto* check = app.add_subcommand("check", "Validate a config and print derived parameters");
  check->add_option("config", config, "Config file")->required();
  app.add_subcommand("selftest", "Run built-in invariant checks");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (run->parsed()) return cmd_run(config, resume);
  if (check->parsed()) return cmd_check(config);
  return cmd_selftest();
}
