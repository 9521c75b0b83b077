#include "alefs/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "alefs/errors.hpp"
#include "alefs/smoothing.hpp"

namespace alefs {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& v, int line, const std::string& key) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ParseError("line " + std::to_string(line) + ": key '" + key + "': not a number: '" + v + "'");
  return x;
}

int to_int(const std::string& v, int line, const std::string& key) {
  int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ParseError("line " + std::to_string(line) + ": key '" + key + "': not an integer: '" + v + "'");
  return x;
}

using Setter = std::function<void(SolverConfig&, const std::string&, int, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"n_r", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.n_r = to_int(v, l, k); }},
      {"n_theta", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.n_theta = to_int(v, l, k); }},
      {"dt", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.dt = to_double(v, l, k); }},
      {"t_end", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.t_end = to_double(v, l, k); }},
      {"epsilon", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.epsilon = to_double(v, l, k); }},
      {"theta", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.theta = to_double(v, l, k); }},
      {"sigma", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.sigma = to_double(v, l, k); }},
      {"varsigma", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.varsigma = to_double(v, l, k); }},
      {"fp_tol", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.fp_tol = to_double(v, l, k); }},
      {"fp_max_iter", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.fp_max_iter = to_int(v, l, k); }},
      {"relax", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.relax = to_double(v, l, k); }},
      {"output_dir", [](SolverConfig& c, const std::string& v, int, const std::string&) { c.output_dir = v; }},
      {"snapshot_every", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.snapshot_every = to_int(v, l, k); }},
      {"seed_case", [](SolverConfig& c, const std::string& v, int, const std::string&) { c.seed_case = v; }},
      {"perturbation_amplitude", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.perturbation_amplitude = to_double(v, l, k); }},
      {"perturbation_mode", [](SolverConfig& c, const std::string& v, int l, const std::string& k) { c.perturbation_mode = to_int(v, l, k); }},
  };
  return table;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("write failed for " + path);
}

json vec_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Eigen::VectorXd json_vec(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), Eigen::Index(v.size()));
}

json config_json(const SolverConfig& c) {
  return json{{"n_r", c.n_r},
              {"n_theta", c.n_theta},
              {"dt", c.dt},
              {"t_end", c.t_end},
              {"epsilon", c.epsilon},
              {"theta", c.theta},
              {"sigma", c.sigma},
              {"varsigma", c.varsigma},
              {"fp_tol", c.fp_tol},
              {"fp_max_iter", c.fp_max_iter},
              {"relax", c.relax},
              {"output_dir", c.output_dir},
              {"snapshot_every", c.snapshot_every},
              {"seed_case", c.seed_case},
              {"perturbation_amplitude", c.perturbation_amplitude},
              {"perturbation_mode", c.perturbation_mode}};
}

}  // namespace

SolverConfig parse_config(const std::string& text) {
  SolverConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::set<std::string> seen;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(line) + ": expected 'key = value'");
    const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ParseError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    if (value.empty()) throw ParseError("line " + std::to_string(line) + ": key '" + key + "' has no value");
    it->second(cfg, value, line, key);
  }
  cfg = cfg.normalized();
  cfg.validate();
  return cfg;
}

SolverConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const SolverConfig& c) {
  std::ostringstream o;
  o << "n_r = " << c.n_r << "\n"
    << "n_theta = " << c.n_theta << "\n"
    << "dt = " << format_double(c.dt) << "\n"
    << "t_end = " << format_double(c.t_end) << "\n"
    << "epsilon = " << format_double(c.epsilon) << "\n"
    << "theta = " << format_double(c.theta) << "\n"
    << "sigma = " << format_double(c.sigma) << "\n"
    << "varsigma = " << format_double(c.varsigma) << "\n"
    << "fp_tol = " << format_double(c.fp_tol) << "\n"
    << "fp_max_iter = " << c.fp_max_iter << "\n"
    << "relax = " << format_double(c.relax) << "\n"
    << "output_dir = " << c.output_dir << "\n"
    << "snapshot_every = " << c.snapshot_every << "\n"
    << "seed_case = " << c.seed_case << "\n"
    << "perturbation_amplitude = " << format_double(c.perturbation_amplitude) << "\n"
    << "perturbation_mode = " << c.perturbation_mode << "\n";
  return o.str();
}

void save_config(const SolverConfig& cfg, const std::string& path) { write_text(path, format_config(cfg)); }

HeightField read_height_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read height file " + path);
  std::string line;
  if (!std::getline(f, line)) throw IoError(path + " is empty");
  std::vector<double> h;
  int n = 1;
  while (std::getline(f, line)) {
    ++n;
    if (trim(line).empty()) continue;
    std::istringstream row(line);
    std::string s_col, h_col;
    if (!std::getline(row, s_col, ',') || !std::getline(row, h_col, ','))
      throw IoError(path + ":" + std::to_string(n) + ": expected columns s,h");
    h.push_back(to_double(trim(h_col), n, "h"));
  }
  return Eigen::Map<const Eigen::VectorXd>(h.data(), Eigen::Index(h.size()));
}

SnapshotFiles write_snapshot(const Simulator& sim, const SimState& s, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  char stem[32];
  std::snprintf(stem, sizeof stem, "snapshot_%06d", s.step);
  SnapshotFiles files{std::string(stem) + ".json", std::string(stem) + "_interface.csv",
                      std::string(stem) + "_field.csv"};
  const ReferenceCurve& gamma = sim.curve();
  const double eps = sim.epsilon();
  const HeightField hee = double_mollify(s.h, eps, gamma);
  const BoundaryScalar kappa = curvature(s.h, gamma);

  std::ostringstream iface;
  iface << "s,h,h_ee,curvature\n";
  for (int j = 0; j < gamma.n_theta(); ++j)
    iface << format_double(gamma.s(j)) << ',' << format_double(s.h[j]) << ',' << format_double(hee[j]) << ','
          << format_double(kappa[j]) << '\n';
  write_text((fs::path(dir) / files.interface_csv).string(), iface.str());

  const DiskGrid& grid = sim.grid();
  const AleMap m = sim.state_map(s);
  const VectorField w = fe_to_grid(sim.mesh(), s.w);
  const ScalarField q = pressure_to_grid(sim.mesh(), s.q);
  std::ostringstream field;
  field << "r,theta,w1,w2,q,J\n";
  for (int i = 0; i < grid.n_r(); ++i)
    for (int j = 0; j < grid.n_theta(); ++j) {
      const int n = grid.node(i, j);
      field << format_double(grid.r(i)) << ',' << format_double(grid.theta(j)) << ',' << format_double(w(n, 0))
            << ',' << format_double(w(n, 1)) << ',' << format_double(q[n]) << ',' << format_double(m.J()[n])
            << '\n';
    }
  write_text((fs::path(dir) / files.field_csv).string(), field.str());

  const DiagnosticsRecord d = sim.energy(s);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["t"] = s.t;
  j["step"] = s.step;
  j["n_r"] = grid.n_r();
  j["n_theta"] = grid.n_theta();
  j["epsilon"] = eps;
  j["norms"] = {{"kinetic", d.kinetic},   {"length", d.length}, {"area", d.area},
                {"div_norm", d.div_norm}, {"h_H2", d.h_H2},     {"v_H1", d.v_H1}};
  j["files"] = {{"interface", files.interface_csv}, {"field", files.field_csv}};
  j["restart"] = {{"h", vec_json(s.h)},
                  {"w", vec_json(s.w)},
                  {"q", vec_json(s.q)},
                  {"energy_sup", s.energy_sup},
                  {"energy_integral", s.energy_integral},
                  {"fp_iters", s.fp_iters},
                  {"fp_contraction", s.fp_contraction}};
  write_text((fs::path(dir) / files.json).string(), j.dump(1) + "\n");
  return files;
}

SimState read_snapshot(const std::string& json_path) {
  std::ifstream f(json_path);
  if (!f) throw IoError("cannot read snapshot " + json_path);
  json j;
  try {
    f >> j;
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw IoError("unsupported snapshot schema");
    SimState s;
    s.t = j.at("t").get<double>();
    s.step = j.at("step").get<int>();
    const json& r = j.at("restart");
    s.h = json_vec(r.at("h"));
    s.w = json_vec(r.at("w"));
    s.q = json_vec(r.at("q"));
    s.energy_sup = r.at("energy_sup").get<double>();
    s.energy_integral = r.at("energy_integral").get<double>();
    s.fp_iters = r.at("fp_iters").get<int>();
    s.fp_contraction = r.at("fp_contraction").get<double>();
    return s;
  } catch (const json::exception& e) {
    throw IoError(json_path + ": " + e.what());
  }
}

TimeseriesWriter::TimeseriesWriter(const std::string& path, bool append) {
  const bool fresh = !append || !fs::exists(path) || fs::file_size(path) == 0;
  out_.open(path, append ? std::ios::app : std::ios::trunc);
  if (!out_) throw IoError("cannot open " + path);
  if (fresh) out_ << header() << '\n' << std::flush;
}

std::string TimeseriesWriter::header() {
  return "t,kinetic,surface_energy,total_energy,area,length,div_norm,h_H2,v_H1,fp_iters";
}

void TimeseriesWriter::write(const DiagnosticsRecord& r) {
  out_ << format_double(r.t) << ',' << format_double(r.kinetic) << ',' << format_double(r.surface_energy) << ','
       << format_double(r.total_energy) << ',' << format_double(r.area) << ',' << format_double(r.length) << ','
       << format_double(r.div_norm) << ',' << format_double(r.h_H2) << ',' << format_double(r.v_H1) << ','
       << r.fp_iters << '\n'
       << std::flush;
  if (!out_) throw IoError("timeseries write failed");
}

void write_manifest(const Manifest& m, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["version"] = kVersion;
  j["config"] = config_json(m.config);
  j["start_time"] = m.start_time;
  j["end_time"] = m.end_time;
  j["status"] = m.status;
  j["message"] = m.message;
  j["timeseries"] = m.timeseries;
  json snaps = json::array();
  for (const auto& s : m.snapshots)
    snaps.push_back({{"json", s.json}, {"interface", s.interface_csv}, {"field", s.field_csv}});
  j["snapshots"] = snaps;
  write_text(path, j.dump(1) + "\n");
}

}  // namespace alefs
