#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "alefs/timestepper.hpp"

namespace alefs {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Flat "key = value" file; '#' starts a comment. Unknown keys raise ParseError,
// invariant violations raise ValidationError. Absent keys keep their defaults.
SolverConfig load_config(const std::string& path);
SolverConfig parse_config(const std::string& text);
std::string format_config(const SolverConfig& cfg);
void save_config(const SolverConfig& cfg, const std::string& path);

// Heights from a CSV with a header and columns s, h (extra columns ignored).
HeightField read_height_csv(const std::string& path);

struct SnapshotFiles {
  std::string json, interface_csv, field_csv;
};

// Writes snapshot_<step>.json, snapshot_<step>_interface.csv, snapshot_<step>_field.csv.
SnapshotFiles write_snapshot(const Simulator& sim, const SimState& s, const std::string& dir);
// Restores the state stored in a snapshot header.
SimState read_snapshot(const std::string& json_path);

class TimeseriesWriter {
 public:
  // Truncates unless append is set; the header is written for new files.
  TimeseriesWriter(const std::string& path, bool append = false);
  void write(const DiagnosticsRecord& r);
  static std::string header();

 private:
  std::ofstream out_;
};

struct Manifest {
  SolverConfig config;
  std::string start_time, end_time;
  std::string status = "completed";
  std::string message;
  std::string timeseries;
  std::vector<SnapshotFiles> snapshots;
};
void write_manifest(const Manifest& m, const std::string& path);

// 17 significant digits.
std::string format_double(double x);
std::string utc_now();

}  // namespace alefs
