#pragma once

// File formats. Every data file is a CSV with a JSON sidecar of the same stem
// holding the grid: {q_min, delta_q, n_points, hbar} plus "representation"
// for wavefunctions. Wavefunction CSVs have a `q,re,im` (or `p,re,im`)
// header; WDF and detection maps are header-less n x n matrices, rows = q,
// columns = p. Floats are written with 17 significant digits.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wignerlab/filtering.hpp"
#include "wignerlab/grid.hpp"
#include "wignerlab/moyal.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab::io {

namespace fs = std::filesystem;
using nlohmann::json;

/// Shortest round-trip-safe text, fixed at 17 significant digits.
std::string format_double(double v);

fs::path sidecar_path(const fs::path& csv);

json grid_to_json(const Grid& g);
Grid grid_from_json(const json& j);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);
void write_json(const fs::path& path, const json& j);
json read_json(const fs::path& path);

void write_wavefunction(const WaveFunction& psi, const fs::path& csv);
WaveFunction read_wavefunction(const fs::path& csv);

void write_matrix(const Grid& g, const Matrix<double>& m, const fs::path& csv);
void write_wigner(const WignerFunction& w, const fs::path& csv);
WignerFunction read_wigner(const fs::path& csv);

/// Either kind of data file, told apart by the sidecar's "representation" key.
using StateFile = std::variant<WaveFunction, WignerFunction>;
StateFile read_state(const fs::path& csv);

/// {"kind": ..., "q_offset": x, "p_offset": y,
///  "device": "file.csv" | {"gaussian": {"width": w, "center": c}}}
/// Relative device paths resolve against `base_dir`.
FilterSpec filter_spec_from_json(const json& j, const Grid& grid, const fs::path& base_dir);
FilterSpec read_filter_spec(const fs::path& path, const Grid& grid);

/// {"coefficients": [...], "mass": 1.0}
PotentialSpec potential_from_json(const json& j);
PotentialSpec read_potential(const fs::path& path);

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  json grid;
  long long seed = 0;
  std::string version;
};

json manifest_to_json(const RunManifest& m);
/// Writes <dir>/<command>.manifest.json after checking every output exists.
fs::path write_manifest(const RunManifest& m, const fs::path& dir);

}  // namespace wignerlab::io
