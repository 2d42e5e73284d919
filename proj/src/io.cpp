#include "wignerlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wignerlab/analytic.hpp"
#include "wignerlab/error.hpp"

namespace wignerlab::io {
namespace {

double parse_double(std::string_view s, const fs::path& where) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError(where.string() + ": cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(const std::string& text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

template <typename T>
T field(const json& j, const char* key, const fs::path& where) {
  if (!j.contains(key)) throw IoError(where.string() + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IoError(where.string() + ": bad value for '" + key + "': " + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

fs::path sidecar_path(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".json");
  return p;
}

json grid_to_json(const Grid& g) {
  return {{"q_min", g.q_min()},
          {"delta_q", g.delta_q()},
          {"n_points", g.size()},
          {"hbar", g.hbar()}};
}

Grid grid_from_json(const json& j) {
  const fs::path where{"sidecar"};
  return Grid(field<double>(j, "q_min", where), field<double>(j, "delta_q", where),
              field<std::size_t>(j, "n_points", where), field<double>(j, "hbar", where));
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw IoError("failed writing " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json read_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": malformed JSON: " + e.what());
  }
}

void write_wavefunction(const WaveFunction& psi, const fs::path& csv) {
  const bool pos = psi.representation() == Representation::position;
  std::string out = pos ? "q,re,im\n" : "p,re,im\n";
  for (std::size_t i = 0; i < psi.size(); ++i) {
    out += format_double(psi.coordinate(i));
    out += ',';
    out += format_double(psi[i].real());
    out += ',';
    out += format_double(psi[i].imag());
    out += '\n';
  }
  write_text(csv, out);
  json side = grid_to_json(psi.grid());
  side["representation"] = std::string(to_string(psi.representation()));
  write_json(sidecar_path(csv), side);
}

WaveFunction read_wavefunction(const fs::path& csv) {
  const json side = read_json(sidecar_path(csv));
  const Grid g = grid_from_json(side);
  const auto rep_name = field<std::string>(side, "representation", sidecar_path(csv));
  Representation rep;
  if (rep_name == "position") {
    rep = Representation::position;
  } else if (rep_name == "momentum") {
    rep = Representation::momentum;
  } else {
    throw IoError(csv.string() + ": unknown representation '" + rep_name + "'");
  }
  const std::string text = read_text(csv);
  const auto lines = lines_of(text);
  const std::string_view expect = rep == Representation::position ? "q,re,im" : "p,re,im";
  if (lines.empty() || lines.front() != expect) {
    throw IoError(csv.string() + ": expected header '" + std::string(expect) + "'");
  }
  if (lines.size() - 1 != g.size()) {
    throw IoError(csv.string() + ": " + std::to_string(lines.size() - 1) + " rows, sidecar says " +
                  std::to_string(g.size()));
  }
  std::vector<cplx> amp(g.size());
  WaveFunction probe(g, amp, rep);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto cols = split(lines[i + 1], ',');
    if (cols.size() != 3) throw IoError(csv.string() + ": row " + std::to_string(i + 1) + " needs 3 columns");
    const double x = parse_double(cols[0], csv);
    const double expected = probe.coordinate(i);
    if (std::abs(x - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw IoError(csv.string() + ": coordinate in row " + std::to_string(i + 1) +
                    " does not match the sidecar grid");
    }
    amp[i] = {parse_double(cols[1], csv), parse_double(cols[2], csv)};
  }
  return WaveFunction(g, std::move(amp), rep);
}

void write_matrix(const Grid& g, const Matrix<double>& m, const fs::path& csv) {
  std::string out;
  out.reserve(m.size() * 24);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  write_text(csv, out);
  write_json(sidecar_path(csv), grid_to_json(g));
}

void write_wigner(const WignerFunction& w, const fs::path& csv) {
  write_matrix(w.grid(), w.values(), csv);
}

WignerFunction read_wigner(const fs::path& csv) {
  const json side = read_json(sidecar_path(csv));
  if (side.contains("representation")) {
    throw IoError(csv.string() + ": is a wavefunction file, expected a WDF matrix");
  }
  const Grid g = grid_from_json(side);
  const std::string text = read_text(csv);
  const auto lines = lines_of(text);
  const std::size_t n = g.size();
  if (lines.size() != n) {
    throw IoError(csv.string() + ": " + std::to_string(lines.size()) + " rows, sidecar says " +
                  std::to_string(n));
  }
  Matrix<double> m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto cols = split(lines[r], ',');
    if (cols.size() != n) {
      throw IoError(csv.string() + ": row " + std::to_string(r + 1) + " has " +
                    std::to_string(cols.size()) + " columns, expected " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_double(cols[c], csv);
  }
  return WignerFunction(g, std::move(m));
}

StateFile read_state(const fs::path& csv) {
  const json side = read_json(sidecar_path(csv));
  if (side.contains("representation")) return read_wavefunction(csv);
  return read_wigner(csv);
}

FilterSpec filter_spec_from_json(const json& j, const Grid& grid, const fs::path& base_dir) {
  const fs::path where{"filter spec"};
  if (!j.is_object()) throw IoError("filter spec: expected a JSON object");
  const FilterKind kind = filter_kind_from_string(field<std::string>(j, "kind", where));
  const double q_offset = j.value("q_offset", 0.0);
  const double p_offset = j.value("p_offset", 0.0);
  if (!j.contains("device")) throw IoError("filter spec: missing key 'device'");
  const json& dev = j.at("device");
  if (dev.is_string()) {
    fs::path p = dev.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    WaveFunction device = read_wavefunction(p);
    if (!device.grid().same_as(grid)) throw IoError(p.string() + ": device grid differs from state grid");
    return {kind, std::move(device), q_offset, p_offset};
  }
  if (dev.is_object() && dev.contains("gaussian")) {
    const json& gj = dev.at("gaussian");
    GaussianSpec spec;
    spec.width = field<double>(gj, "width", where);
    spec.center = gj.value("center", 0.0);
    spec.momentum_offset = gj.value("momentum_offset", 0.0);
    return {kind, gaussian_device(spec, grid), q_offset, p_offset};
  }
  throw IoError("filter spec: 'device' must be a file path or {\"gaussian\": {...}}");
}

FilterSpec read_filter_spec(const fs::path& path, const Grid& grid) {
  return filter_spec_from_json(read_json(path), grid, path.parent_path());
}

PotentialSpec potential_from_json(const json& j) {
  const fs::path where{"potential"};
  PotentialSpec v;
  v.coefficients = field<std::vector<double>>(j, "coefficients", where);
  v.mass = j.value("mass", 1.0);
  v.validate();
  return v;
}

PotentialSpec read_potential(const fs::path& path) { return potential_from_json(read_json(path)); }

json manifest_to_json(const RunManifest& m) {
  return {{"command", m.command}, {"inputs", m.inputs}, {"outputs", m.outputs},
          {"grid", m.grid},       {"seed", m.seed},     {"version", m.version}};
}

fs::path write_manifest(const RunManifest& m, const fs::path& dir) {
  for (const auto& out : m.outputs) {
    if (!fs::exists(out)) throw IoError("manifest: output " + out + " was not written");
  }
  const fs::path path = dir / (m.command + ".manifest.json");
  write_json(path, manifest_to_json(m));
  return path;
}

}  // namespace wignerlab::io
