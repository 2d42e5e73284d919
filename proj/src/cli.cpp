#include "wignerlab/cli.hpp"

#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "wignerlab/analytic.hpp"
#include "wignerlab/blob.hpp"
#include "wignerlab/diagnostics.hpp"
#include "wignerlab/error.hpp"
#include "wignerlab/figures.hpp"
#include "wignerlab/filtering.hpp"
#include "wignerlab/io.hpp"
#include "wignerlab/moyal.hpp"
#include "wignerlab/wigner.hpp"

#ifndef WIGNERLAB_VERSION
#define WIGNERLAB_VERSION "0.0.0"
#endif

namespace wignerlab::cli {
namespace {

namespace fs = std::filesystem;
using io::json;

struct Globals {
  std::string grid = "-12:12:256";
  double hbar = 1.0;
  std::string out = ".";
  long long seed = 0;
};

Grid parse_grid(const Globals& g) {
  std::vector<std::string> parts;
  std::stringstream ss(g.grid);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw IoError("--grid expects qmin:qmax:N, got '" + g.grid + "'");
  try {
    std::size_t used = 0;
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const long long n = std::stoll(parts[2], &used);
    if (used != parts[2].size() || n <= 0) throw std::invalid_argument("N");
    return make_grid(lo, hi, static_cast<std::size_t>(n), g.hbar);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const DomainError*>(&e)) throw IoError(std::string("--grid: ") + e.what());
    throw IoError("--grid expects qmin:qmax:N, got '" + g.grid + "'");
  }
}

// key=value tokens into a JSON object of numbers.
json parse_params(const std::vector<std::string>& tokens, const std::string& what) {
  json obj = json::object();
  for (const auto& t : tokens) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw IoError(what + ": expected key=value, got '" + t + "'");
    try {
      std::size_t used = 0;
      const double v = std::stod(t.substr(eq + 1), &used);
      if (used != t.size() - eq - 1) throw std::invalid_argument("trailing");
      obj[t.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw IoError(what + ": '" + t + "' is not a number");
    }
  }
  return obj;
}

double number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) throw IoError(std::string("descriptor: '") + key + "' must be a number");
  return obj.at(key).get<double>();
}

WaveFunction state_from_descriptor(const json& desc, const Grid& grid) {
  if (!desc.is_object() || desc.size() != 1) {
    throw IoError("state descriptor: expected {\"gaussian\": {...}} or {\"cat\": {...}}");
  }
  const auto& [kind, params] = *desc.items().begin();
  if (kind == "gaussian") {
    return gaussian_wavefunction(
        {number(params, "q0", 1.0), number(params, "c", 0.0), number(params, "p0", 0.0)}, grid);
  }
  if (kind == "cat") {
    const double qi = number(params, "qi", 1.0);
    return cat_wavefunction({qi, number(params, "d", 4.0 * qi)}, grid);
  }
  throw IoError("state descriptor: unknown state '" + kind + "'");
}

// Seeded superposition of three Gaussians well inside the grid.
WaveFunction random_state(const Grid& grid, long long seed) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  const double half = 0.25 * (grid.q_max() - grid.q_min());
  const double mid = grid.q_min() + 2.0 * half;
  const double p_room = 0.25 * std::abs(grid.p_min());
  std::uniform_real_distribution<double> center(mid - half / 2, mid + half / 2);
  std::uniform_real_distribution<double> width(0.7, 1.3);
  std::uniform_real_distribution<double> momentum(-p_room / 4, p_room / 4);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
  std::uniform_real_distribution<double> weight(0.3, 1.0);
  std::vector<std::pair<cplx, GaussianSpec>> terms;
  for (int i = 0; i < 3; ++i) {
    const double wgt = weight(rng);
    const double ph = phase(rng);
    const GaussianSpec g{width(rng), center(rng), momentum(rng)};
    terms.push_back({std::polar(wgt, ph), g});
  }
  return superposition(terms, grid);
}

WignerFunction as_wigner(const io::StateFile& s) {
  if (const auto* psi = std::get_if<WaveFunction>(&s)) {
    return psi->representation() == Representation::position
               ? wdf_from_wavefunction(*psi)
               : wdf_from_wavefunction(inverse_fourier_transform(*psi));
  }
  return std::get<WignerFunction>(s);
}

json moments_json(const WignerFunction& w) {
  const Moments m = moments(w);
  return {{"mean_q", m.mean_q}, {"mean_p", m.mean_p}, {"var_q", m.var_q},
          {"var_p", m.var_p},   {"cov_qp", m.cov_qp}};
}

class Runner {
 public:
  Runner(Globals g, std::ostream& out) : g_(std::move(g)), out_(out) {
    manifest_.seed = g_.seed;
    manifest_.version = WIGNERLAB_VERSION;
  }

  void state(const std::vector<std::string>& gaussian, bool has_gaussian,
             const std::vector<std::string>& cat, bool has_cat, const std::string& spec,
             bool random, const std::string& name) {
    const Grid grid = parse_grid(g_);
    const int chosen = int(has_gaussian) + int(has_cat) + int(!spec.empty()) + int(random);
    if (chosen != 1) throw IoError("state: give exactly one of --gaussian, --cat, --spec, --random");
    WaveFunction psi = [&] {
      if (random) return random_state(grid, g_.seed);
      json desc;
      if (has_gaussian) {
        desc = {{"gaussian", parse_params(gaussian, "--gaussian")}};
      } else if (has_cat) {
        desc = {{"cat", parse_params(cat, "--cat")}};
      } else if (fs::exists(spec)) {
        desc = io::read_json(spec);
        manifest_.inputs.push_back(spec);
      } else {
        try {
          desc = json::parse(spec);
        } catch (const json::parse_error& e) {
          throw IoError(std::string("--spec: malformed JSON: ") + e.what());
        }
      }
      return state_from_descriptor(desc, grid);
    }();
    const fs::path file = output(name + ".csv");
    io::write_wavefunction(psi, file);
    add_output(io::sidecar_path(file));
    finish("state", grid, {{"file", file.string()}, {"norm", psi.norm_squared()}});
  }

  void wdf(const std::string& input, const std::string& name) {
    const WignerFunction w = as_wigner(read(input));
    const fs::path file = output(name + ".csv");
    io::write_wigner(w, file);
    add_output(io::sidecar_path(file));
    finish("wdf", w.grid(),
           {{"file", file.string()},
            {"mass", w.mass()},
            {"purity", purity(w)},
            {"uncertainty_product", uncertainty_product(w)},
            {"min", w.min()},
            {"max", w.max()}});
  }

  void figure(const std::string& which, double qi, double qm, double d) {
    const Grid grid = parse_grid(g_);
    if (which == "fig2") {
      if (std::isnan(qm)) qm = 0.5 * qi;
      if (!(qi > qm)) warn("fig2: the figure shows q_i > q_m; got q_i = " + io::format_double(qi) +
                           ", q_m = " + io::format_double(qm));
      const WignerFunction w_in = wdf_from_wavefunction(gaussian_wavefunction({qi, 0, 0}, grid));
      const WignerFunction w_m = wdf_from_wavefunction(gaussian_wavefunction({qm, 0, 0}, grid));
      const fs::path a = output("fig2_input.csv");
      const fs::path b = output("fig2_filter.csv");
      io::write_wigner(w_in, a);
      io::write_wigner(w_m, b);
      add_output(io::sidecar_path(a));
      add_output(io::sidecar_path(b));
      finish("figure", grid,
             {{"figure", which}, {"q_i", qi}, {"q_m", qm},
              {"files", {a.string(), b.string()}},
              {"input_peak", w_in.max()}, {"filter_peak", w_m.max()}});
      return;
    }
    if (std::isnan(d)) d = 4.0 * qi;
    if (which == "fig3") {
      const WignerFunction w = wdf_from_wavefunction(cat_wavefunction({qi, d}, grid));
      const fs::path a = output("fig3.csv");
      io::write_wigner(w, a);
      add_output(io::sidecar_path(a));
      const std::size_t r = grid.nearest_index(d);
      finish("figure", grid,
             {{"figure", which}, {"q_i", qi}, {"d", d}, {"file", a.string()},
              {"value_at_origin", w(grid.nearest_index(0.0), grid.size() / 2)},
              {"outer_peak", w(r, grid.size() / 2)}, {"min", w.min()}});
      return;
    }
    if (which == "fig4") {
      if (std::isnan(qm)) qm = qi;
      const SlitScan scan = slit_scan({qi, d}, qm, grid);
      const fs::path a = output("fig4.csv");
      const fs::path b = output("fig4_closed_form.csv");
      json side = io::grid_to_json(grid);
      side["rows"] = "D";
      side["columns"] = "q";
      side["p"] = 0.0;
      side["D"] = scan.offsets;
      io::write_matrix(grid, scan.filtered, a);
      io::write_json(io::sidecar_path(a), side);
      io::write_matrix(grid, scan.closed_form, b);
      io::write_json(io::sidecar_path(b), side);
      for (const auto& f : {a, b}) add_output(io::sidecar_path(f));
      double diff = 0.0;
      for (std::size_t i = 0; i < scan.filtered.size(); ++i) {
        diff = std::max(diff, std::abs(scan.filtered.flat()[i] - scan.closed_form.flat()[i]));
      }
      finish("figure", grid,
             {{"figure", which}, {"q_i", qi}, {"q_m", qm}, {"d", d},
              {"files", {a.string(), b.string()}},
              {"ridge_minus", scan.ridge_minus}, {"ridge_plus", scan.ridge_plus},
              {"damping_ratio", scan.damping_ratio},
              {"damping_closed_form", std::exp(-d * d / (qi * qi + qm * qm))},
              {"max_abs_closed_form_difference", diff}});
      return;
    }
    throw IoError("figure: expected fig2, fig3 or fig4, got '" + which + "'");
  }

  void filter(const std::string& state_file, const std::string& spec_file, const std::string& name) {
    const WaveFunction psi = read_wavefunction(state_file);
    manifest_.inputs.push_back(spec_file);
    const FilterSpec f = io::read_filter_spec(spec_file, psi.grid());
    const FilterOutput result = filter_wavefunction(psi, f);
    const WignerFunction phase = filter_wdf(wdf_unnormalized(psi), f);
    const WignerFunction direct = wdf_unnormalized(apply_filter(psi, f));
    double diff = 0.0;
    for (std::size_t i = 0; i < phase.values().size(); ++i) {
      diff = std::max(diff, std::abs(phase.values().flat()[i] - direct.values().flat()[i]));
    }
    const fs::path a = output(name + ".csv");
    const fs::path b = output(name + "_wdf.csv");
    io::write_wavefunction(result.state, a);
    io::write_wigner(phase, b);
    add_output(io::sidecar_path(a));
    add_output(io::sidecar_path(b));
    finish("filter", psi.grid(),
           {{"kind", std::string(to_string(f.kind))},
            {"files", {a.string(), b.string()}},
            {"transmission", result.transmission},
            {"phase_space_vs_wavefunction_max_abs", diff}});
  }

  void detect_cmd(const std::string& state_file, const std::string& device_file,
                  const std::string& name) {
    const io::StateFile s = read(state_file);
    const io::StateFile dev = read(device_file);
    const WignerFunction w_in = as_wigner(s);
    const WignerFunction w_m = std::holds_alternative<WaveFunction>(dev)
                                   ? wdf_unnormalized(std::get<WaveFunction>(dev))
                                   : std::get<WignerFunction>(dev);
    const DetectionMap map = detect(w_in, w_m);
    const fs::path a = output(name + ".csv");
    io::write_matrix(map.grid, map.values, a);
    add_output(io::sidecar_path(a));
    json report = {{"file", a.string()}, {"min", map.min()}, {"mass", map.mass()}};
    if (std::holds_alternative<WaveFunction>(s) && std::holds_alternative<WaveFunction>(dev)) {
      const DetectionMap rhs =
          detection_from_wavefunctions(std::get<WaveFunction>(s), std::get<WaveFunction>(dev));
      double diff = 0.0;
      for (std::size_t i = 0; i < rhs.values.size(); ++i) {
        diff = std::max(diff, std::abs(rhs.values.flat()[i] - map.values.flat()[i]));
      }
      report["wavefunction_form_max_abs_difference"] = diff;
    }
    finish("detect", map.grid, report);
  }

  void evolve(const std::string& input, const std::string& potential_file, double t, double dt,
              int order, std::size_t dump, const std::string& name) {
    const WignerFunction w0 = as_wigner(read(input));
    manifest_.inputs.push_back(potential_file);
    const PotentialSpec v = io::read_potential(potential_file);
    const EvolutionConfig cfg =
        EvolutionConfig::for_duration(t, dt, order < 0 ? v.required_series_order() : order);
    json snapshots = json::array();
    auto record = [&](std::size_t step, const WignerFunction& w, const fs::path& file) {
      io::write_wigner(w, file);
      add_output(io::sidecar_path(file));
      json entry = moments_json(w);
      entry["step"] = step;
      entry["time"] = static_cast<double>(step) * cfg.dt;
      entry["file"] = file.string();
      entry["mass"] = w.mass();
      snapshots.push_back(entry);
    };
    Observer obs;
    if (dump > 0) {
      obs.every = dump;
      obs.callback = [&](std::size_t step, const WignerFunction& w) {
        char label[32];
        std::snprintf(label, sizeof(label), "_step%06zu.csv", step);
        record(step, w, output(name + label));
      };
    }
    const WignerFunction w = propagate(w0, v, cfg, Exec::parallel, obs);
    record(cfg.n_steps, w, output(name + "_final.csv"));
    const fs::path traj = output(name + "_trajectory.json");
    io::write_json(traj, {{"dt", cfg.dt},
                          {"n_steps", cfg.n_steps},
                          {"series_order", cfg.series_order},
                          {"snapshots", snapshots}});
    json report = moments_json(w);
    report["dt"] = cfg.dt;
    report["n_steps"] = cfg.n_steps;
    report["mass"] = w.mass();
    report["trajectory"] = traj.string();
    finish("evolve", w.grid(), report);
  }

  void overlap(const std::string& a, const std::string& b) {
    const io::StateFile sa = read(a);
    const io::StateFile sb = read(b);
    const WignerFunction wa = as_wigner(sa);
    const WignerFunction wb = as_wigner(sb);
    const InteractionReport r = classify_interaction(wa, wb);
    json report = {{"overlap", overlap_probability(wa, wb)},
                   {"classification", std::string(to_string(r.classification))},
                   {"common_q_support", r.common_q_support},
                   {"common_p_support", r.common_p_support}};
    if (std::holds_alternative<WaveFunction>(sa) && std::holds_alternative<WaveFunction>(sb)) {
      report["inner_product_squared"] =
          std::norm(inner_product(std::get<WaveFunction>(sa), std::get<WaveFunction>(sb)));
    }
    finish("overlap", wa.grid(), report);
  }

  void blob(const std::string& input, double sigma_q, double sigma_p, const std::string& name) {
    const WignerFunction w = as_wigner(read(input));
    const double half = std::sqrt(w.grid().hbar() / 2.0);
    if (std::isnan(sigma_q)) sigma_q = half;
    if (std::isnan(sigma_p)) sigma_p = half;
    const BlobReport r = blob_report(w, sigma_q, sigma_p);
    const json report = {{"effective_area", r.effective_area},
                         {"min_value", r.min_value},
                         {"min_smoothed_value", r.min_smoothed_value},
                         {"subplanck_scale", r.subplanck_scale},
                         {"sigma_q", sigma_q},
                         {"sigma_p", sigma_p}};
    const fs::path file = output(name + ".json");
    io::write_json(file, report);
    finish("blob", w.grid(), report);
  }

 private:
  io::StateFile read(const std::string& path) {
    manifest_.inputs.push_back(path);
    return io::read_state(path);
  }

  WaveFunction read_wavefunction(const std::string& path) {
    manifest_.inputs.push_back(path);
    WaveFunction psi = io::read_wavefunction(path);
    return psi.representation() == Representation::position ? psi : inverse_fourier_transform(psi);
  }

  fs::path output(const std::string& file) {
    const fs::path p = fs::path(g_.out) / file;
    manifest_.outputs.push_back(p.string());
    return p;
  }

  void add_output(const fs::path& p) { manifest_.outputs.push_back(p.string()); }

  void finish(const std::string& command, const Grid& grid, json report) {
    manifest_.command = command;
    manifest_.grid = io::grid_to_json(grid);
    report["manifest"] = io::write_manifest(manifest_, g_.out).string();
    out_ << report.dump(2) << "\n";
  }

  Globals g_;
  std::ostream& out_;
  io::RunManifest manifest_;
};

int dispatch(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-space (Wigner function) toolkit for 1-D quantum states", "wignerlab"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--grid", g.grid, "Lattice qmin:qmax:N")->capture_default_str();
  app.add_option("--hbar", g.hbar, "Reduced Planck constant")->capture_default_str();
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for random states")->capture_default_str();
  app.set_version_flag("--version", WIGNERLAB_VERSION);

  std::vector<std::string> gaussian, cat;
  std::string spec;
  std::string n_state, n_wdf, n_filter, n_detect, n_evolve, n_blob;
  bool random = false;
  auto* st = app.add_subcommand("state", "Generate a wavefunction");
  auto* opt_g = st->add_option("--gaussian", gaussian, "q0=.. c=.. p0=..")->expected(0, -1);
  auto* opt_c = st->add_option("--cat", cat, "d=.. qi=..")->expected(0, -1);
  st->add_option("--spec", spec, "Descriptor JSON (inline or file)");
  st->add_flag("--random", random, "Seeded random Gaussian superposition");
  st->add_option("--name", n_state, "Output stem")->default_val("state");

  std::string in1, in2;
  auto* wd = app.add_subcommand("wdf", "Wigner function of a wavefunction file");
  wd->add_option("input", in1)->required();
  wd->add_option("--name", n_wdf, "Output stem")->default_val("wdf");

  std::string which;
  double qi = 1.0, qm = std::nan(""), d = std::nan("");
  auto* fig = app.add_subcommand("figure", "Reproduce figure data (fig2, fig3, fig4)");
  fig->add_option("which", which)->required();
  fig->add_option("--qi", qi, "Input width")->capture_default_str();
  fig->add_option("--qm", qm, "Slit width");
  fig->add_option("--d", d, "Cat separation");

  auto* fl = app.add_subcommand("filter", "Apply a filter spec to a wavefunction");
  fl->add_option("state", in1)->required();
  fl->add_option("spec", in2)->required();
  fl->add_option("--name", n_filter, "Output stem")->default_val("filtered");

  auto* de = app.add_subcommand("detect", "Detector read-out of a state");
  de->add_option("state", in1)->required();
  de->add_option("device", in2)->required();
  de->add_option("--name", n_detect, "Output stem")->default_val("detection");

  std::string potential;
  double t = 0.0, dt = 1e-3;
  int order = -1;
  std::size_t dump = 0;
  auto* ev = app.add_subcommand("evolve", "Moyal evolution of a state");
  ev->add_option("input", in1)->required();
  ev->add_option("--potential", potential)->required();
  ev->add_option("--t", t, "Total time")->required();
  ev->add_option("--dt", dt, "Largest time step")->capture_default_str();
  ev->add_option("--order", order, "Series order (default: exact for the potential)");
  ev->add_option("--dump", dump, "Snapshot every K steps (0: final only)");
  ev->add_option("--name", n_evolve, "Output stem")->default_val("evolve");

  auto* ov = app.add_subcommand("overlap", "Transition probability between two states");
  ov->add_option("a", in1)->required();
  ov->add_option("b", in2)->required();

  double sq = std::nan(""), sp = std::nan("");
  auto* bl = app.add_subcommand("blob", "Blob diagnostics of a state");
  bl->add_option("input", in1)->required();
  bl->add_option("--sigma-q", sq, "Smoothing width in q (default sqrt(hbar/2))");
  bl->add_option("--sigma-p", sp, "Smoothing width in p (default sqrt(hbar/2))");
  bl->add_option("--name", n_blob, "Output stem")->default_val("blob");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  Runner run(g, out);
  if (st->parsed()) run.state(gaussian, opt_g->count() > 0, cat, opt_c->count() > 0, spec, random, n_state);
  if (wd->parsed()) run.wdf(in1, n_wdf);
  if (fig->parsed()) run.figure(which, qi, qm, d);
  if (fl->parsed()) run.filter(in1, in2, n_filter);
  if (de->parsed()) run.detect_cmd(in1, in2, n_detect);
  if (ev->parsed()) run.evolve(in1, potential, t, dt, order, dump, n_evolve);
  if (ov->parsed()) run.overlap(in1, in2);
  if (bl->parsed()) run.blob(in1, sq, sp, n_blob);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("wignerlab");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  const WarningSink previous = set_warning_sink([&err](const std::string& m) {
    err << "warning: " << m << "\n";
  });
  int code = kOk;
  try {
    code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    code = kUsageError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    code = kUsageError;
  } catch (const io::json::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    code = kNumericalFailure;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    code = kNumericalFailure;
  }
  set_warning_sink(previous);
  return code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace wignerlab::cli
