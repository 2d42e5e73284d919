// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wignerlab/analytic.hpp"
#include "wignerlab/blob.hpp"
#include "wignerlab/diagnostics.hpp"
#include "wignerlab/figures.hpp"
#include "wignerlab/filtering.hpp"
#include "wignerlab/moyal.hpp"
#include "wignerlab/wigner.hpp"

using namespace wignerlab;
using oracle::max_abs_diff;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Grid desk() { return make_grid(-12.0, 12.0, 256); }

double qwidth(const WaveFunction& psi) {
  // sqrt(2 var_q) of |psi|^2; equals the Gaussian width parameter
  double m0 = 0, m1 = 0, m2 = 0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double q = psi.grid().q(j), d = std::norm(psi[j]);
    m0 += d;
    m1 += d * q;
    m2 += d * q * q;
  }
  const double mean = m1 / m0;
  return std::sqrt(2.0 * (m2 / m0 - mean * mean));
}

Outcome c1() {
  const Grid g = desk();
  const WignerFunction w = wdf_from_wavefunction(gaussian_wavefunction({1.0, 0.0, 0.0}, g));
  const double err = max_abs_diff(w.values(), gaussian_wdf_closed_form({1.0, 0.0, 0.0}, g).values());
  const double peak = w(*g.origin_index(), g.size() / 2);
  const double perr = std::abs(peak - 1.0 / kPi);
  return {err < 1e-9 && perr < 1e-9, "max|W-closed| " + fmt(err) + ", |peak-1/pi| " + fmt(perr)};
}

Outcome c2() {
  struct Case {
    double width;
    Grid grid;
  };
  const std::vector<Case> cases{{0.25, make_grid(-12, 12, 512)},
                                {1.0, make_grid(-12, 12, 256)},
                                {4.0, make_grid(-32, 32, 256)}};
  bool ok = true;
  std::string d;
  for (const auto& c : cases) {
    const double u = uncertainty_product(wdf_from_wavefunction(gaussian_wavefunction({c.width}, c.grid)));
    const double err = std::abs(u - 0.5);
    ok = ok && err < 1e-6;
    d += "w=" + fmt(c.width) + ": " + fmt(err) + "; ";
  }
  return {ok, "|dq dp - 1/2| " + d};
}

Outcome c3() {
  const Grid g = desk();
  std::mt19937_64 rng(3);
  std::vector<WaveFunction> states{gaussian_wavefunction({1.0}, g), cat_wavefunction({1.0, 4.0}, g)};
  for (int i = 0; i < 20; ++i) states.push_back(oracle::random_state(rng, g));
  double worst_marg = 0.0, worst_mass = 0.0;
  for (const auto& psi : states) {
    const WignerFunction w = wdf_from_wavefunction(psi);
    const WaveFunction bar = fourier_transform(psi);
    std::vector<double> dq(g.size()), dp(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      dq[i] = std::norm(psi[i]);
      dp[i] = std::norm(bar[i]);
    }
    worst_marg = std::max({worst_marg, max_abs_diff(marginal_q(w), dq), max_abs_diff(marginal_p(w), dp)});
    worst_mass = std::max(worst_mass, std::abs(w.mass() - 1.0));
  }
  return {worst_marg < 1e-8 && worst_mass < 1e-8,
          std::to_string(states.size()) + " states, marginal " + fmt(worst_marg) + ", mass " + fmt(worst_mass)};
}

Outcome c4() {
  const Grid g = desk();
  const CatSpec cat{1.0, 4.0};
  const WignerFunction w = wdf_from_wavefunction(cat_wavefunction(cat, g));
  const double err = max_abs_diff(w.values(), cat_wdf_closed_form(cat, g).values());
  const std::size_t k0 = g.size() / 2;
  const double center = w(*g.origin_index(), k0);
  const double outer = w(g.nearest_index(4.0), k0);
  return {err < 1e-9 && center > outer,
          "max|W-closed| " + fmt(err) + ", W(0,0) " + fmt(center) + " > W(d,0) " + fmt(outer)};
}

Outcome c5() {
  // Convolution-type filters widen the state; the roomier lattice keeps every
  // filtered state inside it, which the lattice identity needs.
  const Grid g = make_grid(-16, 16, 320);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> width(0.5, 1.5), center(-1.0, 1.0), mom(-1.0, 1.0);
  std::uniform_int_distribution<int> qs(-12, 12), ps(-12, 12);
  double worst = 0.0;
  int count = 0;
  for (FilterKind kind : {FilterKind::coordinate, FilterKind::momentum, FilterKind::general_coordinate,
                          FilterKind::general_momentum}) {
    for (int i = 0; i < 30; ++i) {
      const WaveFunction psi = oracle::random_state(rng, g);
      FilterSpec f{kind, gaussian_device({width(rng), center(rng), mom(rng)}, g)};
      if (kind == FilterKind::general_momentum) f.q_offset = qs(rng) * g.delta_q();
      if (kind == FilterKind::general_coordinate) f.p_offset = ps(rng) * g.delta_p();
      const FilterOutput out = filter_wavefunction(psi, f);
      const WignerFunction lhs = filter_wdf(wdf_from_wavefunction(psi), f);
      const WignerFunction rhs = wdf_from_wavefunction(out.state);
      Matrix<double> scaled = lhs.values();
      for (double& x : scaled.flat()) x /= out.transmission;
      worst = std::max(worst, max_abs_diff(scaled, rhs.values()));
      ++count;
    }
  }
  return {worst < 1e-8, std::to_string(count) + " pairs over 4 kinds, max abs " + fmt(worst)};
}

Outcome c6() {
  const Grid g = desk();
  const double q_i = 1.5, q_m = 0.8;
  const FilterSpec slit{FilterKind::coordinate, gaussian_device({q_m}, g)};
  const WignerFunction num = filter_wdf(wdf_from_wavefunction(gaussian_wavefunction({q_i}, g)), slit);
  const double err = max_abs_diff(num.values(), filtered_gaussian_wdf_closed_form(q_i, q_m, g).values());

  // Limits on a fine 1-D lattice (the widths differ by 10^4 in area).
  const Grid fine = make_grid(-80, 80, 32768);
  const double wide = 10.0, narrow = 0.1;
  auto out_width = [&](double in_w, double slit_w) {
    const FilterSpec s{FilterKind::coordinate, gaussian_device({slit_w}, fine)};
    return qwidth(filter_wavefunction(gaussian_wavefunction({in_w}, fine), s).state);
  };
  const double scaled_filter = std::abs(out_width(wide, narrow) / narrow - 1.0);  // q_i/q_m = 100
  const double untouched = std::abs(out_width(narrow, wide) / narrow - 1.0);      // q_i/q_m = 1/100
  return {err < 1e-8 && scaled_filter < 1e-3 && untouched < 1e-3,
          "max|W-closed| " + fmt(err) + ", width rel. err q_i/q_m=100: " + fmt(scaled_filter) +
              ", 1/100: " + fmt(untouched)};
}

Outcome c7() {
  const Grid g = desk();
  const double q_i = 1.0, d = 4.0 * q_i;
  const SlitScan s = slit_scan({q_i, d}, q_i, g);
  const double bound = std::exp(-8.0);
  const double form = max_abs_diff(s.filtered, s.closed_form);
  const bool damp = s.damping_ratio <= bound * (1.0 + 1e-6);
  const bool ridges = std::abs(s.ridge_plus - d) <= g.delta_q() && std::abs(s.ridge_minus + d) <= g.delta_q();
  return {damp && ridges && form < 1e-8,
          "damping " + fmt(s.damping_ratio) + " (exp(-8) " + fmt(bound) + "), ridges " + fmt(s.ridge_minus) +
              ", " + fmt(s.ridge_plus) + ", max|scan-closed| " + fmt(form)};
}

Outcome c8() {
  const Grid g = desk();
  std::mt19937_64 rng(8);
  double worst = 0.0, lowest = 1.0;
  for (int i = 0; i < 20; ++i) {
    const WaveFunction a = oracle::random_state(rng, g);
    const WaveFunction m = oracle::random_state(rng, g);
    const DetectionMap lhs = detect(wdf_from_wavefunction(a), wdf_from_wavefunction(m));
    const DetectionMap rhs = detection_from_wavefunctions(a, m);
    worst = std::max(worst, max_abs_diff(lhs.values, rhs.values));
    lowest = std::min(lowest, lhs.min());
  }
  return {worst < 1e-8 && lowest >= -1e-12, "20 pairs, max abs " + fmt(worst) + ", min output " + fmt(lowest)};
}

Outcome c9() {
  const Grid g = desk();
  std::mt19937_64 rng(9);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const WaveFunction a = oracle::random_state(rng, g);
    const WaveFunction b = oracle::random_state(rng, g);
    const double p = overlap_probability(wdf_from_wavefunction(a), wdf_from_wavefunction(b));
    worst = std::max(worst, std::abs(p - std::norm(inner_product(a, b))));
  }
  double disp = 0.0;
  const WignerFunction w0 = wdf_from_wavefunction(gaussian_wavefunction({1.0}, g));
  for (double dd : {0.0, 1.0, 2.0, 4.0}) {
    const double p = overlap_probability(w0, wdf_from_wavefunction(gaussian_wavefunction({1.0, dd}, g)));
    disp = std::max(disp, std::abs(p - std::exp(-dd * dd / 2.0)));
  }
  return {worst < 1e-8 && disp < 1e-8, "50 pairs " + fmt(worst) + ", displaced " + fmt(disp)};
}

Outcome c10() {
  // Harmonic: a displaced Gaussian rotates by a quarter turn.
  const Grid gh = make_grid(-10, 10, 160);
  const PotentialSpec harmonic{{0.0, 0.0, 0.5}, 1.0};
  const double t = kPi / 2.0;
  const WignerFunction start = wdf_from_wavefunction(gaussian_wavefunction({1.0, 2.0, 0.0}, gh));
  const WignerFunction rotated = propagate(start, harmonic, EvolutionConfig::for_duration(t, 1e-3, 0));
  const double rot = max_abs_diff(rotated.values(), gaussian_wdf_closed_form({1.0, 0.0, -2.0}, gh).values());

  // Quartic: Moyal propagation against split-step Schroedinger.
  const Grid gq = make_grid(-4.4, 4.4, 140);
  const PotentialSpec quartic{{0.0, 0.0, 0.0, 0.0, 0.25}, 1.0};
  const WaveFunction psi = gaussian_wavefunction({0.5}, gq);
  const WignerFunction moyal =
      propagate(wdf_from_wavefunction(psi), quartic, EvolutionConfig::for_duration(1.0, 1e-3, 1));
  const WaveFunction exact = split_step_schrodinger(psi, quartic, EvolutionConfig::for_duration(1.0, 1e-4, 0));
  const double quart = max_abs_diff(moyal.values(), wdf_from_wavefunction(exact).values());
  return {rot < 1e-6 && quart < 1e-5, "harmonic quarter turn " + fmt(rot) + ", quartic vs split-step " + fmt(quart)};
}

Outcome c11() {
  double area = 0.0;
  for (double w : {0.25, 1.0, 4.0}) {
    const Grid g = w == 4.0 ? make_grid(-32, 32, 256) : make_grid(-12, 12, w == 0.25 ? 512 : 256);
    const double a = effective_area(wdf_from_wavefunction(gaussian_wavefunction({w, 0.3, 0.2}, g)));
    area = std::max(area, std::abs(a - g.h() / 2.0));
  }
  const Grid g = desk();
  const WignerFunction cat = wdf_from_wavefunction(cat_wavefunction({1.0, 4.0}, g));
  const double s = std::sqrt(0.5);         // sigma_q sigma_p = hbar/2
  const double t = std::sqrt(1.0 / 8.0);   // hbar/8
  const double at_half = smoothed_minimum(cat, s, s);
  const double at_eighth = smoothed_minimum(cat, t, t);
  return {area < 1e-6 && at_half >= -1e-10 && at_eighth < -1e-4,
          "|area-h/2| " + fmt(area) + ", smoothed min at hbar/2 " + fmt(at_half) + ", at hbar/8 " + fmt(at_eighth)};
}

Outcome c12() {
  const Grid g = desk();
  std::mt19937_64 rng(12);
  std::vector<WaveFunction> states{gaussian_wavefunction({1.0, 0.5, 1.0}, g)};
  for (int i = 0; i < 20; ++i) states.push_back(oracle::random_state(rng, g));
  double worst = 0.0;
  for (const auto& psi : states) {
    const WaveFunction back = recover_wavefunction(wdf_from_wavefunction(psi));
    // Align global phase on the largest sample.
    std::size_t big = 0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      if (std::abs(psi[i]) > std::abs(psi[big])) big = i;
    }
    const cplx phase = (psi[big] / std::abs(psi[big])) / (back[big] / std::abs(back[big]));
    for (std::size_t i = 0; i < psi.size(); ++i) worst = std::max(worst, std::abs(back[i] * phase - psi[i]));
  }
  return {worst < 1e-8, std::to_string(states.size()) + " states, max |psi - recovered| " + fmt(worst)};
}

}  // namespace

int main() {
  // Diagnostic warnings are expected in some cases (edge amplitudes on fine grids).
  set_warning_sink([](const std::string&) {});
  const std::vector<std::function<Outcome()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2zu: %s  %s  [%.2fs]\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
