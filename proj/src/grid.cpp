#include "wignerlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wignerlab/diagnostics.hpp"
#include "wignerlab/error.hpp"
#include "wignerlab/fft.hpp"

namespace wignerlab {
namespace {

bool close_rel(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

void check_edges(const WaveFunction& psi, std::string_view context) {
  const double edge = psi.edge_amplitude();
  if (edge > kEdgeWarningThreshold) {
    std::ostringstream msg;
    msg << context << ": edge amplitude " << edge << " exceeds " << kEdgeWarningThreshold
        << "; periodic wraparound may corrupt results";
    warn(msg.str());
  }
}

}  // namespace

Grid::Grid(double q_min, double delta_q, std::size_t n_points, double hbar)
    : q_min_(q_min), delta_q_(delta_q), n_(n_points), hbar_(hbar) {
  if (!std::isfinite(q_min) || !std::isfinite(delta_q) || !(delta_q > 0.0)) {
    throw DomainError("grid: delta_q must be finite and positive");
  }
  if (n_points < 8 || n_points % 2 != 0) {
    throw DomainError("grid: n_points must be even and >= 8, got " + std::to_string(n_points));
  }
  if (!std::isfinite(hbar) || !(hbar > 0.0)) {
    throw DomainError("grid: hbar must be finite and positive");
  }
}

std::vector<double> Grid::q_values() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = q(j);
  return out;
}

std::vector<double> Grid::p_values() const {
  std::vector<double> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = p(k);
  return out;
}

std::optional<std::size_t> Grid::origin_index() const {
  const double r = -q_min_ / delta_q_;
  const double rounded = std::round(r);
  if (std::abs(r - rounded) > 1e-9 || rounded < 0.0 || rounded >= static_cast<double>(n_)) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(rounded);
}

std::size_t Grid::nearest_index(double qv) const {
  const double r = std::round((qv - q_min_) / delta_q_);
  return static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(n_ - 1)));
}

bool Grid::same_as(const Grid& other) const {
  return n_ == other.n_ && close_rel(q_min_, other.q_min_) && close_rel(delta_q_, other.delta_q_) &&
         close_rel(hbar_, other.hbar_);
}

Grid make_grid(double q_min, double q_max, std::size_t n_points, double hbar) {
  if (!std::isfinite(q_min) || !std::isfinite(q_max) || !(q_max > q_min)) {
    throw DomainError("make_grid: need q_max > q_min");
  }
  if (n_points < 8 || n_points % 2 != 0) {
    throw DomainError("make_grid: n_points must be even and >= 8, got " +
                      std::to_string(n_points));
  }
  return Grid(q_min, (q_max - q_min) / static_cast<double>(n_points), n_points, hbar);
}

std::string_view to_string(Representation r) {
  return r == Representation::position ? "position" : "momentum";
}

WaveFunction::WaveFunction(Grid grid, std::vector<cplx> amplitudes, Representation representation)
    : grid_(grid), amplitudes_(std::move(amplitudes)), representation_(representation) {
  if (amplitudes_.size() != grid_.size()) {
    throw DomainError("wavefunction: amplitude count " + std::to_string(amplitudes_.size()) +
                      " does not match grid size " + std::to_string(grid_.size()));
  }
}

double WaveFunction::spacing() const {
  return representation_ == Representation::position ? grid_.delta_q() : grid_.delta_p();
}

double WaveFunction::coordinate(std::size_t i) const {
  return representation_ == Representation::position ? grid_.q(i) : grid_.p(i);
}

double WaveFunction::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum * spacing();
}

double WaveFunction::edge_amplitude() const {
  return std::max(std::abs(amplitudes_.front()), std::abs(amplitudes_.back()));
}

WaveFunction fourier_transform(const WaveFunction& psi) {
  if (psi.representation() != Representation::position) {
    throw DomainError("fourier_transform: input must be in position representation");
  }
  check_edges(psi, "fourier_transform");
  const Grid& g = psi.grid();
  const std::size_t n = g.size();
  const std::size_t two_n = 2 * n;

  // p_k q_j / hbar = s*dp*q_min/hbar + pi*s*j/n with s = k - n/2: the second
  // factor is a 2n-point DFT kernel.
  fft::CBuffer buf(two_n, cplx{0.0, 0.0});
  std::copy(psi.amplitudes().begin(), psi.amplitudes().end(), buf.begin());
  fft::complex_plan(two_n, fft::Direction::forward).execute(buf);

  const double scale = g.delta_q() / std::sqrt(g.h());
  const double phase_rate = g.delta_p() * g.q_min() / g.hbar();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto s = static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(n / 2);
    const std::size_t idx = static_cast<std::size_t>((s + static_cast<std::ptrdiff_t>(two_n)) %
                                                     static_cast<std::ptrdiff_t>(two_n));
    out[k] = scale * std::polar(1.0, -static_cast<double>(s) * phase_rate) * buf[idx];
  }
  return WaveFunction(g, std::move(out), Representation::momentum);
}

WaveFunction inverse_fourier_transform(const WaveFunction& psi) {
  if (psi.representation() != Representation::momentum) {
    throw DomainError("inverse_fourier_transform: input must be in momentum representation");
  }
  const Grid& g = psi.grid();
  const std::size_t n = g.size();
  const std::size_t two_n = 2 * n;

  const double phase_rate = g.delta_p() * g.q_min() / g.hbar();
  fft::CBuffer buf(two_n, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    const auto s = static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(n / 2);
    const std::size_t idx = static_cast<std::size_t>((s + static_cast<std::ptrdiff_t>(two_n)) %
                                                     static_cast<std::ptrdiff_t>(two_n));
    buf[idx] = std::polar(1.0, static_cast<double>(s) * phase_rate) * psi[k];
  }
  fft::complex_plan(two_n, fft::Direction::backward).execute(buf);

  const double scale = g.delta_p() / std::sqrt(g.h());
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = scale * buf[j];
  return WaveFunction(g, std::move(out), Representation::position);
}

cplx inner_product(const WaveFunction& a, const WaveFunction& b) {
  if (!a.grid().same_as(b.grid())) throw DomainError("inner_product: grid mismatch");
  if (a.representation() != b.representation()) {
    throw DomainError("inner_product: representation mismatch");
  }
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum * a.spacing();
}

WaveFunction normalize(const WaveFunction& psi) {
  const double n2 = psi.norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw DomainError("normalize: wavefunction has zero (or non-finite) norm");
  }
  const double inv = 1.0 / std::sqrt(n2);
  std::vector<cplx> out(psi.amplitudes().begin(), psi.amplitudes().end());
  for (auto& a : out) a *= inv;
  return WaveFunction(psi.grid(), std::move(out), psi.representation());
}

}  // namespace wignerlab
