#include "wignerlab/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wignerlab/error.hpp"
#include "wignerlab/fft.hpp"
#include "wignerlab/kernels.hpp"

namespace wignerlab {
namespace {

std::ptrdiff_t lattice_steps(double offset, double spacing, const char* what) {
  const double r = offset / spacing;
  const double rounded = std::round(r);
  if (!std::isfinite(r) || std::abs(r - rounded) > 1e-9) {
    std::ostringstream msg;
    msg << "filter: " << what << " " << offset << " is not a multiple of the lattice spacing "
        << spacing;
    throw DomainError(msg.str());
  }
  return static_cast<std::ptrdiff_t>(rounded);
}

std::size_t require_origin(const Grid& g) {
  const auto o = g.origin_index();
  if (!o) throw DomainError("filter: q = 0 must be a lattice point for convolutions along q");
  return *o;
}

WaveFunction in_position(const WaveFunction& psi) {
  return psi.representation() == Representation::position ? psi : inverse_fourier_transform(psi);
}

// h^{-1/2} dq sum_j' a(j') b(j - j' + origin), zero outside the lattice.
std::vector<cplx> convolve_q(const Grid& g, std::span<const cplx> a, std::span<const cplx> b) {
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  const auto o = static_cast<std::ptrdiff_t>(require_origin(g));
  const double scale = g.delta_q() / std::sqrt(g.h());
  std::vector<cplx> out(g.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    cplx acc{0.0, 0.0};
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, j + o - n + 1);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, j + o);
    for (std::ptrdiff_t jp = lo; jp <= hi; ++jp) {
      acc += a[static_cast<std::size_t>(jp)] * b[static_cast<std::size_t>(j - jp + o)];
    }
    out[static_cast<std::size_t>(j)] = scale * acc;
  }
  return out;
}

}  // namespace

std::string_view to_string(FilterKind k) {
  switch (k) {
    case FilterKind::coordinate: return "coordinate";
    case FilterKind::momentum: return "momentum";
    case FilterKind::general_coordinate: return "general_coordinate";
    case FilterKind::general_momentum: return "general_momentum";
  }
  return "?";
}

FilterKind filter_kind_from_string(std::string_view s) {
  for (auto k : {FilterKind::coordinate, FilterKind::momentum, FilterKind::general_coordinate,
                 FilterKind::general_momentum}) {
    if (s == to_string(k)) return k;
  }
  throw DomainError("unknown filter kind '" + std::string(s) + "'");
}

WaveFunction apply_filter(const WaveFunction& psi_in, const FilterSpec& f) {
  const Grid& g = psi_in.grid();
  if (!g.same_as(f.device.grid())) throw DomainError("filter: device grid differs from state grid");
  const WaveFunction in = in_position(psi_in);
  const WaveFunction dev = in_position(f.device);
  const std::size_t n = g.size();
  std::vector<cplx> out(n);

  switch (f.kind) {
    case FilterKind::coordinate:
      for (std::size_t j = 0; j < n; ++j) out[j] = in[j] * dev[j];
      break;
    case FilterKind::momentum:
      out = convolve_q(g, in.amplitudes(), dev.amplitudes());
      break;
    case FilterKind::general_coordinate: {
      const auto s = lattice_steps(f.p_offset, g.delta_p(), "p_offset");
      const double p0 = static_cast<double>(s) * g.delta_p();
      std::vector<cplx> boosted(n);
      for (std::size_t j = 0; j < n; ++j) boosted[j] = in[j] * std::polar(1.0, p0 * g.q(j) / g.hbar());
      out = convolve_q(g, boosted, dev.amplitudes());
      break;
    }
    case FilterKind::general_momentum: {
      const auto s = lattice_steps(f.q_offset, g.delta_q(), "q_offset");
      const auto nn = static_cast<std::ptrdiff_t>(n);
      for (std::ptrdiff_t j = 0; j < nn; ++j) {
        const std::ptrdiff_t src = j - s;
        if (src >= 0 && src < nn) {
          out[static_cast<std::size_t>(j)] =
              in[static_cast<std::size_t>(src)] * dev[static_cast<std::size_t>(j)];
        }
      }
      break;
    }
  }
  return WaveFunction(g, std::move(out), Representation::position);
}

FilterOutput filter_wavefunction(const WaveFunction& psi_in, const FilterSpec& f) {
  const WaveFunction raw = apply_filter(psi_in, f);
  const double t = raw.norm_squared();
  if (!(t > kZeroTransmission)) {
    std::ostringstream msg;
    msg << "filter: transmission " << t << " is zero; the device blocks the state";
    throw DomainError(msg.str());
  }
  return {normalize(raw), t};
}

WignerFunction filter_wdf(const WignerFunction& w_in, const FilterSpec& f, Exec exec) {
  const Grid& g = w_in.grid();
  if (!g.same_as(f.device.grid())) throw DomainError("filter: device grid differs from state grid");
  const WignerFunction w_m = wdf_unnormalized(f.device, exec);

  switch (f.kind) {
    case FilterKind::coordinate:
      return WignerFunction(
          g, kernels::convolve_p_circular(w_in.values(), w_m.values(), g.delta_p(), exec));
    case FilterKind::momentum:
      return WignerFunction(g, kernels::convolve_q_linear(w_in.values(), w_m.values(),
                                                          require_origin(g), g.delta_q(), exec));
    case FilterKind::general_coordinate: {
      const auto s = lattice_steps(f.p_offset, g.delta_p(), "p_offset");
      const WignerFunction shifted = translate(w_in, 0, s);
      return WignerFunction(g, kernels::convolve_q_linear(shifted.values(), w_m.values(),
                                                          require_origin(g), g.delta_q(), exec));
    }
    case FilterKind::general_momentum: {
      const auto s = lattice_steps(f.q_offset, g.delta_q(), "q_offset");
      const WignerFunction shifted = translate(w_in, s, 0);
      return WignerFunction(
          g, kernels::convolve_p_circular(shifted.values(), w_m.values(), g.delta_p(), exec));
    }
  }
  throw DomainError("filter: unknown kind");
}

double DetectionMap::min() const {
  return *std::min_element(values.flat().begin(), values.flat().end());
}

double DetectionMap::mass() const {
  double sum = 0.0;
  for (double v : values.flat()) sum += v;
  return sum * grid.delta_q() * grid.delta_p();
}

DetectionMap detect(const WignerFunction& w_in, const WignerFunction& w_m, Exec exec) {
  const Grid& g = w_in.grid();
  if (!g.same_as(w_m.grid())) throw DomainError("detect: grid mismatch");
  DetectionMap out{g, kernels::convolve_2d(w_in.values(), w_m.values(), require_origin(g),
                                           g.delta_q(), g.delta_p(), exec)};
  const double lowest = out.min();
  if (lowest < kDetectionFloor) {
    std::ostringstream msg;
    msg << "detect: read-out minimum " << lowest << " is below " << kDetectionFloor
        << "; the detector WDF is not physical";
    throw NumericalError(msg.str());
  }
  return out;
}

DetectionMap detection_from_wavefunctions(const WaveFunction& psi_in, const WaveFunction& psi_m) {
  const Grid& g = psi_in.grid();
  if (!g.same_as(psi_m.grid())) throw DomainError("detect: grid mismatch");
  const WaveFunction a = in_position(psi_in);
  const WaveFunction b = in_position(psi_m);
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  const auto o = static_cast<std::ptrdiff_t>(require_origin(g));
  const std::size_t two_n = 2 * g.size();
  const auto& plan = fft::complex_plan(two_n, fft::Direction::forward);
  // Same 2n-point evaluation of sum_j f_j exp(-i p_k q_j/hbar) as fourier_transform.
  const double phase_rate = g.delta_p() * g.q_min() / g.hbar();
  const double scale = g.delta_q() * g.delta_q() / g.h();
  Matrix<double> values(g.size(), g.size());

#pragma omp parallel num_threads(max_threads())
  {
    fft::CBuffer buf(two_n);
#pragma omp for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
      for (std::ptrdiff_t jp = 0; jp < n; ++jp) {
        const std::ptrdiff_t idx = j - jp + o;
        if (idx < 0 || idx >= n) continue;
        buf[static_cast<std::size_t>(jp)] =
            a[static_cast<std::size_t>(jp)] * std::conj(b[static_cast<std::size_t>(idx)]);
      }
      plan.execute(buf);
      auto row = values.row(static_cast<std::size_t>(j));
      for (std::ptrdiff_t k = 0; k < n; ++k) {
        const std::ptrdiff_t s = k - n / 2;
        const cplx v = buf[static_cast<std::size_t>((s + 2 * n) % (2 * n))] *
                       std::polar(1.0, -static_cast<double>(s) * phase_rate);
        row[static_cast<std::size_t>(k)] = scale * std::norm(v);
      }
    }
  }
  return {g, std::move(values)};
}

std::string_view to_string(Interaction c) {
  switch (c) {
    case Interaction::interference: return "interference";
    case Interaction::transition: return "transition";
    case Interaction::both: return "both";
    case Interaction::neither: return "neither";
  }
  return "?";
}

namespace {

// min over the two marginals of the mass fraction lying on their shared support.
double common_support(const std::vector<double>& a, const std::vector<double>& b, double frac) {
  const double pa = *std::max_element(a.begin(), a.end());
  const double pb = *std::max_element(b.begin(), b.end());
  double ta = 0, tb = 0, sa = 0, sb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double va = std::max(a[i], 0.0);
    const double vb = std::max(b[i], 0.0);
    ta += va;
    tb += vb;
    if (a[i] > frac * pa && b[i] > frac * pb) {
      sa += va;
      sb += vb;
    }
  }
  if (!(ta > 0.0) || !(tb > 0.0)) return 0.0;
  return std::min(sa / ta, sb / tb);
}

}  // namespace

InteractionReport classify_interaction(const WignerFunction& w1, const WignerFunction& w2,
                                       const InteractionThresholds& t) {
  if (!w1.grid().same_as(w2.grid())) throw DomainError("classify_interaction: grid mismatch");
  InteractionReport r{};
  r.overlap_mass = std::clamp(overlap_probability(w1, w2), 0.0, 1.0);
  r.common_q_support = common_support(marginal_q(w1), marginal_q(w2), t.support_fraction);
  r.common_p_support = common_support(marginal_p(w1), marginal_p(w2), t.support_fraction);
  const bool overlaps = r.overlap_mass >= t.overlap;
  const bool common = std::max(r.common_q_support, r.common_p_support) >= t.common_projection;
  if (overlaps && common && r.overlap_mass < 0.5) {
    r.classification = Interaction::both;
  } else if (overlaps) {
    r.classification = Interaction::transition;
  } else if (common) {
    r.classification = Interaction::interference;
  } else {
    r.classification = Interaction::neither;
  }
  return r;
}

}  // namespace wignerlab
