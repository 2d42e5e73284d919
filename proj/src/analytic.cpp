#include "wignerlab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wignerlab/error.hpp"
#include "wignerlab/filtering.hpp"

namespace wignerlab {
namespace {

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError(std::string(what) + " must be finite and positive");
  }
}

// Largest |psi| over the two q ends and the two p-window ends, given the
// position amplitude and momentum envelope as callables.
template <typename Q, typename P>
void check_fit(const Grid& g, Q amp_q, P amp_p, const char* what) {
  const double worst_q = std::max(amp_q(g.q(0)), amp_q(g.q(g.size() - 1)));
  const double worst_p = std::max(amp_p(g.p(0)), amp_p(-g.p(0)));
  if (worst_q >= kFitTolerance || worst_p >= kFitTolerance) {
    std::ostringstream msg;
    msg << what << ": state does not fit the grid (edge amplitude " << worst_q
        << " in q, " << worst_p << " in p; need < " << kFitTolerance << ")";
    throw DomainError(msg.str());
  }
}

double gaussian_outer(double x, double w) { return std::exp(-x * x / (w * w)); }

}  // namespace

WaveFunction gaussian_wavefunction(const GaussianSpec& spec, const Grid& grid) {
  require_positive(spec.width, "gaussian width");
  const double w = spec.width;
  const double hb = grid.hbar();
  const double amp = std::pow(kPi * w * w, -0.25);
  const double amp_bar = std::pow(w * w / (kPi * hb * hb), 0.25);
  check_fit(
      grid,
      [&](double q) { return amp * std::exp(-(q - spec.center) * (q - spec.center) / (2 * w * w)); },
      [&](double p) {
        const double x = p - spec.momentum_offset;
        return amp_bar * std::exp(-x * x * w * w / (2 * hb * hb));
      },
      "gaussian_wavefunction");
  return gaussian_device(spec, grid);
}

WaveFunction gaussian_device(const GaussianSpec& spec, const Grid& grid) {
  require_positive(spec.width, "gaussian width");
  const double w = spec.width;
  const double amp = std::pow(kPi * w * w, -0.25);
  std::vector<cplx> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.q(j) - spec.center;
    out[j] = amp * std::exp(-x * x / (2 * w * w)) *
             std::polar(1.0, spec.momentum_offset * x / grid.hbar());
  }
  return WaveFunction(grid, std::move(out));
}

WignerFunction gaussian_wdf_closed_form(const GaussianSpec& spec, const Grid& grid) {
  gaussian_wavefunction(spec, grid);  // same fit rules
  const double w = spec.width;
  const double hb = grid.hbar();
  const std::size_t n = grid.size();
  Matrix<double> v(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid.q(j) - spec.center;
    for (std::size_t k = 0; k < n; ++k) {
      const double y = grid.p(k) - spec.momentum_offset;
      v(j, k) = (2.0 / grid.h()) * std::exp(-x * x / (w * w) - y * y * w * w / (hb * hb));
    }
  }
  return WignerFunction(grid, std::move(v));
}

WaveFunction cat_wavefunction(const CatSpec& spec, const Grid& grid) {
  require_positive(spec.width, "cat width");
  if (!std::isfinite(spec.separation) || spec.separation < 0.0) {
    throw DomainError("cat separation must be finite and non-negative");
  }
  const double w = spec.width;
  const double d = spec.separation;
  const double hb = grid.hbar();
  const double norm =
      std::pow(4 * kPi * w * w, -0.25) / std::sqrt(1.0 + std::exp(-d * d / (w * w)));
  auto psi = [&](double q) {
    return norm * (std::exp(-(q - d) * (q - d) / (2 * w * w)) +
                   std::exp(-(q + d) * (q + d) / (2 * w * w)));
  };
  // Each hump transforms to N (pi w^2)^{1/4} times a normalized momentum Gaussian.
  const double hump_bar = norm * std::pow(kPi * w * w, 0.25) * std::pow(w * w / (kPi * hb * hb), 0.25);
  check_fit(
      grid, [&](double q) { return std::abs(psi(q)); },
      [&](double p) { return 2.0 * hump_bar * std::exp(-p * p * w * w / (2 * hb * hb)); },
      "cat_wavefunction");
  std::vector<cplx> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) out[j] = psi(grid.q(j));
  return WaveFunction(grid, std::move(out));
}

WignerFunction cat_wdf_closed_form(const CatSpec& spec, const Grid& grid) {
  cat_wavefunction(spec, grid);
  const double w = spec.width;
  const double d = spec.separation;
  const double hb = grid.hbar();
  const double pref = 1.0 / (grid.h() * (1.0 + std::exp(-d * d / (w * w))));
  const std::size_t n = grid.size();
  Matrix<double> v(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double q = grid.q(j);
    const double outer = gaussian_outer(q - d, w) + gaussian_outer(q + d, w);
    const double inner = 2.0 * gaussian_outer(q, w);
    for (std::size_t k = 0; k < n; ++k) {
      const double p = grid.p(k);
      v(j, k) = pref * std::exp(-p * p * w * w / (hb * hb)) * (outer + inner * std::cos(2 * d * p / hb));
    }
  }
  return WignerFunction(grid, std::move(v));
}

WignerFunction filtered_gaussian_wdf_closed_form(double q_i, double q_m, const Grid& grid) {
  require_positive(q_i, "q_i");
  require_positive(q_m, "q_m");
  const double hb = grid.hbar();
  const double s2 = q_i * q_i + q_m * q_m;
  const double qe2 = q_i * q_i * q_m * q_m / s2;
  const double pref = 2.0 / (grid.h() * std::sqrt(kPi * s2));
  const std::size_t n = grid.size();
  Matrix<double> v(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double q = grid.q(j);
    const double fq = std::exp(-q * q / (q_i * q_i) - q * q / (q_m * q_m));
    for (std::size_t k = 0; k < n; ++k) {
      const double p = grid.p(k);
      v(j, k) = pref * fq * std::exp(-p * p * qe2 / (hb * hb));
    }
  }
  return WignerFunction(grid, std::move(v));
}

namespace {

// The bracketed structure with K = 1.
Matrix<double> filtered_cat_shape(const CatSpec& spec, double q_m, double D, const Grid& grid) {
  const double w = spec.width;
  const double d = spec.separation;
  const double hb = grid.hbar();
  const double s2 = w * w + q_m * q_m;
  const double qe2 = w * w * q_m * q_m / s2;
  const double damping = std::exp(-d * d / s2);
  const double compression = q_m * q_m / s2;
  const std::size_t n = grid.size();
  Matrix<double> v(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double q = grid.q(j);
    const double slit = std::exp(-(q - D) * (q - D) / (q_m * q_m));
    const double outer = gaussian_outer(q - d, w) + gaussian_outer(q + d, w);
    const double inner = 2.0 * gaussian_outer(q, w) * damping;
    for (std::size_t k = 0; k < n; ++k) {
      const double p = grid.p(k);
      v(j, k) = slit * std::exp(-p * p * qe2 / (hb * hb)) *
                (outer + inner * std::cos(2 * d * p * compression / hb));
    }
  }
  return v;
}

}  // namespace

double filtered_cat_constant(const CatSpec& spec, double q_m, double D, const Grid& grid) {
  require_positive(q_m, "q_m");
  const WaveFunction cat = cat_wavefunction(spec, grid);
  const FilterSpec slit{FilterKind::coordinate, gaussian_device({q_m, D, 0.0}, grid)};
  const double transmission = filter_wavefunction(cat, slit).transmission;
  const WignerFunction shape(grid, filtered_cat_shape(spec, q_m, D, grid));
  return transmission / shape.mass();
}

WignerFunction filtered_cat_wdf_closed_form(const CatSpec& spec, double q_m, double D,
                                            const Grid& grid) {
  const double K = filtered_cat_constant(spec, q_m, D, grid);
  Matrix<double> v = filtered_cat_shape(spec, q_m, D, grid);
  for (double& x : v.flat()) x *= K;
  return WignerFunction(grid, std::move(v));
}

}  // namespace wignerlab
