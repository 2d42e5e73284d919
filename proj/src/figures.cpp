#include "wignerlab/figures.hpp"

#include <algorithm>
#include <cmath>

#include "wignerlab/error.hpp"
#include "wignerlab/filtering.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab {

SlitScan slit_scan(const CatSpec& cat, double q_m, const Grid& grid, Exec exec) {
  const WaveFunction psi = cat_wavefunction(cat, grid);
  const std::size_t n = grid.size();
  const std::size_t k0 = n / 2;
  const double d = cat.separation;
  if (!(d > 0.0)) throw DomainError("slit scan: separation must be positive");

  // The two humps N g(q -+ d) taken separately.
  const double w = cat.width;
  const double norm = std::pow(4 * kPi * w * w, -0.25) / std::sqrt(1.0 + std::exp(-d * d / (w * w)));
  std::vector<cplx> plus(n), minus(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double q = grid.q(j);
    plus[j] = norm * std::exp(-(q - d) * (q - d) / (2 * w * w));
    minus[j] = norm * std::exp(-(q + d) * (q + d) / (2 * w * w));
  }
  const WignerFunction w_in = wdf_from_wavefunction(psi, exec);
  Matrix<double> outer_values = wdf_unnormalized(WaveFunction(grid, plus), exec).values();
  {
    const WignerFunction wm = wdf_unnormalized(WaveFunction(grid, minus), exec);
    for (std::size_t i = 0; i < outer_values.size(); ++i) outer_values.flat()[i] += wm.values().flat()[i];
  }
  const WignerFunction w_outer(grid, std::move(outer_values));

  double in_inter = 0.0, in_outer = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    in_outer = std::max(in_outer, w_outer(j, k0));
    in_inter = std::max(in_inter, std::abs(w_in(j, k0) - w_outer(j, k0)));
  }

  SlitScan scan;
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(grid.q(j)) <= 1.5 * d + 1e-12) {
      rows.push_back(j);
      scan.offsets.push_back(grid.q(j));
    }
  }
  scan.filtered = Matrix<double>(rows.size(), n);
  scan.closed_form = Matrix<double>(rows.size(), n);

  double f_inter = 0.0, f_outer = 0.0;
  std::vector<double> ridge(rows.size(), 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double D = scan.offsets[r];
    const FilterSpec slit{FilterKind::coordinate, gaussian_device({q_m, D, 0.0}, grid)};
    const WignerFunction out = filter_wdf(w_in, slit, exec);
    const WignerFunction out_outer = filter_wdf(w_outer, slit, exec);
    const WignerFunction analytic = filtered_cat_wdf_closed_form(cat, q_m, D, grid);
    for (std::size_t j = 0; j < n; ++j) {
      scan.filtered(r, j) = out(j, k0);
      scan.closed_form(r, j) = analytic(j, k0);
      ridge[r] = std::max(ridge[r], out(j, k0));
      f_outer = std::max(f_outer, out_outer(j, k0));
      f_inter = std::max(f_inter, std::abs(out(j, k0) - out_outer(j, k0)));
    }
  }

  auto best = [&](bool positive) {
    double value = -1.0, where = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double D = scan.offsets[r];
      if ((positive ? D > 0.0 : D < 0.0) && ridge[r] > value) {
        value = ridge[r];
        where = D;
      }
    }
    return where;
  };
  scan.ridge_minus = best(false);
  scan.ridge_plus = best(true);
  scan.damping_ratio = (f_inter / f_outer) / (in_inter / in_outer);
  return scan;
}

WaveFunction superposition(const std::vector<std::pair<cplx, GaussianSpec>>& terms,
                           const Grid& grid) {
  if (terms.empty()) throw DomainError("superposition: no terms");
  std::vector<cplx> amp(grid.size(), cplx{0.0, 0.0});
  for (const auto& [c, spec] : terms) {
    const WaveFunction g = gaussian_wavefunction(spec, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) amp[j] += c * g[j];
  }
  return normalize(WaveFunction(grid, std::move(amp)));
}

}  // namespace wignerlab
