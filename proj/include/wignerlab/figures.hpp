#pragma once

#include <vector>

#include "wignerlab/analytic.hpp"
#include "wignerlab/grid.hpp"
#include "wignerlab/matrix.hpp"
#include "wignerlab/parallel.hpp"

namespace wignerlab {

/// Off-axis slit scan across a cat state: the slit (Gaussian of width q_m) is
/// centered at every lattice point D with |D| <= 1.5 d, and the filtered WDF
/// is sampled on the p = 0 line.
struct SlitScan {
  std::vector<double> offsets;       // D values
  Matrix<double> filtered;           // rows D, columns q: W_out(q, 0; D), unnormalized
  Matrix<double> closed_form;        // the same slice of the analytic expression
  double ridge_minus;                // D maximizing max_q W_out over D < 0
  double ridge_plus;                 // likewise over D > 0
  /// (max |interference| / max outer) after filtering, divided by the same
  /// ratio on the unfiltered p = 0 line. The outer part is the filtered sum
  /// of the two humps' own WDFs; the interference part is the remainder.
  double damping_ratio;
};

SlitScan slit_scan(const CatSpec& cat, double q_m, const Grid& grid, Exec exec = Exec::parallel);

/// Gaussian superposition sum_i c_i g_i, normalized.
WaveFunction superposition(const std::vector<std::pair<cplx, GaussianSpec>>& terms,
                           const Grid& grid);

}  // namespace wignerlab
