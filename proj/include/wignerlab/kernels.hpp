#pragma once

// Data-parallel lattice kernels. Every kernel loops over independent rows or
// columns; Exec::serial runs the plain loop and Exec::parallel distributes the
// same per-row body over OpenMP threads. The serial path is the reference the
// tests compare against.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wignerlab/grid.hpp"
#include "wignerlab/matrix.hpp"
#include "wignerlab/parallel.hpp"

namespace wignerlab::kernels {

/// Cache-blocked transpose.
Matrix<double> transpose(const Matrix<double>& a, Exec exec);
void transpose_into(const Matrix<double>& a, Matrix<double>& out, Exec exec);

/// Lattice Wigner transform of sampled amplitudes (no normalization check).
/// Row j holds (2/h) dq * sum_m conj(psi[j-m]) psi[j+m] exp(-2 pi i (k-n/2) m/n),
/// with zero extension beyond the lattice. Throws NumericalError when the
/// imaginary residue exceeds 1e-10 relative to the 2/h scale.
Matrix<double> wigner_from_amplitudes(const Grid& grid, std::span<const cplx> psi, Exec exec);

/// Same construction with rho(j+m, j-m) as the correlation.
Matrix<double> wigner_from_density(const Grid& grid, const Matrix<cplx>& rho, Exec exec);

/// Row-wise circular convolution along p:
/// out(j,k) = dp * sum_k' a(j,k') b(j, (k-k'+n/2) mod n).
/// The p lattice of a discrete WDF is periodic, so this is the exact lattice
/// counterpart of a momentum convolution.
Matrix<double> convolve_p_circular(const Matrix<double>& a, const Matrix<double>& b, double dp,
                                   Exec exec);

/// Column-wise linear convolution along q with zero extension:
/// out(j,k) = dq * sum_j' a(j',k) kernel(j-j'+origin, k).
/// `kernel` may have any number of rows; row `origin` is the zero offset.
Matrix<double> convolve_q_linear(const Matrix<double>& a, const Matrix<double>& kernel,
                                 std::size_t origin, double dq, Exec exec);

/// Full 2-D convolution, linear along q and circular along p:
/// out(j,k) = dq dp * sum_{j',k'} a(j',k') kernel(j-j'+origin, (k-k'+n/2) mod n).
Matrix<double> convolve_2d(const Matrix<double>& a, const Matrix<double>& kernel,
                           std::size_t origin, double dq, double dp, Exec exec);

/// Right-hand side of the Moyal equation on the lattice:
/// out = -(p/m) dW/dq + IFFT_p[ i * multiplier(j,u) * FFT_p W ].
/// `multiplier` has n rows and n/2+1 columns (one per non-negative p-frequency);
/// spectral q-derivative drops the Nyquist mode.
Matrix<double> moyal_rhs(const Grid& grid, const Matrix<double>& w, double mass,
                         const Matrix<double>& multiplier, Exec exec);

/// Buffers reused across repeated moyal_rhs calls on one grid.
struct MoyalWorkspace {
  Matrix<double> wt, dwdq;
  std::vector<double> velocity;
};

/// In-place variant for time stepping; `out` is resized when needed.
void moyal_rhs(const Grid& grid, const Matrix<double>& w, double mass,
               const Matrix<double>& multiplier, Matrix<double>& out, MoyalWorkspace& ws,
               Exec exec);

}  // namespace wignerlab::kernels
