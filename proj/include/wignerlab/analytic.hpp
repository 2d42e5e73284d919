#pragma once

#include "wignerlab/grid.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab {

/// Minimum-uncertainty Gaussian packet
/// psi(q) = (pi w^2)^{-1/4} exp(-(q-c)^2/(2 w^2)) exp(i p0 (q-c)/hbar).
struct GaussianSpec {
  double width = 1.0;
  double center = 0.0;
  double momentum_offset = 0.0;
};

/// Even superposition of Gaussians of width `width` centered at +-separation.
struct CatSpec {
  double width = 1.0;
  double separation = 4.0;
};

/// Amplitude a generated state may leave at the lattice ends (in q and in p).
inline constexpr double kFitTolerance = 1e-12;

/// Normalized samples; throws DomainError when the packet does not fit the
/// q range or the momentum band of the grid.
WaveFunction gaussian_wavefunction(const GaussianSpec& spec, const Grid& grid);

/// The same samples without the fit check, for filter transmission functions
/// (a slit may sit close to the lattice edge; it is not a state).
WaveFunction gaussian_device(const GaussianSpec& spec, const Grid& grid);

/// (2/h) exp(-(q-c)^2/w^2 - (p-p0)^2 w^2/hbar^2) on the lattice.
WignerFunction gaussian_wdf_closed_form(const GaussianSpec& spec, const Grid& grid);

/// N [exp(-(q-d)^2/(2 w^2)) + exp(-(q+d)^2/(2 w^2))] with
/// N = (4 pi w^2)^{-1/4} [1 + exp(-d^2/w^2)]^{-1/2}.
WaveFunction cat_wavefunction(const CatSpec& spec, const Grid& grid);

/// exp(-p^2 w^2/hbar^2) / (h [1 + exp(-d^2/w^2)]) *
///   [exp(-(q-d)^2/w^2) + exp(-(q+d)^2/w^2) + 2 exp(-q^2/w^2) cos(2 d p/hbar)].
WignerFunction cat_wdf_closed_form(const CatSpec& spec, const Grid& grid);

/// WDF left by a centered Gaussian slit of width q_m acting on a centered
/// Gaussian of width q_i, before renormalization:
///   2/(h sqrt(pi(q_i^2+q_m^2))) exp(-q^2/q_i^2 - q^2/q_m^2)
///     exp(-(p^2/hbar^2) q_i^2 q_m^2/(q_i^2+q_m^2)).
/// Its mass is the transmitted fraction 1/sqrt(pi(q_i^2+q_m^2)).
WignerFunction filtered_gaussian_wdf_closed_form(double q_i, double q_m, const Grid& grid);

/// Structure of a cat state after a Gaussian slit of width q_m centered at D:
///   K exp(-(q-D)^2/q_m^2) exp(-(p^2/hbar^2) q_e^2)
///     [outer(q-d) + outer(q+d) + 2 exp(-q^2/w^2) exp(-d^2/(w^2+q_m^2)) cos(2dp q_m^2/(hbar(w^2+q_m^2)))]
/// with q_e^2 = w^2 q_m^2/(w^2+q_m^2). The overall constant K is fixed at run
/// time so that the mass equals the transmission of the numerically filtered
/// state (the unnormalized filter output).
WignerFunction filtered_cat_wdf_closed_form(const CatSpec& spec, double q_m, double D,
                                            const Grid& grid);

/// The constant K used above.
double filtered_cat_constant(const CatSpec& spec, double q_m, double D, const Grid& grid);

}  // namespace wignerlab
