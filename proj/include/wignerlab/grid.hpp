#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wignerlab/parallel.hpp"

namespace wignerlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform 1-D phase-space lattice.
///
/// Positions are q_j = q_min + j*delta_q for j in [0, n). Momenta are
/// p_k = (k - n/2)*delta_p with delta_p = pi*hbar/(n*delta_q). The momentum
/// spacing is half the usual spectral spacing because the Wigner correlation
/// variable is sampled at even multiples of delta_q; the momentum window
/// [-pi*hbar/(2*delta_q), pi*hbar/(2*delta_q)) is the Nyquist band of that
/// doubled spacing.
class Grid {
 public:
  Grid(double q_min, double delta_q, std::size_t n_points, double hbar = 1.0);

  double q_min() const { return q_min_; }
  double delta_q() const { return delta_q_; }
  std::size_t size() const { return n_; }
  double hbar() const { return hbar_; }
  double h() const { return 2.0 * kPi * hbar_; }

  double delta_p() const { return kPi * hbar_ / (static_cast<double>(n_) * delta_q_); }
  double q(std::size_t j) const { return q_min_ + static_cast<double>(j) * delta_q_; }
  double p(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(n_ / 2)) * delta_p();
  }
  double q_max() const { return q_min_ + static_cast<double>(n_) * delta_q_; }
  double p_min() const { return p(0); }

  std::vector<double> q_values() const;
  std::vector<double> p_values() const;

  /// Index j with q_j == 0, when the origin falls on the lattice. Relative
  /// coordinates q - q' (convolution kernels along q) need it.
  std::optional<std::size_t> origin_index() const;

  /// Nearest lattice index to a position (clamped to the lattice).
  std::size_t nearest_index(double q) const;

  /// Same lattice up to a relative tolerance of 1e-12 on every field.
  bool same_as(const Grid& other) const;

 private:
  double q_min_;
  double delta_q_;
  std::size_t n_;
  double hbar_;
};

/// Builds the lattice covering [q_min, q_max) with n_points samples.
/// n_points must be even and at least 8.
Grid make_grid(double q_min, double q_max, std::size_t n_points, double hbar = 1.0);

enum class Representation { position, momentum };

std::string_view to_string(Representation r);

/// Complex amplitudes sampled on a Grid, in position or momentum representation.
class WaveFunction {
 public:
  WaveFunction(Grid grid, std::vector<cplx> amplitudes,
               Representation representation = Representation::position);

  const Grid& grid() const { return grid_; }
  Representation representation() const { return representation_; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }
  std::size_t size() const { return amplitudes_.size(); }

  /// Quadrature spacing of the current representation.
  double spacing() const;
  /// Coordinate of sample i in the current representation.
  double coordinate(std::size_t i) const;

  /// Sum |psi_i|^2 * spacing.
  double norm_squared() const;

  /// Largest amplitude magnitude at the two lattice ends.
  double edge_amplitude() const;

 private:
  Grid grid_;
  std::vector<cplx> amplitudes_;
  Representation representation_;
};

/// Edge amplitude above which a diagnostic warning is emitted.
inline constexpr double kEdgeWarningThreshold = 1e-8;

/// Position -> momentum: h^{-1/2} * sum_j psi_j exp(-i p_k q_j / hbar) delta_q,
/// evaluated as a zero-padded 2n-point FFT with the q_min phase restored.
WaveFunction fourier_transform(const WaveFunction& psi);

/// Momentum -> position, the quadrature counterpart of fourier_transform.
WaveFunction inverse_fourier_transform(const WaveFunction& psi);

/// Sum conj(a_j) * b_j * spacing. Both operands must share grid and representation.
cplx inner_product(const WaveFunction& a, const WaveFunction& b);

/// Rescales to unit quadrature norm. Throws on a zero wavefunction.
WaveFunction normalize(const WaveFunction& psi);

}  // namespace wignerlab
