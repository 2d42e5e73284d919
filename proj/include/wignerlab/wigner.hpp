#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "wignerlab/grid.hpp"
#include "wignerlab/matrix.hpp"
#include "wignerlab/parallel.hpp"

namespace wignerlab {

/// Real quasi-probability over the q x p lattice, indexed [q_index][p_index].
class WignerFunction {
 public:
  WignerFunction(Grid grid, Matrix<double> values);

  const Grid& grid() const { return grid_; }
  const Matrix<double>& values() const { return values_; }
  double operator()(std::size_t j, std::size_t k) const { return values_(j, k); }
  std::size_t size() const { return grid_.size(); }

  /// Sum W * dq * dp.
  double mass() const;
  double min() const;
  double max() const;

 private:
  Grid grid_;
  Matrix<double> values_;
};

/// Complex Hermitian matrix over the coordinate lattice with trace*dq = 1.
class DensityMatrix {
 public:
  /// Validates hermiticity (1e-12 max abs deviation) and trace*dq = 1 (1e-10).
  DensityMatrix(Grid grid, Matrix<cplx> entries);

  static DensityMatrix pure(const WaveFunction& psi);
  /// Convex combination sum_i w_i |psi_i><psi_i|; weights must sum to 1.
  static DensityMatrix mixture(const std::vector<std::pair<double, WaveFunction>>& components);

  const Grid& grid() const { return grid_; }
  const Matrix<cplx>& entries() const { return entries_; }

  /// Smallest eigenvalue of rho*dq (the operator's spectrum on the lattice).
  double min_eigenvalue() const;

 private:
  Grid grid_;
  Matrix<cplx> entries_;
};

/// Tolerance on the unit norm required by wdf_from_wavefunction.
inline constexpr double kNormTolerance = 1e-6;
/// A WDF counts as pure when its purity is at least 1 - kPurityTolerance.
inline constexpr double kPurityTolerance = 1e-6;

/// W(q,p) = h^{-1} int conj(psi(q - x/2)) psi(q + x/2) exp(-i p x/hbar) dx on the
/// lattice, with x sampled at even multiples of dq and zero extension beyond
/// the grid edge. Requires a normalized position-representation state.
WignerFunction wdf_from_wavefunction(const WaveFunction& psi, Exec exec = Exec::parallel);

/// Same transform without the normalization check (filter devices, filtered
/// states before renormalization). Momentum-representation input is
/// transformed to position first.
WignerFunction wdf_unnormalized(const WaveFunction& psi, Exec exec = Exec::parallel);

/// W(q,p) = h^{-1} int <q + x/2|rho|q - x/2> exp(-i p x/hbar) dx.
WignerFunction wdf_from_density(const DensityMatrix& rho, Exec exec = Exec::parallel);

/// Inverts the pure-state transform with the identity
///   psi(q) conj(psi(q_ref)) = int W((q + q_ref)/2, p) exp(i p (q - q_ref)/hbar) dp,
/// the reference being the lattice point nearest q = 0. Midpoints falling
/// between lattice rows are reached by band-limited interpolation along q.
/// The global phase makes psi(q_ref) real and positive.
WaveFunction recover_wavefunction(const WignerFunction& w);

/// |psi(q)|^2 = int W dp.
std::vector<double> marginal_q(const WignerFunction& w);
/// |psi_bar(p)|^2 = int W dq.
std::vector<double> marginal_p(const WignerFunction& w);

/// Phase-space average int A(q,p) W(q,p) dq dp. Equals the quantum expectation
/// when A is the Weyl symbol of the operator; other orderings differ.
double expectation(const WignerFunction& w, const std::function<double(double, double)>& symbol);

struct Moments {
  double mean_q, mean_p;
  double var_q, var_p;
  double cov_qp;
};

/// First and second moments of q and p, normalized by the mass.
Moments moments(const WignerFunction& w);

/// Delta q * Delta p. Throws on a negative variance (unphysical input).
double uncertainty_product(const WignerFunction& w);

/// P12 = h * int W1 W2 dq dp.
double overlap_probability(const WignerFunction& a, const WignerFunction& b);

/// h * int W^2 dq dp; 1 for pure states.
double purity(const WignerFunction& w);

/// W(-q, -p) on the same lattice (zero where the mirror image leaves it).
WignerFunction reflect(const WignerFunction& w);

/// W(q - shift_q*dq, p - shift_p*dp): lattice translation with zero fill
/// along q and periodic wrap along p.
WignerFunction translate(const WignerFunction& w, std::ptrdiff_t shift_q, std::ptrdiff_t shift_p);

}  // namespace wignerlab
