#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "wignerlab/grid.hpp"
#include "wignerlab/matrix.hpp"
#include "wignerlab/parallel.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab {

/// V(q) = sum_k coefficients[k] q^k, degree <= 8, with particle mass.
struct PotentialSpec {
  std::vector<double> coefficients;
  double mass = 1.0;

  /// Throws DomainError on non-finite data, degree > 8, or mass <= 0.
  void validate() const;
  /// Degree after dropping trailing zero coefficients (-1 for V = 0).
  int degree() const;
  /// d^order V / dq^order at q.
  double derivative(int order, double q) const;
  double value(double q) const { return derivative(0, q); }
  /// Smallest series order that sums the quantum corrections exactly.
  int required_series_order() const;
};

inline constexpr int kMaxPotentialDegree = 8;

struct EvolutionConfig {
  double dt = 1e-3;
  std::size_t n_steps = 0;
  int series_order = 0;

  /// Covers total time t with the fewest steps no longer than dt_max.
  static EvolutionConfig for_duration(double t, double dt_max, int series_order);
};

/// Per-row p-frequency multiplier of the force terms:
///   mult(j,u) = sum_{n=0}^{order} (hbar/2)^{2n}/(2n+1)! V^{(2n+1)}(q_j) kappa_u^{2n+1},
/// kappa_u = 2 pi u / (n dp), u = 0..n/2 (Nyquist column zero).
/// Warns and truncates when series_order is below the potential's requirement.
Matrix<double> moyal_multiplier(const Grid& grid, const PotentialSpec& v, int series_order);

/// dW/dt: classical transport -(p/m) dW/dq + V' dW/dp plus the odd-order
/// quantum corrections, all derivatives spectral.
Matrix<double> moyal_rhs(const WignerFunction& w, const PotentialSpec& v, int series_order,
                         Exec exec = Exec::parallel);

/// Largest admissible RK4 step: 0.5 min(m dq / p_max, dp / F_eff) with
/// F_eff = max_{j,u>0} |mult(j,u)| / kappa_u (equal to max|V'| for quadratic V).
double stability_limit(const Grid& grid, const PotentialSpec& v, int series_order);

/// Called after every `every` steps (and after the last) with the step index
/// and the current WDF.
struct Observer {
  std::size_t every = 0;
  std::function<void(std::size_t, const WignerFunction&)> callback;
};

/// Classic RK4 integration of the Moyal equation. Throws DomainError when dt
/// exceeds stability_limit, NumericalError when mass drifts by more than
/// 1e-4, |W| exceeds 1.01 * 2/h (times the mass), or values become non-finite.
WignerFunction propagate(const WignerFunction& w, const PotentialSpec& v,
                         const EvolutionConfig& cfg, Exec exec = Exec::parallel,
                         const Observer& observer = {});

/// Strang split-step Schroedinger propagation on the periodic q lattice
/// (half potential, full kinetic, half potential). Throws NumericalError when
/// the edge amplitude exceeds 1e-6.
WaveFunction split_step_schrodinger(const WaveFunction& psi, const PotentialSpec& v,
                                    const EvolutionConfig& cfg);

inline constexpr double kSplitStepEdgeLimit = 1e-6;

}  // namespace wignerlab
