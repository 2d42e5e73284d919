#pragma once

#include "wignerlab/parallel.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab {

/// Phase-space area occupied by a state: 2 pi sqrt(var_q var_p - cov_qp^2),
/// the covariance-ellipse area scaled so that every Gaussian gives exactly h/2.
/// Throws DomainError when the mass differs from 1 by more than 1e-6 or when the
/// area falls below h/2 (no physical state does; e.g. a distribution confined
/// to a single lattice line).
double effective_area(const WignerFunction& w);

/// Global minimum of W smoothed by a normalized Gaussian
/// exp(-x^2/(2 sigma_q^2) - y^2/(2 sigma_p^2)). For sigma_q sigma_p >= hbar/2
/// and a physical state the result is non-negative.
double smoothed_minimum(const WignerFunction& w, double sigma_q, double sigma_p,
                        Exec exec = Exec::parallel);

/// Fine-structure cell of W measured from its spectral support: with kappa_q*,
/// kappa_p* the largest frequencies whose 2-D power exceeds 1e-6 of the peak,
/// returns (h/2) * (2 ln(1e6)/hbar) / (kappa_q* kappa_p*). A Gaussian gives
/// h/2; interference fringes push it below.
double subplanck_scale(const WignerFunction& w);

struct BlobReport {
  double effective_area;
  double min_value;
  double min_smoothed_value;
  double subplanck_scale;
};

BlobReport blob_report(const WignerFunction& w, double sigma_q, double sigma_p,
                       Exec exec = Exec::parallel);

}  // namespace wignerlab
