#pragma once

#include <string_view>

#include "wignerlab/grid.hpp"
#include "wignerlab/matrix.hpp"
#include "wignerlab/parallel.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab {

/// coordinate:         psi_out(q) = psi_in(q) psi_m(q)
/// momentum:           psi_bar_out(p) = psi_bar_in(p) psi_bar_m(p)
/// general_coordinate: psi_out(q) = h^{-1/2} int psi_in(q') psi_m(q-q') exp(i p0 q'/hbar) dq'
/// general_momentum:   psi_bar_out(p) = h^{-1/2} int psi_bar_in(p') psi_bar_m(p-p') exp(-i q0 p'/hbar) dp'
enum class FilterKind { coordinate, momentum, general_coordinate, general_momentum };

std::string_view to_string(FilterKind k);
FilterKind filter_kind_from_string(std::string_view s);

/// A filtering device. `device` is the transmission function, not necessarily
/// unit norm: psi_m(q) for the coordinate kinds, psi_bar_m(p) for the momentum
/// kinds (either representation is accepted and converted). Offsets must be
/// integer multiples of the lattice spacing of their variable.
struct FilterSpec {
  FilterKind kind;
  WaveFunction device;
  double q_offset = 0.0;
  double p_offset = 0.0;
};

struct FilterOutput {
  WaveFunction state;   // renormalized, position representation
  double transmission;  // squared norm before renormalization
};

/// Transmitted fraction below which a filter counts as blocking the state.
inline constexpr double kZeroTransmission = 1e-15;

/// Unnormalized filter output in position representation.
WaveFunction apply_filter(const WaveFunction& psi_in, const FilterSpec& f);

/// Renormalized output plus transmission. Throws DomainError on zero transmission.
FilterOutput filter_wavefunction(const WaveFunction& psi_in, const FilterSpec& f);

/// Phase-space form of the same filter, acting on W_in with W_m = WDF of the
/// device (unnormalized):
///   coordinate         int W_in(q,p') W_m(q,p-p') dp'
///   momentum           int W_in(q',p) W_m(q-q',p) dq'
///   general_coordinate int W_in(q',p-p0) W_m(q-q',p) dq'
///   general_momentum   int W_in(q-q0,p') W_m(q,p-p') dp'
/// p-integrals are circular on the (periodic) momentum lattice; q-integrals
/// are linear with zero extension. The result is the WDF of apply_filter's
/// output, not renormalized.
WignerFunction filter_wdf(const WignerFunction& w_in, const FilterSpec& f,
                          Exec exec = Exec::parallel);

/// Detector read-out over the (q,p) lattice. Not renormalized.
struct DetectionMap {
  Grid grid;
  Matrix<double> values;

  double min() const;
  double mass() const;
};

/// Detector outputs below this value mean the detector WDF was not physical.
inline constexpr double kDetectionFloor = -1e-12;

/// int W_in(q',p') W_m(q-q',p-p') dq' dp'. Throws NumericalError when the
/// result drops below kDetectionFloor.
DetectionMap detect(const WignerFunction& w_in, const WignerFunction& w_m,
                    Exec exec = Exec::parallel);

/// h^{-1} |int psi_in(q') conj(psi_m(q-q')) exp(-i p q'/hbar) dq'|^2, the
/// wavefunction form of the same read-out.
DetectionMap detection_from_wavefunctions(const WaveFunction& psi_in, const WaveFunction& psi_m);

enum class Interaction { interference, transition, both, neither };
std::string_view to_string(Interaction c);

struct InteractionThresholds {
  double support_fraction = 1e-4;  // of the marginal's peak
  double common_projection = 0.5;  // shared-support mass fraction
  double overlap = 1e-3;           // overlap probability
};

struct InteractionReport {
  double overlap_mass;
  double common_q_support;
  double common_p_support;
  Interaction classification;
};

/// overlaps := overlap_mass >= overlap; common := max(common_q, common_p) >= common_projection.
///   overlaps and common and overlap_mass < 0.5  -> both
///   overlaps otherwise                          -> transition
///   common only                                 -> interference
///   neither                                     -> neither
InteractionReport classify_interaction(const WignerFunction& w1, const WignerFunction& w2,
                                       const InteractionThresholds& t = {});

}  // namespace wignerlab
