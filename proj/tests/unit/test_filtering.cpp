#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wignerlab/analytic.hpp"
#include "wignerlab/error.hpp"
#include "wignerlab/filtering.hpp"

using namespace wignerlab;
using oracle::max_abs_diff;

namespace {

const Grid kDesk = make_grid(-12, 12, 256);

// h^{-1/2} sum_j' psi_in(q_j') psi_m(q_j - q_j') e^{i p0 q_j'/hbar} dq
std::vector<cplx> convolution_direct(const Grid& g, const WaveFunction& a, const WaveFunction& m, double p0) {
  const std::size_t n = g.size();
  const long o = long(*g.origin_index());
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc = 0.0;
    for (std::size_t jp = 0; jp < n; ++jp) {
      const long idx = long(j) - long(jp) + o;
      if (idx < 0 || idx >= long(n)) continue;
      acc += a[jp] * m[std::size_t(idx)] * std::polar(1.0, p0 * g.q(jp) / g.hbar());
    }
    out[j] = acc * g.delta_q() / std::sqrt(g.h());
  }
  return out;
}

double max_diff(const WaveFunction& a, const std::vector<cplx>& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

TEST(FilterKind, Names) {
  for (FilterKind k : {FilterKind::coordinate, FilterKind::momentum, FilterKind::general_coordinate,
                       FilterKind::general_momentum})
    EXPECT_EQ(filter_kind_from_string(to_string(k)), k);
  EXPECT_THROW(filter_kind_from_string("slit"), DomainError);
}

TEST(Filter, CoordinateIsPointwiseProduct) {
  std::mt19937_64 rng(21);
  const WaveFunction psi = oracle::random_state(rng, kDesk);
  const WaveFunction dev = gaussian_device({0.7, 0.4, 0.3}, kDesk);
  std::vector<cplx> ref(kDesk.size());
  for (std::size_t j = 0; j < ref.size(); ++j) ref[j] = psi[j] * dev[j];
  EXPECT_LT(max_diff(apply_filter(psi, {FilterKind::coordinate, dev}), ref), 1e-15);
}

TEST(Filter, ConvolutionKindsMatchDirectSums) {
  std::mt19937_64 rng(22);
  const WaveFunction psi = oracle::random_state(rng, kDesk);
  const WaveFunction dev = gaussian_device({0.9, -0.5, 0.2}, kDesk);
  EXPECT_LT(max_diff(apply_filter(psi, {FilterKind::momentum, dev}), convolution_direct(kDesk, psi, dev, 0.0)),
            1e-13);
  const double p0 = 6 * kDesk.delta_p();
  EXPECT_LT(max_diff(apply_filter(psi, {FilterKind::general_coordinate, dev, 0.0, p0}),
                     convolution_direct(kDesk, psi, dev, p0)),
            1e-13);
}

TEST(Filter, GeneralMomentumShiftsThenMultiplies) {
  std::mt19937_64 rng(23);
  const WaveFunction psi = oracle::random_state(rng, kDesk);
  const WaveFunction dev = gaussian_device({1.1, 0.5}, kDesk);
  const long shift = 7;
  std::vector<cplx> ref(kDesk.size(), 0.0);
  for (long j = shift; j < long(kDesk.size()); ++j) ref[std::size_t(j)] = psi[std::size_t(j - shift)] * dev[std::size_t(j)];
  EXPECT_LT(max_diff(apply_filter(psi, {FilterKind::general_momentum, dev, shift * kDesk.delta_q(), 0.0}), ref),
            1e-13);
}

TEST(Filter, MomentumTransmissionOfGaussians) {
  const double a = 1.0, b = 0.6;
  const FilterOutput out =
      filter_wavefunction(gaussian_wavefunction({a}, kDesk), {FilterKind::momentum, gaussian_device({b}, kDesk)});
  EXPECT_NEAR(out.transmission, a * b / std::sqrt(kPi * (a * a + b * b)), 1e-12);
  EXPECT_NEAR(out.state.norm_squared(), 1.0, 1e-12);
}

TEST(Filter, DeviceInMomentumRepresentation) {
  std::mt19937_64 rng(24);
  const WaveFunction psi = oracle::random_state(rng, kDesk);
  const WaveFunction dev = gaussian_device({0.8, 0.3}, kDesk);
  const WaveFunction a = apply_filter(psi, {FilterKind::momentum, dev});
  const WaveFunction b = apply_filter(psi, {FilterKind::momentum, fourier_transform(dev)});
  EXPECT_LT(max_diff(a, oracle::amplitudes(b)), 1e-12);
}

TEST(Filter, Errors) {
  const WaveFunction psi = gaussian_wavefunction({0.5, -5.0}, kDesk);
  EXPECT_THROW(filter_wavefunction(psi, {FilterKind::coordinate, gaussian_device({0.3, 8.0}, kDesk)}), DomainError);
  const WaveFunction dev = gaussian_device({1.0}, kDesk);
  EXPECT_THROW(apply_filter(psi, {FilterKind::general_momentum, dev, 0.3 * kDesk.delta_q(), 0.0}), DomainError);
  EXPECT_THROW(apply_filter(psi, {FilterKind::general_coordinate, dev, 0.0, 0.5 * kDesk.delta_p()}), DomainError);
  EXPECT_THROW(apply_filter(psi, {FilterKind::coordinate, gaussian_device({1.0}, make_grid(-12, 12, 128))}),
               DomainError);
}

TEST(FilterWdf, CommutesForEveryKind) {
  const Grid g = make_grid(-16, 16, 320);
  std::mt19937_64 rng(25);
  for (FilterKind kind : {FilterKind::coordinate, FilterKind::momentum, FilterKind::general_coordinate,
                          FilterKind::general_momentum}) {
    const WaveFunction psi = oracle::random_state(rng, g);
    FilterSpec f{kind, gaussian_device({1.0, 0.5, -0.3}, g), 5 * g.delta_q(), -4 * g.delta_p()};
    if (kind == FilterKind::coordinate || kind == FilterKind::momentum) f.q_offset = f.p_offset = 0.0;
    const WignerFunction lhs = filter_wdf(wdf_from_wavefunction(psi), f);
    const WignerFunction rhs = wdf_unnormalized(apply_filter(psi, f));
    EXPECT_LT(max_abs_diff(lhs.values(), rhs.values()), 1e-12) << to_string(kind);
    EXPECT_EQ(lhs.values(), filter_wdf(wdf_from_wavefunction(psi), f, Exec::serial).values());
  }
}

TEST(FilterWdf, GaussianMassEqualsTransmission) {
  const double qi = 1.2, qm = 0.5;
  const FilterSpec slit{FilterKind::coordinate, gaussian_device({qm}, kDesk)};
  const WignerFunction out = filter_wdf(wdf_from_wavefunction(gaussian_wavefunction({qi}, kDesk)), slit);
  EXPECT_NEAR(out.mass(), 1.0 / std::sqrt(kPi * (qi * qi + qm * qm)), 1e-12);
  EXPECT_LT(max_abs_diff(out.values(), filtered_gaussian_wdf_closed_form(qi, qm, kDesk).values()), 1e-12);
}

TEST(Detection, MatchesBruteForce) {
  std::mt19937_64 rng(26);
  const WaveFunction a = oracle::random_state(rng, kDesk);
  const WaveFunction m = oracle::random_state(rng, kDesk);
  const Matrix<double> ref = oracle::detection_direct(kDesk, oracle::amplitudes(a), oracle::amplitudes(m));
  EXPECT_LT(max_abs_diff(detection_from_wavefunctions(a, m).values, ref), 1e-13);
  const DetectionMap lhs = detect(wdf_from_wavefunction(a), wdf_from_wavefunction(m), Exec::serial);
  EXPECT_LT(max_abs_diff(lhs.values, ref), 1e-12);
  EXPECT_EQ(lhs.values, detect(wdf_from_wavefunction(a), wdf_from_wavefunction(m), Exec::parallel).values);
  EXPECT_GE(lhs.min(), kDetectionFloor);
}

TEST(Detection, OriginReadsTheOverlap) {
  // int W_a(q',p') W_b(-q',-p') = P_ab / h for a reflected device.
  std::mt19937_64 rng(27);
  const WignerFunction a = wdf_from_wavefunction(oracle::random_state(rng, kDesk));
  const WignerFunction b = wdf_from_wavefunction(oracle::random_state(rng, kDesk));
  const DetectionMap d = detect(a, reflect(b));
  EXPECT_NEAR(d.values(*kDesk.origin_index(), kDesk.size() / 2) * kDesk.h(), overlap_probability(a, b), 1e-12);
}

TEST(Detection, MassIsProductOfMasses) {
  const WignerFunction a = wdf_from_wavefunction(cat_wavefunction({1.0, 3.0}, kDesk));
  const WignerFunction b = wdf_from_wavefunction(gaussian_wavefunction({0.8, 0.5}, kDesk));
  EXPECT_NEAR(detect(a, b).mass(), 1.0, 1e-10);
}

TEST(Detection, UnphysicalDeviceRejected) {
  const WignerFunction a = wdf_from_wavefunction(gaussian_wavefunction({1.0}, kDesk));
  Matrix<double> neg = a.values();
  for (double& x : neg.flat()) x = -x;
  EXPECT_THROW(detect(a, WignerFunction(kDesk, neg)), NumericalError);
}

TEST(Classify, DecisionTable) {
  const WignerFunction g0 = wdf_from_wavefunction(gaussian_wavefunction({1.0}, kDesk));
  auto at = [](double q, double p) { return wdf_from_wavefunction(gaussian_wavefunction({1.0, q, p}, kDesk)); };
  EXPECT_EQ(classify_interaction(g0, g0).classification, Interaction::transition);
  EXPECT_EQ(classify_interaction(g0, at(2.0, 0.0)).classification, Interaction::both);
  EXPECT_EQ(classify_interaction(at(-4.0, 0.0), at(4.0, 0.0)).classification, Interaction::interference);
  EXPECT_EQ(classify_interaction(at(-4.0, -4.0), at(4.0, 4.0)).classification, Interaction::neither);
  const InteractionReport r = classify_interaction(g0, at(2.0, 0.0));
  EXPECT_NEAR(r.overlap_mass, std::exp(-2.0), 1e-10);
  EXPECT_EQ(to_string(Interaction::both), "both");
}
