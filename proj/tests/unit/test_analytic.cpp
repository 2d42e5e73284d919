#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "wignerlab/analytic.hpp"
#include "wignerlab/error.hpp"
#include "wignerlab/filtering.hpp"

using namespace wignerlab;
using oracle::max_abs_diff;

namespace {
const Grid kDesk = make_grid(-12, 12, 256);

// int exp(-a q^2 + b q - c) dq
double gauss_integral(double a, double b, double c) { return std::sqrt(kPi / a) * std::exp(b * b / (4 * a) - c); }
}  // namespace

TEST(Analytic, GaussianIsNormalized) {
  for (double w : {0.5, 1.0, 1.5}) EXPECT_NEAR(gaussian_wavefunction({w, 0.3, -0.5}, kDesk).norm_squared(), 1.0, 1e-13);
}

TEST(Analytic, FitCheck) {
  EXPECT_THROW(gaussian_wavefunction({1.0, 9.0}, kDesk), DomainError);    // too close to the q edge
  EXPECT_THROW(gaussian_wavefunction({0.1, 0.0}, kDesk), DomainError);    // too wide in p
  EXPECT_THROW(gaussian_wavefunction({1.0, 0.0, 12.0}, kDesk), DomainError);
  EXPECT_THROW(gaussian_wavefunction({-1.0}, kDesk), DomainError);
  EXPECT_NO_THROW(gaussian_device({1.0, 11.0}, kDesk));
  EXPECT_THROW(cat_wavefunction({1.0, 8.0}, kDesk), DomainError);
  EXPECT_THROW(cat_wavefunction({1.0, -1.0}, kDesk), DomainError);
}

TEST(Analytic, CatNormalizationConstant) {
  for (double d : {0.0, 0.5, 2.0, 4.0}) EXPECT_NEAR(cat_wavefunction({1.0, d}, kDesk).norm_squared(), 1.0, 1e-12);
}

TEST(Analytic, CatClosedFormMassAndPeaks) {
  const WignerFunction w = cat_wdf_closed_form({1.0, 4.0}, kDesk);
  EXPECT_NEAR(w.mass(), 1.0, 1e-12);
  // Outer tails 2e^{-16} cancel the normalization exactly: W(0,0) = 2/h.
  EXPECT_NEAR(w(128, 128), 2.0 / kDesk.h(), 1e-15);
}

TEST(Analytic, FilteredGaussianMassIsTransmission) {
  const double qi = 1.5, qm = 0.7;
  const WignerFunction w = filtered_gaussian_wdf_closed_form(qi, qm, kDesk);
  EXPECT_NEAR(w.mass(), 1.0 / std::sqrt(kPi * (qi * qi + qm * qm)), 1e-12);
}

TEST(Analytic, FilteredCatConstantAgainstGaussianIntegrals) {
  // Transmission of N(g(q-d) + g(q+d)) times a normalized slit of width q_m at D.
  const CatSpec cat{1.0, 4.0};
  const double qm = 1.0;
  for (double D : {-4.0, 0.0, 1.5, 4.0}) {
    const double w = cat.width, d = cat.separation;
    const double N2 = 1.0 / (std::sqrt(4 * kPi * w * w) * (1 + std::exp(-d * d / (w * w))));
    double t = 0.0;
    for (double s1 : {-1.0, 1.0})
      for (double s2 : {-1.0, 1.0}) {
        const double a = 1 / (w * w) + 1 / (qm * qm);
        const double b = (s1 + s2) * d / (w * w) + 2 * D / (qm * qm);
        const double c = 2 * d * d / (2 * w * w) + D * D / (qm * qm);
        t += gauss_integral(a, b, c);
      }
    t *= N2 / std::sqrt(kPi * qm * qm);
    const WignerFunction closed = filtered_cat_wdf_closed_form(cat, qm, D, kDesk);
    EXPECT_NEAR(closed.mass(), t, 1e-12) << "D=" << D;
  }
}

TEST(Analytic, FilteredCatMatchesNumericalFilter) {
  const CatSpec cat{1.0, 4.0};
  const WignerFunction w = wdf_from_wavefunction(cat_wavefunction(cat, kDesk));
  for (double D : {-4.0, 0.0, 2.4375}) {
    const FilterSpec slit{FilterKind::coordinate, gaussian_device({1.0, D}, kDesk)};
    EXPECT_LT(max_abs_diff(filter_wdf(w, slit).values(), filtered_cat_wdf_closed_form(cat, 1.0, D, kDesk).values()),
              1e-12);
  }
}
