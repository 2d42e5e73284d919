#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wignerlab/kernels.hpp"

using namespace wignerlab;
using oracle::max_abs_diff;

namespace {

Matrix<double> random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix<double> m(r, c);
  for (double& x : m.flat()) x = u(rng);
  return m;
}

}  // namespace

TEST(Kernels, Transpose) {
  std::mt19937_64 rng(1);
  const Matrix<double> a = random_matrix(70, 45, rng);
  const Matrix<double> t = kernels::transpose(a, Exec::parallel);
  ASSERT_EQ(t.rows(), 45u);
  for (std::size_t r = 0; r < 70; ++r)
    for (std::size_t c = 0; c < 45; ++c) EXPECT_EQ(t(c, r), a(r, c));
}

TEST(Kernels, CircularPConvolutionMatchesDirectSum) {
  std::mt19937_64 rng(2);
  const std::size_t n = 32;
  const Matrix<double> a = random_matrix(n, n, rng), b = random_matrix(n, n, rng);
  const double dp = 0.3;
  Matrix<double> ref(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t kp = 0; kp < n; ++kp) ref(j, k) += dp * a(j, kp) * b(j, (k + 2 * n - kp + n / 2) % n);
  for (Exec e : {Exec::serial, Exec::parallel})
    EXPECT_LT(max_abs_diff(kernels::convolve_p_circular(a, b, dp, e), ref), 1e-12);
}

TEST(Kernels, LinearQConvolutionMatchesDirectSum) {
  std::mt19937_64 rng(3);
  const std::size_t n = 32, rows = 21, origin = 7;
  const Matrix<double> a = random_matrix(n, n, rng), ker = random_matrix(rows, n, rng);
  const double dq = 0.2;
  Matrix<double> ref(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t jp = 0; jp < n; ++jp) {
        const long idx = long(j) - long(jp) + long(origin);
        if (idx >= 0 && idx < long(rows)) ref(j, k) += dq * a(jp, k) * ker(std::size_t(idx), k);
      }
  for (Exec e : {Exec::serial, Exec::parallel})
    EXPECT_LT(max_abs_diff(kernels::convolve_q_linear(a, ker, origin, dq, e), ref), 1e-12);
}

TEST(Kernels, TwoDimensionalConvolutionMatchesDirectSum) {
  std::mt19937_64 rng(4);
  const std::size_t n = 16, rows = 31, origin = 15;
  const Matrix<double> a = random_matrix(n, n, rng), ker = random_matrix(rows, n, rng);
  const double dq = 0.2, dp = 0.4;
  Matrix<double> ref(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t jp = 0; jp < n; ++jp)
        for (std::size_t kp = 0; kp < n; ++kp) {
          const long idx = long(j) - long(jp) + long(origin);
          if (idx < 0 || idx >= long(rows)) continue;
          ref(j, k) += dq * dp * a(jp, kp) * ker(std::size_t(idx), (k + 2 * n - kp + n / 2) % n);
        }
  const Matrix<double> s = kernels::convolve_2d(a, ker, origin, dq, dp, Exec::serial);
  EXPECT_LT(max_abs_diff(s, ref), 1e-12);
  EXPECT_EQ(s, kernels::convolve_2d(a, ker, origin, dq, dp, Exec::parallel));
}

TEST(Kernels, MoyalRhsSerialParallelAndWorkspaceAgree) {
  std::mt19937_64 rng(5);
  const Grid g = make_grid(-6, 6, 64);
  const Matrix<double> w = random_matrix(64, 64, rng);
  const Matrix<double> mult = random_matrix(64, 33, rng);
  const Matrix<double> s = kernels::moyal_rhs(g, w, 1.3, mult, Exec::serial);
  EXPECT_EQ(s, kernels::moyal_rhs(g, w, 1.3, mult, Exec::parallel));
  Matrix<double> out;
  kernels::MoyalWorkspace ws;
  kernels::moyal_rhs(g, w, 1.3, mult, out, ws, Exec::parallel);
  kernels::moyal_rhs(g, w, 1.3, mult, out, ws, Exec::parallel);  // reuse
  EXPECT_EQ(s, out);
}
