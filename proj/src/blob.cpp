#include "wignerlab/blob.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wignerlab/error.hpp"
#include "wignerlab/fft.hpp"
#include "wignerlab/kernels.hpp"

namespace wignerlab {
namespace {

constexpr double kSpectralFloor = 1e-6;

}  // namespace

double effective_area(const WignerFunction& w) {
  const double mass = w.mass();
  if (std::abs(mass - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "effective_area: mass " << mass << " is not 1";
    throw DomainError(msg.str());
  }
  const Moments m = moments(w);
  const double det = m.var_q * m.var_p - m.cov_qp * m.cov_qp;
  const double area = 2.0 * kPi * std::sqrt(std::max(det, 0.0));
  const double floor = w.grid().h() / 2.0;
  if (area < floor * (1.0 - 1e-6)) {
    std::ostringstream msg;
    msg << "effective_area: area " << area << " is below h/2 = " << floor
        << "; not the WDF of a physical state";
    throw DomainError(msg.str());
  }
  return area;
}

double smoothed_minimum(const WignerFunction& w, double sigma_q, double sigma_p, Exec exec) {
  if (!(sigma_q > 0.0) || !(sigma_p > 0.0)) {
    throw DomainError("smoothed_minimum: widths must be positive");
  }
  const Grid& g = w.grid();
  const std::size_t n = g.size();
  const std::size_t rows = 2 * n - 1;
  const double dq = g.delta_q();
  const double dp = g.delta_p();
  Matrix<double> kernel(rows, n);
  double sum = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double x = (static_cast<double>(i) - static_cast<double>(n - 1)) * dq;
    for (std::size_t k = 0; k < n; ++k) {
      const double y = g.p(k);
      const double v = std::exp(-x * x / (2 * sigma_q * sigma_q) - y * y / (2 * sigma_p * sigma_p));
      kernel(i, k) = v;
      sum += v;
    }
  }
  const double inv = 1.0 / (sum * dq * dp);
  for (double& v : kernel.flat()) v *= inv;
  const Matrix<double> smooth = kernels::convolve_2d(w.values(), kernel, n - 1, dq, dp, exec);
  return *std::min_element(smooth.flat().begin(), smooth.flat().end());
}

double subplanck_scale(const WignerFunction& w) {
  const Grid& g = w.grid();
  const std::size_t n = g.size();
  Matrix<cplx> spec(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) spec(j, k) = w(j, k);
  }
  const auto& plan = fft::complex_plan(n, fft::Direction::forward);
  fft::CBuffer buf(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::copy(spec.row(j).begin(), spec.row(j).end(), buf.begin());
    plan.execute(buf);
    std::copy(buf.begin(), buf.end(), spec.row(j).begin());
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) buf[j] = spec(j, k);
    plan.execute(buf);
    for (std::size_t j = 0; j < n; ++j) spec(j, k) = buf[j];
  }

  double peak = 0.0;
  for (const cplx& c : spec.flat()) peak = std::max(peak, std::norm(c));
  if (!(peak > 0.0)) throw DomainError("subplanck_scale: zero distribution");

  auto freq = [n](std::size_t u) {
    const auto s = u < n / 2 ? static_cast<double>(u) : static_cast<double>(u) - static_cast<double>(n);
    return std::abs(s);
  };
  double top_q = 0.0, top_p = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (std::norm(spec(u, v)) > kSpectralFloor * peak) {
        top_q = std::max(top_q, freq(u));
        top_p = std::max(top_p, freq(v));
      }
    }
  }
  const double kq = 2.0 * kPi * std::max(top_q, 1.0) / (static_cast<double>(n) * g.delta_q());
  const double kp = 2.0 * kPi * std::max(top_p, 1.0) / (static_cast<double>(n) * g.delta_p());
  const double gaussian_product = 2.0 * std::log(1.0 / kSpectralFloor) / g.hbar();
  return (g.h() / 2.0) * gaussian_product / (kq * kp);
}

BlobReport blob_report(const WignerFunction& w, double sigma_q, double sigma_p, Exec exec) {
  return {effective_area(w), w.min(), smoothed_minimum(w, sigma_q, sigma_p, exec),
          subplanck_scale(w)};
}

}  // namespace wignerlab
