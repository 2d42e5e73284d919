#include "wignerlab/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "wignerlab/error.hpp"
#include "wignerlab/fft.hpp"

namespace wignerlab::kernels {
namespace {

using fft::CBuffer;
using fft::RBuffer;

// Runs body(i, scratch) for i in [0, n). The serial path is a plain loop; the
// parallel path gives each thread its own scratch.
template <typename MakeScratch, typename Body>
void for_each_index(std::size_t n, Exec exec, MakeScratch make_scratch, Body body) {
  if (exec == Exec::serial) {
    auto scratch = make_scratch();
    for (std::size_t i = 0; i < n; ++i) body(i, scratch);
    return;
  }
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel num_threads(max_threads())
  {
    auto scratch = make_scratch();
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i), scratch);
  }
}

template <typename Correlation>
Matrix<double> wigner_rows(const Grid& grid, Correlation corr, Exec exec) {
  const std::size_t n = grid.size();
  const auto& plan = fft::complex_plan(n, fft::Direction::forward);
  const double scale = 2.0 * grid.delta_q() / grid.h();
  Matrix<double> out(n, n);
  std::vector<double> residue(n, 0.0);

  for_each_index(
      n, exec, [n] { return CBuffer(n); },
      [&](std::size_t j, CBuffer& buf) {
        std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
        const auto jj = static_cast<std::ptrdiff_t>(j);
        const auto m_max = std::min(jj, static_cast<std::ptrdiff_t>(n) - 1 - jj);
        for (std::ptrdiff_t m = -m_max; m <= m_max; ++m) {
          const auto slot = static_cast<std::size_t>((m + static_cast<std::ptrdiff_t>(n)) %
                                                     static_cast<std::ptrdiff_t>(n));
          buf[slot] = corr(jj, m);
        }
        plan.execute(buf);
        auto row = out.row(j);
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx v = buf[(k + n / 2) % n];
          row[k] = scale * v.real();
          worst = std::max(worst, std::abs(scale * v.imag()));
        }
        residue[j] = worst;
      });

  double peak = 0.0;
  for (double v : out.flat()) peak = std::max(peak, std::abs(v));
  const double worst = *std::max_element(residue.begin(), residue.end());
  // Tolerance is 1e-10 on the scale of a normalized state's bound 2/h.
  const double tolerance = 1e-10 * std::max(1.0, peak * grid.h() / 2.0);
  if (worst > tolerance) {
    std::ostringstream msg;
    msg << "wigner transform: imaginary residue " << worst << " exceeds " << tolerance;
    throw NumericalError(msg.str());
  }
  return out;
}

}  // namespace

Matrix<double> transpose(const Matrix<double>& a, Exec exec) {
  Matrix<double> out;
  transpose_into(a, out, exec);
  return out;
}

void transpose_into(const Matrix<double>& a, Matrix<double>& out, Exec exec) {
  constexpr std::size_t kBlock = 32;
  if (out.rows() != a.cols() || out.cols() != a.rows()) out = Matrix<double>(a.cols(), a.rows());
  const std::size_t blocks = (a.rows() + kBlock - 1) / kBlock;
  for_each_index(
      blocks, exec, [] { return 0; },
      [&](std::size_t b, int) {
        const std::size_t r0 = b * kBlock;
        const std::size_t r1 = std::min(a.rows(), r0 + kBlock);
        for (std::size_t c0 = 0; c0 < a.cols(); c0 += kBlock) {
          const std::size_t c1 = std::min(a.cols(), c0 + kBlock);
          for (std::size_t r = r0; r < r1; ++r) {
            for (std::size_t c = c0; c < c1; ++c) out(c, r) = a(r, c);
          }
        }
      });
}

Matrix<double> wigner_from_amplitudes(const Grid& grid, std::span<const cplx> psi, Exec exec) {
  return wigner_rows(
      grid,
      [psi](std::ptrdiff_t j, std::ptrdiff_t m) {
        return std::conj(psi[static_cast<std::size_t>(j - m)]) * psi[static_cast<std::size_t>(j + m)];
      },
      exec);
}

Matrix<double> wigner_from_density(const Grid& grid, const Matrix<cplx>& rho, Exec exec) {
  return wigner_rows(
      grid,
      [&rho](std::ptrdiff_t j, std::ptrdiff_t m) {
        return rho(static_cast<std::size_t>(j + m), static_cast<std::size_t>(j - m));
      },
      exec);
}

Matrix<double> convolve_p_circular(const Matrix<double>& a, const Matrix<double>& b, double dp,
                                   Exec exec) {
  const std::size_t rows = a.rows();
  const std::size_t n = a.cols();
  const auto& plan = fft::real_plan(n);
  const double scale = dp / static_cast<double>(n);
  Matrix<double> out(rows, n);

  struct Scratch {
    RBuffer ra, rb;
    CBuffer fa, fb;
  };
  for_each_index(
      rows, exec,
      [n] { return Scratch{RBuffer(n), RBuffer(n), CBuffer(n / 2 + 1), CBuffer(n / 2 + 1)}; },
      [&](std::size_t j, Scratch& s) {
        std::copy(a.row(j).begin(), a.row(j).end(), s.ra.begin());
        std::copy(b.row(j).begin(), b.row(j).end(), s.rb.begin());
        plan.forward(s.ra, s.fa);
        plan.forward(s.rb, s.fb);
        for (std::size_t u = 0; u < s.fa.size(); ++u) s.fa[u] *= s.fb[u];
        plan.backward(s.fa, s.ra);
        auto row = out.row(j);
        for (std::size_t k = 0; k < n; ++k) row[k] = scale * s.ra[(k + n / 2) % n];
      });
  return out;
}

Matrix<double> convolve_q_linear(const Matrix<double>& a, const Matrix<double>& kernel,
                                 std::size_t origin, double dq, Exec exec) {
  const std::size_t n = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t r = kernel.rows();
  const std::size_t len = n + r - 1;
  const auto& plan = fft::real_plan(len);
  const double scale = dq / static_cast<double>(len);
  Matrix<double> out(n, cols);

  struct Scratch {
    RBuffer ra, rk;
    CBuffer fa, fk;
  };
  for_each_index(
      cols, exec,
      [len] {
        return Scratch{RBuffer(len), RBuffer(len), CBuffer(len / 2 + 1), CBuffer(len / 2 + 1)};
      },
      [&](std::size_t k, Scratch& s) {
        std::fill(s.ra.begin(), s.ra.end(), 0.0);
        std::fill(s.rk.begin(), s.rk.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) s.ra[j] = a(j, k);
        for (std::size_t i = 0; i < r; ++i) s.rk[i] = kernel(i, k);
        plan.forward(s.ra, s.fa);
        plan.forward(s.rk, s.fk);
        for (std::size_t u = 0; u < s.fa.size(); ++u) s.fa[u] *= s.fk[u];
        plan.backward(s.fa, s.ra);
        for (std::size_t j = 0; j < n; ++j) out(j, k) = scale * s.ra[j + origin];
      });
  return out;
}

Matrix<double> convolve_2d(const Matrix<double>& a, const Matrix<double>& kernel,
                           std::size_t origin, double dq, double dp, Exec exec) {
  const std::size_t n = a.rows();
  const std::size_t np = a.cols();
  const std::size_t nh = np / 2 + 1;
  const std::size_t r = kernel.rows();
  const std::size_t len = n + r - 1;
  const auto& row_plan = fft::real_plan(np);
  const auto& fwd = fft::complex_plan(len, fft::Direction::forward);
  const auto& bwd = fft::complex_plan(len, fft::Direction::backward);

  // Along p: half spectra of every row.
  auto half_spectra = [&](const Matrix<double>& m) {
    Matrix<cplx> spec(m.rows(), nh);
    struct Scratch {
      RBuffer re;
      CBuffer sp;
    };
    for_each_index(
        m.rows(), exec, [np, nh] { return Scratch{RBuffer(np), CBuffer(nh)}; },
        [&](std::size_t j, Scratch& s) {
          std::copy(m.row(j).begin(), m.row(j).end(), s.re.begin());
          row_plan.forward(s.re, s.sp);
          std::copy(s.sp.begin(), s.sp.end(), spec.row(j).begin());
        });
    return spec;
  };
  const Matrix<cplx> sa = half_spectra(a);
  const Matrix<cplx> sk = half_spectra(kernel);

  // Along q: linear convolution of each spectral column.
  Matrix<cplx> mixed(n, nh);
  struct ColScratch {
    CBuffer ca, ck;
  };
  for_each_index(
      nh, exec, [len] { return ColScratch{CBuffer(len), CBuffer(len)}; },
      [&](std::size_t u, ColScratch& s) {
        std::fill(s.ca.begin(), s.ca.end(), cplx{0.0, 0.0});
        std::fill(s.ck.begin(), s.ck.end(), cplx{0.0, 0.0});
        for (std::size_t j = 0; j < n; ++j) s.ca[j] = sa(j, u);
        for (std::size_t i = 0; i < r; ++i) s.ck[i] = sk(i, u);
        fwd.execute(s.ca);
        fwd.execute(s.ck);
        for (std::size_t i = 0; i < len; ++i) s.ca[i] *= s.ck[i];
        bwd.execute(s.ca);
        for (std::size_t j = 0; j < n; ++j) mixed(j, u) = s.ca[j + origin];
      });

  const double scale = dq * dp / (static_cast<double>(len) * static_cast<double>(np));
  Matrix<double> out(n, np);
  struct RowScratch {
    CBuffer sp;
    RBuffer re;
  };
  for_each_index(
      n, exec, [np, nh] { return RowScratch{CBuffer(nh), RBuffer(np)}; },
      [&](std::size_t j, RowScratch& s) {
        std::copy(mixed.row(j).begin(), mixed.row(j).end(), s.sp.begin());
        row_plan.backward(s.sp, s.re);
        auto row = out.row(j);
        for (std::size_t k = 0; k < np; ++k) row[k] = scale * s.re[(k + np / 2) % np];
      });
  return out;
}

void moyal_rhs(const Grid& grid, const Matrix<double>& w, double mass,
               const Matrix<double>& multiplier, Matrix<double>& out, MoyalWorkspace& ws,
               Exec exec) {
  const std::size_t n = grid.size();
  const std::size_t nh = n / 2 + 1;
  const auto& plan = fft::real_plan(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  const double dkq = 2.0 * kPi / (static_cast<double>(n) * grid.delta_q());
  if (ws.velocity.size() != n) {
    ws.velocity.resize(n);
    for (std::size_t k = 0; k < n; ++k) ws.velocity[k] = grid.p(k) / mass;
  }
  if (out.rows() != n || out.cols() != n) out = Matrix<double>(n, n);

  struct Scratch {
    RBuffer re;
    CBuffer sp;
  };
  auto make = [n, nh] { return Scratch{RBuffer(n), CBuffer(nh)}; };

  // Spectral dW/dq on the transposed array, so every FFT runs on a contiguous row.
  transpose_into(w, ws.wt, exec);
  for_each_index(n, exec, make, [&](std::size_t k, Scratch& s) {
    auto row = ws.wt.row(k);
    std::copy(row.begin(), row.end(), s.re.begin());
    plan.forward(s.re, s.sp);
    for (std::size_t u = 0; u < nh; ++u) {
      const double f = dkq * static_cast<double>(u) * inv_n;
      s.sp[u] = cplx{-f * s.sp[u].imag(), f * s.sp[u].real()};
    }
    s.sp[nh - 1] = 0.0;
    plan.backward(s.sp, s.re);
    std::copy(s.re.begin(), s.re.end(), row.begin());
  });
  transpose_into(ws.wt, ws.dwdq, exec);

  for_each_index(n, exec, make, [&](std::size_t j, Scratch& s) {
    std::copy(w.row(j).begin(), w.row(j).end(), s.re.begin());
    plan.forward(s.re, s.sp);
    const auto mult = multiplier.row(j);
    for (std::size_t u = 0; u < nh; ++u) {
      const double f = mult[u] * inv_n;
      s.sp[u] = cplx{-f * s.sp[u].imag(), f * s.sp[u].real()};
    }
    s.sp[nh - 1] = 0.0;
    plan.backward(s.sp, s.re);
    auto row = out.row(j);
    const auto dq_row = ws.dwdq.row(j);
    for (std::size_t k = 0; k < n; ++k) row[k] = s.re[k] - ws.velocity[k] * dq_row[k];
  });
}

Matrix<double> moyal_rhs(const Grid& grid, const Matrix<double>& w, double mass,
                         const Matrix<double>& multiplier, Exec exec) {
  Matrix<double> out(grid.size(), grid.size());
  MoyalWorkspace ws;
  moyal_rhs(grid, w, mass, multiplier, out, ws, exec);
  return out;
}

}  // namespace wignerlab::kernels
