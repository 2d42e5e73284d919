#include "wignerlab/wigner.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "wignerlab/error.hpp"
#include "wignerlab/fft.hpp"
#include "wignerlab/kernels.hpp"

namespace wignerlab {
namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!a.same_as(b)) throw DomainError(std::string(what) + ": grid mismatch");
}

// Rows of W resampled at q_j + delta_q/2 by a spectral half-sample shift along q.
Matrix<double> half_shift_rows(const Matrix<double>& w) {
  const std::size_t n = w.rows();
  const std::size_t nh = n / 2 + 1;
  const auto& plan = fft::real_plan(n);
  Matrix<double> out(n, w.cols());
  fft::RBuffer re(n);
  fft::CBuffer sp(nh);
  for (std::size_t k = 0; k < w.cols(); ++k) {
    for (std::size_t j = 0; j < n; ++j) re[j] = w(j, k);
    plan.forward(re, sp);
    for (std::size_t u = 0; u < nh; ++u) {
      sp[u] *= std::polar(1.0, kPi * static_cast<double>(u) / static_cast<double>(n));
    }
    sp[nh - 1] = 0.0;
    plan.backward(sp, re);
    for (std::size_t j = 0; j < n; ++j) out(j, k) = re[j] / static_cast<double>(n);
  }
  return out;
}

}  // namespace

WignerFunction::WignerFunction(Grid grid, Matrix<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.rows() != grid_.size() || values_.cols() != grid_.size()) {
    throw DomainError("wigner function: value matrix must be n_points x n_points");
  }
}

double WignerFunction::mass() const {
  double sum = 0.0;
  for (double v : values_.flat()) sum += v;
  return sum * grid_.delta_q() * grid_.delta_p();
}

double WignerFunction::min() const {
  return *std::min_element(values_.flat().begin(), values_.flat().end());
}

double WignerFunction::max() const {
  return *std::max_element(values_.flat().begin(), values_.flat().end());
}

DensityMatrix::DensityMatrix(Grid grid, Matrix<cplx> entries)
    : grid_(grid), entries_(std::move(entries)) {
  const std::size_t n = grid_.size();
  if (entries_.rows() != n || entries_.cols() != n) {
    throw DomainError("density matrix: entries must be n_points x n_points");
  }
  double worst = 0.0;
  cplx trace{0.0, 0.0};
  for (std::size_t a = 0; a < n; ++a) {
    trace += entries_(a, a);
    for (std::size_t b = a; b < n; ++b) {
      worst = std::max(worst, std::abs(entries_(a, b) - std::conj(entries_(b, a))));
    }
  }
  if (worst > 1e-12) {
    std::ostringstream msg;
    msg << "density matrix: not Hermitian (max deviation " << worst << ")";
    throw DomainError(msg.str());
  }
  const double tr = trace.real() * grid_.delta_q();
  if (std::abs(tr - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "density matrix: trace " << tr << " differs from 1";
    throw DomainError(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const WaveFunction& psi) {
  return mixture({{1.0, psi}});
}

DensityMatrix DensityMatrix::mixture(
    const std::vector<std::pair<double, WaveFunction>>& components) {
  if (components.empty()) throw DomainError("density matrix: empty mixture");
  const Grid& g = components.front().second.grid();
  const std::size_t n = g.size();
  Matrix<cplx> rho(n, n);
  for (const auto& [weight, state] : components) {
    if (!(weight >= 0.0)) throw DomainError("density matrix: negative mixture weight");
    require_same_grid(g, state.grid(), "density matrix");
    const WaveFunction psi = state.representation() == Representation::position
                                 ? state
                                 : inverse_fourier_transform(state);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) rho(a, b) += weight * psi[a] * std::conj(psi[b]);
    }
  }
  // Enforce exact hermiticity lost to rounding.
  for (std::size_t a = 0; a < n; ++a) {
    rho(a, a) = rho(a, a).real();
    for (std::size_t b = a + 1; b < n; ++b) rho(b, a) = std::conj(rho(a, b));
  }
  return DensityMatrix(g, std::move(rho));
}

double DensityMatrix::min_eigenvalue() const {
  const auto n = static_cast<Eigen::Index>(grid_.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      m(a, b) = entries_(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) *
                grid_.delta_q();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

WignerFunction wdf_from_wavefunction(const WaveFunction& psi, Exec exec) {
  if (psi.representation() != Representation::position) {
    throw DomainError("wdf_from_wavefunction: input must be in position representation");
  }
  const double n2 = psi.norm_squared();
  if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
    std::ostringstream msg;
    msg << "wdf_from_wavefunction: input not normalized (norm^2 = " << n2 << ")";
    throw DomainError(msg.str());
  }
  return WignerFunction(psi.grid(),
                        kernels::wigner_from_amplitudes(psi.grid(), psi.amplitudes(), exec));
}

WignerFunction wdf_unnormalized(const WaveFunction& psi, Exec exec) {
  if (psi.representation() == Representation::momentum) {
    return wdf_unnormalized(inverse_fourier_transform(psi), exec);
  }
  return WignerFunction(psi.grid(),
                        kernels::wigner_from_amplitudes(psi.grid(), psi.amplitudes(), exec));
}

WignerFunction wdf_from_density(const DensityMatrix& rho, Exec exec) {
  return WignerFunction(rho.grid(), kernels::wigner_from_density(rho.grid(), rho.entries(), exec));
}

WaveFunction recover_wavefunction(const WignerFunction& w) {
  const double pur = purity(w);
  if (pur < 1.0 - kPurityTolerance) {
    std::ostringstream msg;
    msg << "recover_wavefunction: input is not a pure state (purity " << pur << ")";
    throw DomainError(msg.str());
  }
  const Grid& g = w.grid();
  const std::size_t n = g.size();
  const std::size_t r = g.nearest_index(0.0);
  const double rho_rr = marginal_q(w)[r];
  if (!(rho_rr > 1e-12)) {
    throw DomainError("recover_wavefunction: |psi| at the reference point is below 1e-6");
  }
  const double psi_r = std::sqrt(rho_rr);

  const Matrix<double> half = half_shift_rows(w.values());
  const double dp = g.delta_p();
  std::vector<cplx> out(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto diff = static_cast<std::ptrdiff_t>(s) - static_cast<std::ptrdiff_t>(r);
    const std::size_t sum = r + s;
    // Even offsets land on lattice row (r+s)/2, odd ones on the half row below.
    const auto row = (diff % 2 == 0) ? w.values().row(sum / 2) : half.row((sum - 1) / 2);
    const double rate = kPi * static_cast<double>(diff) / static_cast<double>(n);
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      const double sk = static_cast<double>(k) - static_cast<double>(n / 2);
      acc += row[k] * std::polar(1.0, rate * sk);
    }
    out[s] = acc * dp / psi_r;
  }
  out[r] = psi_r;
  return normalize(WaveFunction(g, std::move(out), Representation::position));
}

std::vector<double> marginal_q(const WignerFunction& w) {
  const std::size_t n = w.size();
  const double dp = w.grid().delta_p();
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (double v : w.values().row(j)) sum += v;
    out[j] = sum * dp;
  }
  return out;
}

std::vector<double> marginal_p(const WignerFunction& w) {
  const std::size_t n = w.size();
  const double dq = w.grid().delta_q();
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto row = w.values().row(j);
    for (std::size_t k = 0; k < n; ++k) out[k] += row[k];
  }
  for (auto& v : out) v *= dq;
  return out;
}

double expectation(const WignerFunction& w, const std::function<double(double, double)>& symbol) {
  const Grid& g = w.grid();
  double sum = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double q = g.q(j);
    for (std::size_t k = 0; k < g.size(); ++k) sum += symbol(q, g.p(k)) * w(j, k);
  }
  return sum * g.delta_q() * g.delta_p();
}

Moments moments(const WignerFunction& w) {
  const Grid& g = w.grid();
  double m0 = 0, mq = 0, mp = 0, mqq = 0, mpp = 0, mqp = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double q = g.q(j);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double p = g.p(k);
      const double v = w(j, k);
      m0 += v;
      mq += q * v;
      mp += p * v;
      mqq += q * q * v;
      mpp += p * p * v;
      mqp += q * p * v;
    }
  }
  if (!(std::abs(m0) > 0.0)) throw DomainError("moments: distribution has zero mass");
  Moments m{};
  m.mean_q = mq / m0;
  m.mean_p = mp / m0;
  m.var_q = mqq / m0 - m.mean_q * m.mean_q;
  m.var_p = mpp / m0 - m.mean_p * m.mean_p;
  m.cov_qp = mqp / m0 - m.mean_q * m.mean_p;
  return m;
}

double uncertainty_product(const WignerFunction& w) {
  const Moments m = moments(w);
  if (m.var_q < 0.0 || m.var_p < 0.0) {
    std::ostringstream msg;
    msg << "uncertainty_product: negative variance (var_q " << m.var_q << ", var_p " << m.var_p
        << "); input is not a physical state";
    throw DomainError(msg.str());
  }
  return std::sqrt(m.var_q * m.var_p);
}

double overlap_probability(const WignerFunction& a, const WignerFunction& b) {
  require_same_grid(a.grid(), b.grid(), "overlap_probability");
  const auto fa = a.values().flat();
  const auto fb = b.values().flat();
  double sum = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) sum += fa[i] * fb[i];
  const Grid& g = a.grid();
  return g.h() * sum * g.delta_q() * g.delta_p();
}

double purity(const WignerFunction& w) { return overlap_probability(w, w); }

WignerFunction reflect(const WignerFunction& w) {
  const Grid& g = w.grid();
  const auto origin = g.origin_index();
  if (!origin) throw DomainError("reflect: q = 0 is not a lattice point");
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  const auto o = static_cast<std::ptrdiff_t>(*origin);
  Matrix<double> out(g.size(), g.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const std::ptrdiff_t src = 2 * o - j;
    if (src < 0 || src >= n) continue;
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      out(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) =
          w(static_cast<std::size_t>(src), static_cast<std::size_t>((n - k) % n));
    }
  }
  return WignerFunction(g, std::move(out));
}

WignerFunction translate(const WignerFunction& w, std::ptrdiff_t shift_q, std::ptrdiff_t shift_p) {
  const Grid& g = w.grid();
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  Matrix<double> out(g.size(), g.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const std::ptrdiff_t src = j - shift_q;
    if (src < 0 || src >= n) continue;
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const std::ptrdiff_t sk = ((k - shift_p) % n + n) % n;
      out(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) =
          w(static_cast<std::size_t>(src), static_cast<std::size_t>(sk));
    }
  }
  return WignerFunction(g, std::move(out));
}

}  // namespace wignerlab
