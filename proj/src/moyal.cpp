#include "wignerlab/moyal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wignerlab/diagnostics.hpp"
#include "wignerlab/error.hpp"
#include "wignerlab/fft.hpp"
#include "wignerlab/kernels.hpp"

namespace wignerlab {

void PotentialSpec::validate() const {
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw DomainError("potential: non-finite coefficient");
  }
  if (degree() > kMaxPotentialDegree) {
    throw DomainError("potential: degree " + std::to_string(degree()) + " exceeds " +
                      std::to_string(kMaxPotentialDegree));
  }
  if (!std::isfinite(mass) || !(mass > 0.0)) throw DomainError("potential: mass must be positive");
}

int PotentialSpec::degree() const {
  int d = static_cast<int>(coefficients.size()) - 1;
  while (d >= 0 && coefficients[static_cast<std::size_t>(d)] == 0.0) --d;
  return d;
}

double PotentialSpec::derivative(int order, double q) const {
  // Horner on the order-th derivative's coefficients c_k k!/(k-order)!.
  double acc = 0.0;
  for (int k = degree(); k >= order; --k) {
    double falling = 1.0;
    for (int i = 0; i < order; ++i) falling *= static_cast<double>(k - i);
    acc = acc * q + coefficients[static_cast<std::size_t>(k)] * falling;
  }
  return acc;
}

int PotentialSpec::required_series_order() const {
  const int d = degree();
  return d >= 3 ? (d - 1) / 2 : 0;
}

EvolutionConfig EvolutionConfig::for_duration(double t, double dt_max, int series_order) {
  if (!std::isfinite(t) || t < 0.0) throw DomainError("evolution: time must be non-negative");
  if (!std::isfinite(dt_max) || !(dt_max > 0.0)) throw DomainError("evolution: dt must be positive");
  EvolutionConfig cfg;
  cfg.series_order = series_order;
  cfg.n_steps = static_cast<std::size_t>(std::ceil(t / dt_max - 1e-9));
  cfg.dt = cfg.n_steps == 0 ? dt_max : t / static_cast<double>(cfg.n_steps);
  return cfg;
}

Matrix<double> moyal_multiplier(const Grid& grid, const PotentialSpec& v, int series_order) {
  v.validate();
  if (series_order < 0) throw DomainError("evolution: series_order must be >= 0");
  const int needed = v.required_series_order();
  if (series_order < needed) {
    std::ostringstream msg;
    msg << "moyal: series_order " << series_order << " truncates a degree-" << v.degree()
        << " potential that needs order " << needed;
    warn(msg.str());
  }
  const int order = std::min(series_order, needed);
  const std::size_t n = grid.size();
  const std::size_t nh = n / 2 + 1;
  const double dk = 2.0 * kPi / (static_cast<double>(n) * grid.delta_p());
  const double half_hbar = grid.hbar() / 2.0;

  std::vector<double> coef(static_cast<std::size_t>(order) + 1);
  double fact = 1.0;  // (2n+1)!
  for (int i = 0; i <= order; ++i) {
    if (i > 0) fact *= static_cast<double>((2 * i) * (2 * i + 1));
    coef[static_cast<std::size_t>(i)] = std::pow(half_hbar, 2 * i) / fact;
  }

  Matrix<double> mult(n, nh);
  for (std::size_t j = 0; j < n; ++j) {
    const double q = grid.q(j);
    std::vector<double> vd(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= order; ++i) {
      vd[static_cast<std::size_t>(i)] = coef[static_cast<std::size_t>(i)] * v.derivative(2 * i + 1, q);
    }
    for (std::size_t u = 0; u + 1 < nh; ++u) {
      const double kappa = dk * static_cast<double>(u);
      const double k2 = kappa * kappa;
      double acc = 0.0;
      for (int i = order; i >= 0; --i) acc = acc * k2 + vd[static_cast<std::size_t>(i)];
      mult(j, u) = acc * kappa;
    }
  }
  return mult;
}

Matrix<double> moyal_rhs(const WignerFunction& w, const PotentialSpec& v, int series_order,
                         Exec exec) {
  const Matrix<double> mult = moyal_multiplier(w.grid(), v, series_order);
  return kernels::moyal_rhs(w.grid(), w.values(), v.mass, mult, exec);
}

namespace {

double limit_from_multiplier(const Grid& grid, const Matrix<double>& mult, double mass) {
  const std::size_t n = grid.size();
  const double dk = 2.0 * kPi / (static_cast<double>(n) * grid.delta_p());
  double f_eff = 0.0;
  for (std::size_t j = 0; j < mult.rows(); ++j) {
    for (std::size_t u = 1; u < mult.cols(); ++u) {
      f_eff = std::max(f_eff, std::abs(mult(j, u)) / (dk * static_cast<double>(u)));
    }
  }
  const double p_max = std::abs(grid.p_min());
  double limit = mass * grid.delta_q() / p_max;
  if (f_eff > 0.0) limit = std::min(limit, grid.delta_p() / f_eff);
  return 0.5 * limit;
}

void axpy(Matrix<double>& out, const Matrix<double>& x, double a, const Matrix<double>& y) {
  auto o = out.flat();
  auto xs = x.flat();
  auto ys = y.flat();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = xs[i] + a * ys[i];
}

}  // namespace

double stability_limit(const Grid& grid, const PotentialSpec& v, int series_order) {
  return limit_from_multiplier(grid, moyal_multiplier(grid, v, series_order), v.mass);
}

WignerFunction propagate(const WignerFunction& w, const PotentialSpec& v,
                         const EvolutionConfig& cfg, Exec exec, const Observer& observer) {
  if (cfg.n_steps == 0) return w;
  const Grid& g = w.grid();
  const Matrix<double> mult = moyal_multiplier(g, v, cfg.series_order);
  const double limit = limit_from_multiplier(g, mult, v.mass);
  if (!(cfg.dt > 0.0) || cfg.dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "evolution: dt = " << cfg.dt << " exceeds the stability limit " << limit
        << " for this grid and potential";
    throw DomainError(msg.str());
  }

  const double mass0 = w.mass();
  const double bound = 1.01 * (2.0 / g.h()) * std::max(1.0, std::abs(mass0));
  const double dt = cfg.dt;
  kernels::MoyalWorkspace ws;
  auto rhs = [&](const Matrix<double>& x, Matrix<double>& out) {
    kernels::moyal_rhs(g, x, v.mass, mult, out, ws, exec);
  };

  Matrix<double> cur = w.values();
  const std::size_t n = g.size();
  Matrix<double> tmp(n, n), k1(n, n), k2(n, n), k3(n, n), k4(n, n);
  for (std::size_t step = 1; step <= cfg.n_steps; ++step) {
    rhs(cur, k1);
    axpy(tmp, cur, 0.5 * dt, k1);
    rhs(tmp, k2);
    axpy(tmp, cur, 0.5 * dt, k2);
    rhs(tmp, k3);
    axpy(tmp, cur, dt, k3);
    rhs(tmp, k4);

    auto c = cur.flat();
    double sum = 0.0;
    double peak = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] += dt / 6.0 * (k1.flat()[i] + 2.0 * k2.flat()[i] + 2.0 * k3.flat()[i] + k4.flat()[i]);
      sum += c[i];
      peak = std::max(peak, std::abs(c[i]));
      finite = finite && std::isfinite(c[i]);
    }
    const double mass = sum * g.delta_q() * g.delta_p();
    if (!finite || std::abs(mass - mass0) > 1e-4 || peak > bound) {
      std::ostringstream msg;
      msg << "evolution: unstable at step " << step << " (mass " << mass << ", max |W| " << peak
          << ")";
      throw NumericalError(msg.str());
    }
    if (observer.callback && observer.every > 0 &&
        (step % observer.every == 0 || step == cfg.n_steps)) {
      observer.callback(step, WignerFunction(g, cur));
    }
  }
  return WignerFunction(g, std::move(cur));
}

WaveFunction split_step_schrodinger(const WaveFunction& psi, const PotentialSpec& v,
                                    const EvolutionConfig& cfg) {
  v.validate();
  if (psi.representation() != Representation::position) {
    throw DomainError("split_step: input must be in position representation");
  }
  if (std::abs(psi.norm_squared() - 1.0) > kNormTolerance) {
    throw DomainError("split_step: input must be normalized");
  }
  const Grid& g = psi.grid();
  const std::size_t n = g.size();
  const double dt = cfg.dt;
  const double hb = g.hbar();

  std::vector<cplx> half_v(n), kinetic(n);
  for (std::size_t j = 0; j < n; ++j) half_v[j] = std::polar(1.0, -0.5 * v.value(g.q(j)) * dt / hb);
  const double dk = 2.0 * kPi / (static_cast<double>(n) * g.delta_q());
  for (std::size_t u = 0; u < n; ++u) {
    const double idx = u < n / 2 ? static_cast<double>(u)
                                 : static_cast<double>(u) - static_cast<double>(n);
    const double k = dk * idx;
    kinetic[u] = std::polar(1.0, -0.5 * hb * k * k * dt / v.mass) / static_cast<double>(n);
  }

  const auto& fwd = fft::complex_plan(n, fft::Direction::forward);
  const auto& bwd = fft::complex_plan(n, fft::Direction::backward);
  fft::CBuffer buf(psi.amplitudes().begin(), psi.amplitudes().end());
  for (std::size_t step = 1; step <= cfg.n_steps; ++step) {
    for (std::size_t j = 0; j < n; ++j) buf[j] *= half_v[j];
    fwd.execute(buf);
    for (std::size_t u = 0; u < n; ++u) buf[u] *= kinetic[u];
    bwd.execute(buf);
    for (std::size_t j = 0; j < n; ++j) buf[j] *= half_v[j];
    const double edge = std::max(std::abs(buf.front()), std::abs(buf.back()));
    if (edge > kSplitStepEdgeLimit) {
      std::ostringstream msg;
      msg << "split_step: edge amplitude " << edge << " exceeds " << kSplitStepEdgeLimit
          << " at step " << step << "; enlarge the grid";
      throw NumericalError(msg.str());
    }
  }
  return WaveFunction(g, std::vector<cplx>(buf.begin(), buf.end()));
}

}  // namespace wignerlab
