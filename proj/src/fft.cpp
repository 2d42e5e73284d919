#include "wignerlab/fft.hpp"

#include <fftw3.h>

#include <cassert>
#include <map>
#include <mutex>
#include <utility>

namespace wignerlab::fft {
namespace {

// FFTW planning is not thread-safe; execution with new-array functions is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

ComplexPlan::ComplexPlan(std::size_t n, Direction dir) : n_(n) {
  CBuffer scratch(n);
  const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(scratch.data()), as_fftw(scratch.data()),
                           sign, FFTW_ESTIMATE);
}

void ComplexPlan::execute(CBuffer& inout) const {
  assert(inout.size() == n_);
  fftw_execute_dft(static_cast<fftw_plan>(plan_), as_fftw(inout.data()), as_fftw(inout.data()));
}

RealPlan::RealPlan(std::size_t n) : n_(n) {
  RBuffer real(n);
  CBuffer half(n / 2 + 1);
  r2c_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.data(), as_fftw(half.data()), FFTW_ESTIMATE);
  c2r_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), as_fftw(half.data()), real.data(), FFTW_ESTIMATE);
}

void RealPlan::forward(RBuffer& in, CBuffer& out) const {
  assert(in.size() == n_ && out.size() == n_ / 2 + 1);
  fftw_execute_dft_r2c(static_cast<fftw_plan>(r2c_), in.data(), as_fftw(out.data()));
}

void RealPlan::backward(CBuffer& in, RBuffer& out) const {
  assert(out.size() == n_ && in.size() == n_ / 2 + 1);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(c2r_), as_fftw(in.data()), out.data());
}

// Plans live for the lifetime of the process.
const ComplexPlan& complex_plan(std::size_t n, Direction dir) {
  static std::map<std::pair<std::size_t, Direction>, std::unique_ptr<ComplexPlan>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[{n, dir}];
  if (!slot) slot = std::make_unique<ComplexPlan>(n, dir);
  return *slot;
}

const RealPlan& real_plan(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<RealPlan>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealPlan>(n);
  return *slot;
}

}  // namespace wignerlab::fft
