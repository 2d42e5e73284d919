#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <new>
#include <vector>

namespace wignerlab::fft {

using cplx = std::complex<double>;

// FFTW's SIMD codelets require aligned buffers; plans are created on aligned
// scratch and executed on caller buffers of the same alignment.
inline constexpr std::size_t kAlignment = 64;

template <typename T>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() = default;
  template <typename U>
  AlignedAllocator(const AlignedAllocator<U>&) {}
  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{kAlignment}));
  }
  void deallocate(T* p, std::size_t) { ::operator delete(p, std::align_val_t{kAlignment}); }
  template <typename U>
  bool operator==(const AlignedAllocator<U>&) const { return true; }
};

using CBuffer = std::vector<cplx, AlignedAllocator<cplx>>;
using RBuffer = std::vector<double, AlignedAllocator<double>>;

enum class Direction { forward, backward };

/// Unnormalized complex DFT of fixed length. forward uses exp(-2 pi i jk/n),
/// backward uses exp(+2 pi i jk/n). Plans are cached and shared; execute()
/// is thread-safe.
class ComplexPlan {
 public:
  ComplexPlan(std::size_t n, Direction dir);
  std::size_t size() const { return n_; }
  void execute(CBuffer& inout) const;

 private:
  std::size_t n_;
  void* plan_;
};

/// Real-to-halfcomplex (n/2+1 outputs) and its unnormalized inverse.
class RealPlan {
 public:
  explicit RealPlan(std::size_t n);
  std::size_t size() const { return n_; }
  void forward(RBuffer& in, CBuffer& out) const;
  // Destroys the contents of `in`.
  void backward(CBuffer& in, RBuffer& out) const;

 private:
  std::size_t n_;
  void* r2c_;
  void* c2r_;
};

const ComplexPlan& complex_plan(std::size_t n, Direction dir);
const RealPlan& real_plan(std::size_t n);

}  // namespace wignerlab::fft
