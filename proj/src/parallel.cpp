#include "wignerlab/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

namespace wignerlab {
namespace {

int initial_threads() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("WIGNERLAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) n = std::min(n, cap);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return std::max(n, 1);
}

std::atomic<int>& thread_cap() {
  static std::atomic<int> cap{initial_threads()};
  return cap;
}

}  // namespace

int max_threads() { return thread_cap().load(); }

void set_max_threads(int n) { thread_cap().store(std::max(n, 1)); }

}  // namespace wignerlab
