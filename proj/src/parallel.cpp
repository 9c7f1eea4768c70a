#include "tracefn/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace tracefn {
namespace {

int initial_threads() {
  if (const char* env = std::getenv("TRACEFN_LAB_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

std::atomic<int>& threads_slot() {
  static std::atomic<int> slot{initial_threads()};
  return slot;
}

template <class T>
T tree_sum(const T* xs, std::size_t n) {
  if (n <= 16) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += xs[i];
    return s;
  }
  const std::size_t h = n / 2;
  return tree_sum(xs, h) + tree_sum(xs + h, n - h);
}

}  // namespace

int thread_count() { return threads_slot().load(); }

void set_thread_count(int n) {
  if (n < 1) throw InvalidArgument("thread count must be positive");
  threads_slot().store(n);
}

cplx pairwise_sum(std::span<const cplx> xs) { return tree_sum(xs.data(), xs.size()); }

double pairwise_sum(std::span<const double> xs) { return tree_sum(xs.data(), xs.size()); }

}  // namespace tracefn
