#include "epm/simd_backend.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "backend_impl.hpp"

namespace epm {

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend detect_backend() { return avx2_available() ? Backend::Avx2 : Backend::Scalar; }

namespace {
std::atomic<int> g_backend{-1};
}

Backend active_backend() {
  int b = g_backend.load(std::memory_order_relaxed);
  if (b < 0) {
    b = static_cast<int>(detect_backend());
    g_backend.store(b, std::memory_order_relaxed);
  }
  return static_cast<Backend>(b);
}

void force_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available())
    throw std::runtime_error("AVX2 backend requested but CPU lacks AVX2");
  g_backend.store(static_cast<int>(b), std::memory_order_relaxed);
}

std::string backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

const BatchOps& batch_ops(Backend backend) {
  return backend == Backend::Avx2 ? avx2_batch_ops() : scalar_batch_ops();
}

const BatchOps& batch_ops() { return batch_ops(active_backend()); }

}  // namespace epm
