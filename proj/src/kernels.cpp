#include "nlslab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace nls::kern {

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Kernels* pick() {
  if (const char* env = std::getenv("NLSLAB_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_kernels();
    if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return &avx2_kernels();
  }
  return avx2_supported() ? &avx2_kernels() : &scalar_kernels();
}

std::atomic<const Kernels*> g_active{nullptr};

}  // namespace

const Kernels& active() {
  const Kernels* k = g_active.load(std::memory_order_acquire);
  if (!k) {
    k = pick();
    g_active.store(k, std::memory_order_release);
  }
  return *k;
}

void set_active(const Kernels& k) { g_active.store(&k, std::memory_order_release); }

}  // namespace nls::kern
