#include "cogedit/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace cogedit::kernels {

extern const Ops kScalarOps;
#if defined(COGEDIT_HAVE_AVX2)
extern const Ops kAvx2Ops;
#endif

namespace {

bool cpu_has_avx2() {
#if defined(COGEDIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

struct State {
  const Ops* ops;
  Backend backend;
};

State detect() {
  Backend pick = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("COGEDIT_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) pick = Backend::scalar;
    else if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) pick = Backend::avx2;
  }
#if defined(COGEDIT_HAVE_AVX2)
  if (pick == Backend::avx2) return {&kAvx2Ops, Backend::avx2};
#endif
  return {&kScalarOps, Backend::scalar};
}

std::atomic<const Ops*>& ops_slot() {
  static std::atomic<const Ops*> slot{nullptr};
  return slot;
}
std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{Backend::scalar};
  return slot;
}

void ensure_init() {
  if (ops_slot().load(std::memory_order_acquire)) return;
  State s = detect();
  backend_slot().store(s.backend, std::memory_order_relaxed);
  ops_slot().store(s.ops, std::memory_order_release);
}

} // namespace

const Ops* ops_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &kScalarOps;
    case Backend::avx2:
#if defined(COGEDIT_HAVE_AVX2)
      if (cpu_has_avx2()) return &kAvx2Ops;
#endif
      return nullptr;
  }
  return nullptr;
}

const Ops& current_ops() {
  ensure_init();
  return *ops_slot().load(std::memory_order_acquire);
}

Backend active_backend() {
  ensure_init();
  return backend_slot().load(std::memory_order_relaxed);
}

bool backend_available(Backend b) { return ops_for(b) != nullptr; }

bool set_backend(Backend b) {
  const Ops* ops = ops_for(b);
  if (!ops) return false;
  backend_slot().store(b, std::memory_order_relaxed);
  ops_slot().store(ops, std::memory_order_release);
  return true;
}

} // namespace cogedit::kernels
