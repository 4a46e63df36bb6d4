#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ynls/simd/kernels.hpp"

namespace ynls::simd {
namespace {

bool cpu_has_avx2() {
#if defined(YNLS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* detect() {
  if (const char* env = std::getenv("YNLS_ISA"); env && std::string(env) == "scalar")
    return &scalar_kernels();
  if (const KernelTable* t = kernels_for(Isa::avx2)) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

const KernelTable* kernels_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &scalar_kernels();
    case Isa::avx2:
#ifdef YNLS_HAVE_AVX2
      if (cpu_has_avx2()) return &detail::avx2_kernels();
#endif
      return nullptr;
  }
  return nullptr;
}

bool isa_available(Isa isa) { return kernels_for(isa) != nullptr; }

const KernelTable& kernels() { return *active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  const KernelTable* t = kernels_for(isa);
  if (!t) throw std::runtime_error("kernel set not available: " + std::string(isa_name(isa)));
  active().store(t, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

}  // namespace ynls::simd
