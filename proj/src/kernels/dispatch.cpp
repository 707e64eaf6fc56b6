#include <atomic>
#include <cstdlib>
#include <string_view>

#include "spinlink/kernels.hpp"

namespace spinlink::kernels {

#if defined(SPINLINK_HAVE_AVX2)
const KernelTable& avx2_kernel_table();
#endif

namespace {

bool cpu_supports_avx2() {
#if defined(SPINLINK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* select_default() {
  const KernelTable* best = avx2_kernels();
  if (const char* env = std::getenv("SPINLINK_KERNELS")) {
    const std::string_view choice(env);
    if (choice == "scalar") return &scalar_kernels();
    if (choice == "avx2" && best != nullptr) return best;
  }
  return best != nullptr ? best : &scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{select_default()};
  return slot;
}

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(SPINLINK_HAVE_AVX2)
  static const bool supported = cpu_supports_avx2();
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

void set_active(const KernelTable& table) { active_slot().store(&table, std::memory_order_release); }

}  // namespace spinlink::kernels
