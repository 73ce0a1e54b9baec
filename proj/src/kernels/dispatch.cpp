#include "pgcc/kernels.hpp"

#include <atomic>
#include <cstdlib>

#include "kernels_impl.hpp"

namespace pgcc::kernels {
namespace {

constexpr KernelTable kScalar{
    "scalar",
    detail::dot_scalar,
    detail::squared_distance_scalar,
    detail::axpy_scalar,
    detail::rotate_scalar,
    detail::column_sums_scalar,
    detail::sum_squared_deviation_scalar,
    detail::neighbor_difference_sum_scalar,
    detail::neighbor_squared_distance_sum_scalar,
};

#if PGCC_HAVE_AVX2_BUILD
constexpr KernelTable kAvx2{
    "avx2",
    detail::dot_avx2,
    detail::squared_distance_avx2,
    detail::axpy_avx2,
    detail::rotate_avx2,
    detail::column_sums_avx2,
    detail::sum_squared_deviation_avx2,
    detail::neighbor_difference_sum_avx2,
    detail::neighbor_squared_distance_sum_avx2,
};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}
#endif

const KernelTable* best_available() {
  if (const KernelTable* t = avx2_table()) return t;
  return &kScalar;
}

const KernelTable* initial_selection() {
  const char* env = std::getenv("PGCC_KERNELS");
  if (env != nullptr) {
    const std::string_view name{env};
    if (name == "scalar") return &kScalar;
    if (name == "avx2" && avx2_table() != nullptr) return avx2_table();
  }
  return best_available();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_selection()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if PGCC_HAVE_AVX2_BUILD
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelTable* next = nullptr;
  if (name == "scalar") {
    next = &kScalar;
  } else if (name == "avx2") {
    next = avx2_table();
  } else if (name == "auto") {
    next = best_available();
  }
  if (next == nullptr) return false;
  current().store(next, std::memory_order_release);
  return true;
}

}  // namespace pgcc::kernels
