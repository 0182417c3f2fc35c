#include <atomic>
#include <cstdlib>
#include <string>

#include "effres/error.hpp"
#include "effres/kernels.hpp"

namespace effres::kernels {

#if !(defined(__x86_64__) || defined(_M_X64))
const KernelTable* detail::avx2_table() noexcept { return nullptr; }
#endif
#if !(defined(__aarch64__) || defined(_M_ARM64))
const KernelTable* detail::neon_table() noexcept { return nullptr; }
#endif

namespace {

const KernelTable* lookup(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return detail::scalar_table();
    case Isa::Avx2: return detail::avx2_table();
    case Isa::Neon: return detail::neon_table();
  }
  return nullptr;
}

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__) || defined(_M_ARM64)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* detect() noexcept {
  if (const char* env = std::getenv("EFFRES_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return detail::scalar_table();
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (available(isa)) return lookup(isa);
  }
  return detail::scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> selected{detect()};
  return selected;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool available(Isa isa) noexcept { return lookup(isa) != nullptr && cpu_supports(isa); }

const KernelTable& table(Isa isa) {
  if (!available(isa)) {
    throw Error(ErrorCode::InvalidArgument, "kernel variant not available: " + std::string(to_string(isa)));
  }
  return *lookup(isa);
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

void select(Isa isa) { current().store(&table(isa), std::memory_order_relaxed); }

}  // namespace effres::kernels
