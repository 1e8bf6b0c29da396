#include "copfdr/kernels/kernels.hpp"

#include <array>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace copfdr::kernels {
namespace {

using Pascal = std::array<std::array<double, kMaxOrder + 1>, kMaxOrder + 1>;

const Pascal& pascal() {
  static const Pascal table = [] {
    Pascal t{};
    for (std::size_t n = 0; n <= kMaxOrder; ++n) {
      t[n][0] = 1.0;
      for (std::size_t k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0.0);
    }
    return t;
  }();
  return table;
}

Isa initial_isa() noexcept {
  const char* env = std::getenv("COPFDR_ISA");
  if (env != nullptr && std::string_view(env) == "scalar") return Isa::Scalar;
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

Isa detected_isa() noexcept {
#if defined(COPFDR_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) {
    throw std::runtime_error("AVX2 kernels are not available on this CPU");
  }
  active().store(isa, std::memory_order_relaxed);
}

double binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n || n > kMaxOrder) return 0.0;
  return pascal()[n][k];
}

void bolshev_prefix_family(const double* thresholds, std::size_t n, std::size_t lanes,
                           double* out, double* work) {
#if defined(COPFDR_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) {
    bolshev_prefix_family_avx2(thresholds, n, lanes, out, work);
    return;
  }
#endif
  bolshev_prefix_family_scalar(thresholds, n, lanes, out, work);
}

std::int64_t concordance(const double* x, const double* y, std::size_t n) {
#if defined(COPFDR_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return concordance_avx2(x, y, n);
#endif
  return concordance_scalar(x, y, n);
}

}  // namespace copfdr::kernels
