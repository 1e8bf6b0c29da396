#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64, an AVX2 version. The public entry points dispatch on the CPU at
// runtime; the per-ISA symbols are exported so tests can compare them.
//
// Both variants perform the same IEEE operations in the same order (no FMA,
// the whole build uses -ffp-contract=off), so their results agree bitwise.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace copfdr::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Best ISA supported by this CPU and build.
Isa detected_isa() noexcept;

/// ISA used by the dispatching entry points. Defaults to `detected_isa()`,
/// overridable with COPFDR_ISA=scalar or `force_isa`.
Isa active_isa() noexcept;
void force_isa(Isa isa);

/// Largest threshold-vector length accepted by the Bolshev kernels.
inline constexpr std::size_t kMaxOrder = 200;

/// Binomial coefficient C(n, k) for n <= kMaxOrder, from a Pascal table built once.
double binomial(std::size_t n, std::size_t k) noexcept;

/// Doubles of workspace needed by `bolshev_prefix_family` for one lane.
constexpr std::size_t bolshev_work_per_lane(std::size_t n) noexcept {
  return (n + 1) + n * (n + 1) / 2;
}

/// Bolshev recursion for a batch of threshold vectors, one per lane, with all
/// leading-zero variants at once.
///
/// thresholds: n rows of `lanes` values, a[j * lanes + l] = a_{j+1} of lane l,
///             each lane non-decreasing in [0, 1].
/// out:        (n + 1) rows; out[s * lanes + l] is
///             P(a'_1 <= U_(1), ..., a'_n <= U_(n)) for the vector a' equal to
///             lane l's thresholds with the first s entries replaced by 0.
///             Row 0 is the plain probability, row n is 1.
/// work:       bolshev_work_per_lane(n) * lanes doubles.
///
/// Zeroing a prefix only removes terms from the outermost sum of the
/// recursion P_n = 1 - sum_j C(n,j) a_j^j P_{n-j}(a_{j+1..n}), so every row
/// reuses the same suffix probabilities.
void bolshev_prefix_family(const double* thresholds, std::size_t n, std::size_t lanes,
                           double* out, double* work);
void bolshev_prefix_family_scalar(const double* thresholds, std::size_t n,
                                  std::size_t lanes, double* out, double* work);
#if defined(COPFDR_HAVE_AVX2)
void bolshev_prefix_family_avx2(const double* thresholds, std::size_t n, std::size_t lanes,
                                double* out, double* work);
#endif

/// Sum over pairs a < b of sign(x_b - x_a) * sign(y_b - y_a)
/// (concordant minus discordant pairs; ties contribute 0).
std::int64_t concordance(const double* x, const double* y, std::size_t n);
std::int64_t concordance_scalar(const double* x, const double* y, std::size_t n);
#if defined(COPFDR_HAVE_AVX2)
std::int64_t concordance_avx2(const double* x, const double* y, std::size_t n);
#endif

}  // namespace copfdr::kernels
