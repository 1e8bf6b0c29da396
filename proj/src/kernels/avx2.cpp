// Compiled with -mavx2 only; reached through runtime dispatch.

#include "copfdr/kernels/kernels.hpp"

#include "lane.hpp"

#include <immintrin.h>

namespace copfdr::kernels {
namespace {

constexpr std::size_t kWidth = 4;

struct KahanVec {
  __m256d sum = _mm256_setzero_pd();
  __m256d carry = _mm256_setzero_pd();
  void add(__m256d term) noexcept {
    const __m256d y = _mm256_sub_pd(term, carry);
    const __m256d t = _mm256_add_pd(sum, y);
    carry = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
    sum = t;
  }
};

// Four lanes; work holds (n + 1 + n(n+1)/2) vectors.
void bolshev_group(const double* a, std::size_t lanes, std::size_t n, double* out,
                   double* work) {
  double* suffix = work;
  double* pw = work + (n + 1) * kWidth;
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d base = _mm256_loadu_pd(a + i * lanes);
    double* row = pw + detail::tri_offset(i) * kWidth;
    __m256d p = base;
    _mm256_storeu_pd(row, p);
    for (std::size_t e = 1; e <= i; ++e) {
      p = _mm256_mul_pd(p, base);
      _mm256_storeu_pd(row + e * kWidth, p);
    }
  }
  const __m256d one = _mm256_set1_pd(1.0);
  _mm256_storeu_pd(suffix, one);
  for (std::size_t len = 1; len < n; ++len) {
    const std::size_t start = n - len;
    KahanVec acc;
    for (std::size_t j = 1; j <= len; ++j) {
      const std::size_t i = start + j - 1;
      const __m256d c = _mm256_set1_pd(binomial(len, j));
      const __m256d pow_ij = _mm256_loadu_pd(pw + (detail::tri_offset(i) + (j - 1)) * kWidth);
      const __m256d tail = _mm256_loadu_pd(suffix + (len - j) * kWidth);
      acc.add(_mm256_mul_pd(_mm256_mul_pd(c, pow_ij), tail));
    }
    _mm256_storeu_pd(suffix + len * kWidth, _mm256_sub_pd(one, acc.sum));
  }
  KahanVec acc;
  _mm256_storeu_pd(out + n * lanes, one);
  for (std::size_t j = n; j >= 1; --j) {
    const __m256d c = _mm256_set1_pd(binomial(n, j));
    const __m256d pow_jj = _mm256_loadu_pd(pw + (detail::tri_offset(j - 1) + (j - 1)) * kWidth);
    const __m256d tail = _mm256_loadu_pd(suffix + (n - j) * kWidth);
    acc.add(_mm256_mul_pd(_mm256_mul_pd(c, pow_jj), tail));
    _mm256_storeu_pd(out + (j - 1) * lanes, _mm256_sub_pd(one, acc.sum));
  }
}

}  // namespace

void bolshev_prefix_family_avx2(const double* thresholds, std::size_t n, std::size_t lanes,
                                double* out, double* work) {
  const std::size_t per_lane = bolshev_work_per_lane(n);
  std::size_t l = 0;
  for (; l + kWidth <= lanes; l += kWidth) {
    bolshev_group(thresholds + l, lanes, n, out + l, work + l * per_lane);
  }
  for (; l < lanes; ++l) {
    detail::bolshev_lane(thresholds + l, lanes, n, out + l, lanes, work + l * per_lane);
  }
}

std::int64_t concordance_avx2(const double* x, const double* y, std::size_t n) {
  std::int64_t total = 0;
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t a = 0; a + 1 < n; ++a) {
    const __m256d xa = _mm256_set1_pd(x[a]);
    const __m256d ya = _mm256_set1_pd(y[a]);
    __m256i conc = _mm256_setzero_si256();
    __m256i disc = _mm256_setzero_si256();
    std::size_t b = a + 1;
    for (; b + kWidth <= n; b += kWidth) {
      const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + b), xa);
      const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + b), ya);
      const __m256d gx = _mm256_cmp_pd(dx, zero, _CMP_GT_OQ);
      const __m256d lx = _mm256_cmp_pd(dx, zero, _CMP_LT_OQ);
      const __m256d gy = _mm256_cmp_pd(dy, zero, _CMP_GT_OQ);
      const __m256d ly = _mm256_cmp_pd(dy, zero, _CMP_LT_OQ);
      const __m256d c = _mm256_or_pd(_mm256_and_pd(gx, gy), _mm256_and_pd(lx, ly));
      const __m256d d = _mm256_or_pd(_mm256_and_pd(gx, ly), _mm256_and_pd(lx, gy));
      // true lanes are all-ones, i.e. -1 as int64
      conc = _mm256_sub_epi64(conc, _mm256_castpd_si256(c));
      disc = _mm256_sub_epi64(disc, _mm256_castpd_si256(d));
    }
    alignas(32) std::int64_t buf[kWidth];
    _mm256_store_si256(reinterpret_cast<__m256i*>(buf), _mm256_sub_epi64(conc, disc));
    total += buf[0] + buf[1] + buf[2] + buf[3];
    total += detail::concordance_row(x, y, a, b, n);
  }
  return total;
}

}  // namespace copfdr::kernels
