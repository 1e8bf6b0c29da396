#pragma once

// Single-lane reference loops shared by the scalar kernels and the
// remainder handling of the SIMD kernels.

#include "copfdr/kernels/kernels.hpp"

#include <cstddef>
#include <cstdint>

namespace copfdr::kernels::detail {

inline std::size_t tri_offset(std::size_t i) noexcept { return i * (i + 1) / 2; }

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double term) noexcept {
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

/// One lane of `bolshev_prefix_family`. Workspace: P[0..n] followed by the
/// triangular power table pw[i][e-1] = a_i^e, e = 1..i+1.
inline void bolshev_lane(const double* a, std::size_t a_stride, std::size_t n, double* out,
                         std::size_t out_stride, double* work) {
  double* suffix = work;
  double* pw = work + (n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double base = a[i * a_stride];
    double* row = pw + tri_offset(i);
    double p = base;
    row[0] = p;
    for (std::size_t e = 1; e <= i; ++e) {
      p = p * base;
      row[e] = p;
    }
  }
  // suffix[L] = P_L(a_{n-L+1}, ..., a_n)
  suffix[0] = 1.0;
  for (std::size_t len = 1; len < n; ++len) {
    const std::size_t start = n - len;
    Kahan acc;
    for (std::size_t j = 1; j <= len; ++j) {
      const std::size_t i = start + j - 1;
      acc.add(binomial(len, j) * pw[tri_offset(i) + (j - 1)] * suffix[len - j]);
    }
    suffix[len] = 1.0 - acc.sum;
  }
  Kahan acc;
  out[n * out_stride] = 1.0;
  for (std::size_t j = n; j >= 1; --j) {
    acc.add(binomial(n, j) * pw[tri_offset(j - 1) + (j - 1)] * suffix[n - j]);
    out[(j - 1) * out_stride] = 1.0 - acc.sum;
  }
}

inline std::int64_t concordance_row(const double* x, const double* y, std::size_t a,
                                    std::size_t b_begin, std::size_t n) {
  std::int64_t total = 0;
  const double xa = x[a];
  const double ya = y[a];
  for (std::size_t b = b_begin; b < n; ++b) {
    const double dx = x[b] - xa;
    const double dy = y[b] - ya;
    const int sx = (dx > 0.0) - (dx < 0.0);
    const int sy = (dy > 0.0) - (dy < 0.0);
    total += sx * sy;
  }
  return total;
}

}  // namespace copfdr::kernels::detail
