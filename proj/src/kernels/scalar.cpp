#include "copfdr/kernels/kernels.hpp"

#include "lane.hpp"

namespace copfdr::kernels {

void bolshev_prefix_family_scalar(const double* thresholds, std::size_t n, std::size_t lanes,
                                  double* out, double* work) {
  const std::size_t per_lane = bolshev_work_per_lane(n);
  for (std::size_t l = 0; l < lanes; ++l) {
    detail::bolshev_lane(thresholds + l, lanes, n, out + l, lanes, work + l * per_lane);
  }
}

std::int64_t concordance_scalar(const double* x, const double* y, std::size_t n) {
  std::int64_t total = 0;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    total += detail::concordance_row(x, y, a, a + 1, n);
  }
  return total;
}

}  // namespace copfdr::kernels
