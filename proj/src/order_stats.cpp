#include "copfdr/order_stats.hpp"

#include "copfdr/kernels/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace copfdr {

ThresholdVector::ThresholdVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() > kernels::kMaxOrder) {
    throw std::length_error("Bolshev recursion supports at most " +
                            std::to_string(kernels::kMaxOrder) + " thresholds");
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double a = values_[i];
    if (!(a >= 0.0 && a <= 1.0)) {
      throw std::invalid_argument("threshold " + std::to_string(i + 1) + " outside [0, 1]");
    }
    if (a < prev) {
      throw std::invalid_argument("thresholds must be non-decreasing (entry " +
                                  std::to_string(i + 1) + ")");
    }
    prev = a;
  }
}

double bolshev(const ThresholdVector& thresholds) {
  const auto a = thresholds.values();
  const std::size_t n = a.size();
  // suffix[len] = P_len(a_{n-len+1}, ..., a_n)
  std::vector<double> suffix(n + 1);
  suffix[0] = 1.0;
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t start = n - len;
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t j = 1; j <= len; ++j) {
      const double base = a[start + j - 1];
      if (base == 0.0) continue;
      const double term = kernels::binomial(len, j) *
                          std::pow(base, static_cast<double>(j)) * suffix[len - j];
      const double y = term - carry;
      const double t = sum + y;
      carry = (t - sum) - y;
      sum = t;
    }
    suffix[len] = 1.0 - sum;
  }
  const double p = suffix[n];
  if (!(p >= -1e-10 && p <= 1.0 + 1e-10)) {
    throw std::runtime_error("Bolshev recursion lost precision (result " + std::to_string(p) +
                             ")");
  }
  return p;
}

ThresholdVector dirac_uniform_thresholds_log_z(const CopulaModel& model, std::size_t m,
                                               std::size_t m0, double q, std::size_t k,
                                               double log_z) {
  if (m0 > m || m0 == 0) throw std::invalid_argument("dirac_uniform_thresholds: need 1 <= m0 <= m");
  const std::size_t m1 = m - m0;
  if (k < m1 + 1 || k + 1 > m) {
    throw std::invalid_argument("dirac_uniform_thresholds: k must lie in [m1 + 1, m - 1]");
  }
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0, 1)");
  const std::size_t n = m0 - 1;
  std::vector<double> a(n, 0.0);
  for (std::size_t j = k - m1; j <= n; ++j) {
    const double qi = static_cast<double>(j + m1 + 1) * q / static_cast<double>(m);
    a[j - 1] = std::exp(-std::exp(log_z + model.log_psi_inv(qi)));
  }
  return ThresholdVector(std::move(a));
}

ThresholdVector dirac_uniform_thresholds(const CopulaModel& model, std::size_t m,
                                         std::size_t m0, double q, std::size_t k, double z) {
  if (!(z > 0.0)) throw std::invalid_argument("dirac_uniform_thresholds: z must be > 0");
  return dirac_uniform_thresholds_log_z(model, m, m0, q, k, std::log(z));
}

}  // namespace copfdr
