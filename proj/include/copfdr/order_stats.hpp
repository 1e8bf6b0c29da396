#pragma once

#include "copfdr/copula.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace copfdr {

/// Lower thresholds 0 <= a_1 <= ... <= a_n <= 1 for uniform order statistics.
class ThresholdVector {
public:
  ThresholdVector() = default;
  /// Throws std::invalid_argument unless the values are sorted and in [0, 1],
  /// std::length_error beyond kernels::kMaxOrder entries.
  explicit ThresholdVector(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

private:
  std::vector<double> values_;
};

/// P(a_1 <= U_(1), ..., a_n <= U_(n)) for the order statistics of n iid
/// Uni[0,1] variables, by Bolshev's recursion
///   P_n(a_1..a_n) = 1 - sum_{j=1}^n C(n,j) a_j^j P_{n-j}(a_{j+1}..a_n),
/// evaluated bottom-up over suffixes with compensated summation.
/// n = 0 gives 1. Throws std::runtime_error if round-off pushes the result
/// more than 1e-10 outside [0, 1].
double bolshev(const ThresholdVector& a);

/// Thresholds of G_k(z) under a Dirac-uniform configuration: n = m0 - 1 and
///   a_j = 0                                   for j < k - m1,
///   a_j = exp(-z psi^{-1}(q_{j+m1+1}))        for j >= k - m1,
/// with q_i = i q / m and m1 = m - m0. Requires m1 + 1 <= k <= m - 1 and z > 0.
ThresholdVector dirac_uniform_thresholds(const CopulaModel& model, std::size_t m,
                                         std::size_t m0, double q, std::size_t k, double z);

/// Same, with z given by its logarithm.
ThresholdVector dirac_uniform_thresholds_log_z(const CopulaModel& model, std::size_t m,
                                               std::size_t m0, double q, std::size_t k,
                                               double log_z);

}  // namespace copfdr
