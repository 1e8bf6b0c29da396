#pragma once

#include "copfdr/copula.hpp"
#include "copfdr/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace copfdr {

/// Problem dimensions and Monte Carlo sizes shared by the simulation and
/// bound routines.
struct SimulationConfig {
  std::size_t m = 20;
  std::size_t m0 = 16;
  double q = 0.05;
  std::size_t replications = 100000;
  std::size_t mc_draws = 100000;
  std::uint64_t seed = 1;
  bool dirac_uniform = true;

  /// Throws std::invalid_argument unless 1 <= m, m0 <= m and 0 < q < 1.
  void validate() const;
};

struct StepUpResult {
  std::size_t k = 0;                  ///< number of rejections
  std::vector<std::size_t> rejected;  ///< 0-based input indices, ascending
};

/// Benjamini-Hochberg linear step-up test: k = max{i : p_(i) <= i q / m}
/// (0 if no such i); rejects the k smallest p-values. Ties in p are ordered by
/// input index. Throws std::invalid_argument for an empty vector, q outside
/// (0, 1), or p-values outside [0, 1].
StepUpResult linear_step_up(std::span<const double> p, double q);

struct TestOutcome {
  std::size_t k = 0;
  std::vector<std::size_t> rejected;
  std::size_t false_rejections = 0;  ///< V: rejected true nulls

  std::size_t total_rejections() const noexcept { return rejected.size(); }  ///< R
};

TestOutcome lsu_reject(const PValueSample& sample, double q);

/// False discovery proportion V / max(R, 1).
double fdp(const TestOutcome& outcome) noexcept;
double fdp(std::size_t false_rejections, std::size_t rejections) noexcept;

struct FdrEstimate {
  double mean_fdp = 0.0;
  double sd_fdp = 0.0;     ///< sample sd, divisor replications - 1
  double std_error = 0.0;  ///< sd_fdp / sqrt(replications)
  std::size_t replications = 0;
};

/// Monte Carlo FDR of the step-up test: replication r draws a p-value vector
/// from `base.substream(r)`, so the estimate is reproducible and independent
/// of the worker count.
FdrEstimate simulate_fdr(const CopulaModel& model, const SimulationConfig& cfg,
                         const RandomStream& base);
FdrEstimate simulate_fdr(const CopulaModel& model, const SimulationConfig& cfg);

}  // namespace copfdr
