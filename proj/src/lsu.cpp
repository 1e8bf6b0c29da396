#include "copfdr/lsu.hpp"

#include "copfdr/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace copfdr {

void SimulationConfig::validate() const {
  if (m == 0) throw std::invalid_argument("m must be >= 1");
  if (m0 > m) throw std::invalid_argument("m0 must not exceed m");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0, 1)");
}

StepUpResult linear_step_up(std::span<const double> p, double q) {
  if (p.empty()) throw std::invalid_argument("step-up test needs at least one p-value");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0, 1)");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
      throw std::invalid_argument("p-value " + std::to_string(i + 1) + " outside [0, 1]");
    }
  }
  const std::size_t m = p.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  StepUpResult result;
  for (std::size_t i = m; i >= 1; --i) {
    const double critical = static_cast<double>(i) * q / static_cast<double>(m);
    if (p[order[i - 1]] <= critical) {
      result.k = i;
      break;
    }
  }
  result.rejected.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(result.k));
  std::sort(result.rejected.begin(), result.rejected.end());
  return result;
}

TestOutcome lsu_reject(const PValueSample& sample, double q) {
  if (sample.null_mask.size() != sample.values.size()) {
    throw std::invalid_argument("null mask and p-values differ in length");
  }
  StepUpResult step = linear_step_up(sample.values, q);
  TestOutcome outcome;
  outcome.k = step.k;
  outcome.rejected = std::move(step.rejected);
  outcome.false_rejections = static_cast<std::size_t>(
      std::count_if(outcome.rejected.begin(), outcome.rejected.end(),
                    [&](std::size_t i) { return sample.null_mask[i]; }));
  return outcome;
}

double fdp(std::size_t false_rejections, std::size_t rejections) noexcept {
  return static_cast<double>(false_rejections) /
         static_cast<double>(std::max<std::size_t>(rejections, 1));
}

double fdp(const TestOutcome& outcome) noexcept {
  return fdp(outcome.false_rejections, outcome.total_rejections());
}

FdrEstimate simulate_fdr(const CopulaModel& model, const SimulationConfig& cfg,
                         const RandomStream& base) {
  cfg.validate();
  if (cfg.replications < 2) throw std::invalid_argument("simulate_fdr needs >= 2 replications");
  std::vector<double> fdps(cfg.replications);
  parallel_for(cfg.replications, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      RandomStream stream = base.substream(r);
      const PValueSample sample =
          sample_pvalues(model, cfg.m, cfg.m0, cfg.dirac_uniform, stream);
      fdps[r] = fdp(lsu_reject(sample, cfg.q));
    }
  });
  const double n = static_cast<double>(cfg.replications);
  double sum = 0.0;
  for (double v : fdps) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : fdps) ss += (v - mean) * (v - mean);
  FdrEstimate est;
  est.mean_fdp = mean;
  est.sd_fdp = std::sqrt(ss / (n - 1.0));
  est.std_error = est.sd_fdp / std::sqrt(n);
  est.replications = cfg.replications;
  return est;
}

FdrEstimate simulate_fdr(const CopulaModel& model, const SimulationConfig& cfg) {
  return simulate_fdr(model, cfg, RandomStream(cfg.seed));
}

}  // namespace copfdr
