#include "copfdr/bounds.hpp"

#include "copfdr/kernels/kernels.hpp"
#include "copfdr/parallel.hpp"
#include "copfdr/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace copfdr {
namespace {

constexpr std::size_t kBlock = 256;

void check_level(std::size_t m, double q) {
  if (m < 2) throw std::invalid_argument("bounds need m >= 2");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0, 1)");
}

double critical(std::size_t i, std::size_t m, double q) {
  return static_cast<double>(i) * q / static_cast<double>(m);
}

// log(psi^{-1}(lo) - psi^{-1}(hi)) for lo < hi.
double log_psi_inv_gap(const CopulaModel& model, double lo, double hi) {
  const double l_lo = model.log_psi_inv(lo);
  const double l_hi = model.log_psi_inv(hi);
  return l_lo + special::log1m_exp(l_hi - l_lo);
}

struct SharperParts {
  double b = 0.0;
  double sd_per_draw = 0.0;
};

// Per-draw sum over k of the sharper-bound integrand, evaluated for a block of
// draws with the batched Bolshev kernel.
class SharperIntegrand {
public:
  SharperIntegrand(const CopulaModel& model, std::size_t m, std::size_t m0, double q)
      : m_(m), m1_(m - m0), n_(m0 - 1) {
    // index i - (m1 + 1) for i = m1+1..m
    log_psi_inv_.resize(m0);
    inv_q_.resize(m0);
    for (std::size_t i = m1_ + 1; i <= m; ++i) {
      const double qi = critical(i, m, q);
      log_psi_inv_[i - m1_ - 1] = model.log_psi_inv(qi);
      inv_q_[i - m1_ - 1] = 1.0 / qi;
    }
    for (std::size_t k = m1_ + 1; k + 1 <= m; ++k) {
      log_z_star_k_.push_back(log_z_star_k(model, m, q, k));
    }
    // G_k at its own z*_k, through the same kernel used for the draws
    const std::size_t ks = log_z_star_k_.size();
    std::vector<double> thresholds(n_ * ks);
    std::vector<double> out((n_ + 1) * ks);
    std::vector<double> work(kernels::bolshev_work_per_lane(n_) * ks);
    for (std::size_t c = 0; c < ks; ++c) fill_thresholds(log_z_star_k_[c], thresholds.data() + c, ks);
    kernels::bolshev_prefix_family(thresholds.data(), n_, ks, out.data(), work.data());
    g_at_star_.resize(ks);
    for (std::size_t c = 0; c < ks; ++c) g_at_star_[c] = out[c * ks + c];  // row s = k - m1 - 1 = c
  }

  std::size_t k_count() const noexcept { return log_z_star_k_.size(); }

  /// sums[d] = sum_k integrand_k(exp(log_z[d])) for d in [0, count).
  void evaluate(const double* log_z, std::size_t count, double* sums) const {
    std::vector<double> thresholds(n_ * count);
    std::vector<double> out((n_ + 1) * count);
    std::vector<double> work(kernels::bolshev_work_per_lane(n_) * count);
    std::vector<double> tail(log_psi_inv_.size());
    for (std::size_t d = 0; d < count; ++d) fill_thresholds(log_z[d], thresholds.data() + d, count);
    kernels::bolshev_prefix_family(thresholds.data(), n_, count, out.data(), work.data());
    for (std::size_t d = 0; d < count; ++d) {
      for (std::size_t t = 0; t < tail.size(); ++t) {
        tail[t] = std::exp(-std::exp(log_z[d] + log_psi_inv_[t]));
      }
      double sum = 0.0;
      for (std::size_t c = 0; c < k_count(); ++c) {
        if (log_z[d] < log_z_star_k_[c]) continue;
        // k = m1 + 1 + c uses q_k at tail index c and q_{k+1} at c + 1
        const double diff = tail[c + 1] * inv_q_[c + 1] - tail[c] * inv_q_[c];
        sum += diff * (out[c * count + d] - g_at_star_[c]);
      }
      sums[d] = sum;
    }
  }

private:
  // a_j = exp(-z psi^{-1}(q_{j+m1+1})), j = 1..n; the leading zeros of G_k are
  // applied by the kernel's prefix rows.
  void fill_thresholds(double log_z, double* dst, std::size_t stride) const {
    for (std::size_t j = 1; j <= n_; ++j) {
      dst[(j - 1) * stride] = std::exp(-std::exp(log_z + log_psi_inv_[j]));
    }
  }

  std::size_t m_;
  std::size_t m1_;
  std::size_t n_;
  std::vector<double> log_psi_inv_;
  std::vector<double> inv_q_;
  std::vector<double> log_z_star_k_;
  std::vector<double> g_at_star_;
};

SharperParts sharper_parts(const CopulaModel& model, std::size_t m, std::size_t m0, double q,
                           const MixingDraws& draws) {
  SharperParts parts;
  const std::size_t m1 = m - m0;
  if (model.degenerate_mixing() || m0 <= 1 || m1 + 1 > m - 1) return parts;
  const SharperIntegrand integrand(model, m, m0, q);
  const std::size_t n = draws.log_values.size();
  std::vector<double> sums(n);
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t begin, std::size_t end) {
    for (std::size_t blk = begin; blk < end; ++blk) {
      const std::size_t first = blk * kBlock;
      const std::size_t count = std::min(kBlock, n - first);
      integrand.evaluate(draws.log_values.data() + first, count, sums.data() + first);
    }
  });
  const double scale = q / static_cast<double>(m) * static_cast<double>(m0);
  double total = 0.0;
  for (double s : sums) total += s;
  const double mean = total / static_cast<double>(n);
  parts.b = scale * mean;
  if (n > 1) {
    double ss = 0.0;
    for (double s : sums) ss += (s - mean) * (s - mean);
    parts.sd_per_draw = scale * std::sqrt(ss / static_cast<double>(n - 1));
  }
  return parts;
}

McEstimate mean_and_se(const std::vector<double>& values) {
  McEstimate est;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  est.value = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - est.value) * (v - est.value);
    est.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return est;
}

// F_Z(z*) used inside gamma_floor: left limit at an atom.
double floor_mixing_cdf(const CopulaModel& model, std::size_t m, double q,
                        const MixingDraws& draws) {
  if (model.degenerate_mixing()) return 0.0;
  return mixing_cdf_at_z_star(model, m, q, draws);
}

}  // namespace

double log_z_star_k(const CopulaModel& model, std::size_t m, double q, std::size_t k) {
  check_level(m, q);
  if (k < 1 || k + 1 > m) throw std::invalid_argument("z_star_k: k must lie in [1, m - 1]");
  if (model.degenerate_mixing()) return 0.0;
  const double kd = static_cast<double>(k);
  return std::log(std::log1p(1.0 / kd)) -
         log_psi_inv_gap(model, critical(k, m, q), critical(k + 1, m, q));
}

double z_star_k(const CopulaModel& model, std::size_t m, double q, std::size_t k) {
  return std::exp(log_z_star_k(model, m, q, k));
}

double log_z_star(const CopulaModel& model, std::size_t m, double q) {
  check_level(m, q);
  if (model.degenerate_mixing()) return 0.0;
  return std::log(std::log(static_cast<double>(m))) -
         log_psi_inv_gap(model, q / static_cast<double>(m), q);
}

double z_star(const CopulaModel& model, std::size_t m, double q) {
  return std::exp(log_z_star(model, m, q));
}

double log_z_floor_star(const CopulaModel& model, std::size_t m, double q) {
  check_level(m, q);
  const double l_low = model.log_psi_inv(q / static_cast<double>(m));
  const double l_q = model.log_psi_inv(q);
  const double numerator = std::log(static_cast<double>(m)) + l_low - l_q;
  return std::log(numerator) - (l_low + special::log1m_exp(l_q - l_low));
}

double z_floor_star(const CopulaModel& model, std::size_t m, double q) {
  return std::exp(log_z_floor_star(model, m, q));
}

McEstimate gamma_min_mc(const CopulaModel& model, std::size_t m, double q,
                        const MixingDraws& draws) {
  check_level(m, q);
  if (model.degenerate_mixing()) return {1.0, 0.0};
  if (draws.log_values.empty()) throw std::invalid_argument("gamma_min_mc needs draws");
  const double lz_star = log_z_star(model, m, q);
  const double q_low = q / static_cast<double>(m);
  const double l_low = model.log_psi_inv(q_low);
  const double l_q = model.log_psi_inv(q);
  std::vector<double> per_draw(draws.log_values.size());
  for (std::size_t d = 0; d < per_draw.size(); ++d) {
    const double lz = draws.log_values[d];
    double h = 0.0;
    if (lz <= lz_star) {
      h = std::exp(-std::exp(lz + l_low)) / q_low - std::exp(-std::exp(lz + l_q)) / q;
    }
    per_draw[d] = 1.0 - h;
  }
  return mean_and_se(per_draw);
}

McEstimate gamma_min_mc(const CopulaModel& model, std::size_t m, double q,
                        std::size_t mc_draws, RandomStream& stream) {
  if (mc_draws == 0) throw std::invalid_argument("gamma_min_mc needs mc_draws >= 1");
  if (model.degenerate_mixing()) return {1.0, 0.0};
  return gamma_min_mc(model, m, q, sample_mixing(model, mc_draws, stream));
}

double gamma_min_clayton(double eta, std::size_t m, double q) {
  check_level(m, q);
  if (!(eta > 0.0)) throw std::invalid_argument("Clayton eta must be > 0");
  const double log_m = std::log(static_cast<double>(m));
  const double c = eta * log_m;  // m^eta = exp(c)
  const double shape = 1.0 / eta;
  // m^eta ln m / (m^eta - 1) = ln m / (1 - m^-eta);  ln m / (m^eta - 1)
  const double i1 = special::gamma_p_log_arg(shape, std::log(log_m) - special::log1m_exp(-c));
  const double i2 = special::gamma_p_log_arg(shape, std::log(log_m) - special::log_expm1(c));
  return 1.0 - i1 + i2;
}

McEstimate gamma_min(const CopulaModel& model, std::size_t m, double q,
                     const MixingDraws& draws) {
  if (model.family() == Family::Clayton) return {gamma_min_clayton(model.eta(), m, q), 0.0};
  return gamma_min_mc(model, m, q, draws);
}

double mixing_cdf_at_z_star(const CopulaModel& model, std::size_t m, double q,
                            const MixingDraws& draws) {
  const double lz = log_z_star(model, m, q);
  if (model.degenerate_mixing()) return 1.0;
  if (model.family() == Family::Clayton) {
    return special::gamma_p_log_arg(1.0 / model.eta(), lz - std::log(model.eta()));
  }
  return empirical_mixing_cdf(draws, lz);
}

double gamma_floor(const CopulaModel& model, std::size_t m, double q, const MixingDraws& draws) {
  check_level(m, q);
  const double fz = floor_mixing_cdf(model, m, q, draws);
  const double md = static_cast<double>(m);
  const double l_low = model.log_psi_inv(q / md);
  const double l_q = model.log_psi_inv(q);
  const double first = (md - 1.0) / q * fz;
  const double second = std::exp(-std::exp(log_z_floor_star(model, m, q) + l_q)) / q *
                        (-std::expm1(l_q - l_low)) * (1.0 - fz);
  return 1.0 - std::min(first, second);
}

double gamma_floor(const CopulaModel& model, std::size_t m, double q, std::size_t mc_draws,
                   RandomStream& stream) {
  MixingDraws draws;
  if (model.family() == Family::Gumbel && !model.degenerate_mixing()) {
    if (mc_draws == 0) throw std::invalid_argument("gamma_floor needs mc_draws >= 1");
    draws = sample_mixing(model, mc_draws, stream);
  }
  return gamma_floor(model, m, q, draws);
}

double lower_bound(const CopulaModel& model, std::size_t m, std::size_t m0, double q,
                   std::size_t mc_draws, RandomStream& stream) {
  check_level(m, q);
  if (m0 > m) throw std::invalid_argument("m0 must not exceed m");
  const double classical = static_cast<double>(m0) * q / static_cast<double>(m);
  if (model.family() == Family::Clayton) return classical * gamma_min_clayton(model.eta(), m, q);
  return classical * gamma_min_mc(model, m, q, mc_draws, stream).value;
}

BoundReport sharper_upper_bound(const CopulaModel& model, std::size_t m, std::size_t m0,
                                double q, const MixingDraws& draws) {
  check_level(m, q);
  if (m0 > m) throw std::invalid_argument("m0 must not exceed m");
  if (draws.log_values.empty()) throw std::invalid_argument("sharper_upper_bound needs draws");
  BoundReport r;
  r.mc_draws = draws.log_values.size();
  r.classical_upper = static_cast<double>(m0) * q / static_cast<double>(m);
  const SharperParts parts = sharper_parts(model, m, m0, q, draws);
  r.b = parts.b;
  r.sharper_upper = r.classical_upper - r.b;
  r.bound_sd_per_draw = parts.sd_per_draw;
  r.sharper_upper_se = parts.sd_per_draw / std::sqrt(static_cast<double>(r.mc_draws));
  const McEstimate gm = gamma_min(model, m, q, draws);
  r.gamma_min = gm.value;
  r.gamma_min_se = gm.std_error;
  r.lower = r.classical_upper * r.gamma_min;
  r.gamma_floor = gamma_floor(model, m, q, draws);
  r.z_star = z_star(model, m, q);
  r.fz_at_zstar = mixing_cdf_at_z_star(model, m, q, draws);
  return r;
}

BoundReport sharper_upper_bound(const CopulaModel& model, std::size_t m, std::size_t m0,
                                double q, std::size_t mc_draws, RandomStream& stream) {
  if (mc_draws == 0) throw std::invalid_argument("sharper_upper_bound needs mc_draws >= 1");
  return sharper_upper_bound(model, m, m0, q, sample_mixing(model, mc_draws, stream));
}

BoundReport bound_report(const CopulaModel& model, const SimulationConfig& cfg) {
  cfg.validate();
  RandomStream stream(cfg.seed);
  return sharper_upper_bound(model, cfg.m, cfg.m0, cfg.q, cfg.mc_draws, stream);
}

CalibrationResult calibrate_q(const CopulaModel& model, std::size_t m, std::size_t m0_assumed,
                              double q_target, std::size_t mc_draws,
                              const RandomStream& stream, double tol) {
  check_level(m, q_target);
  if (m0_assumed > m) throw std::invalid_argument("m0_assumed must not exceed m");
  if (!(tol > 0.0)) throw std::invalid_argument("calibration tolerance must be > 0");
  if (mc_draws == 0) throw std::invalid_argument("calibrate_q needs mc_draws >= 1");
  RandomStream draw_stream = stream;
  const MixingDraws draws = sample_mixing(model, mc_draws, draw_stream);
  const double target = static_cast<double>(m0_assumed) / static_cast<double>(m) * q_target;

  CalibrationResult result;
  auto evaluate = [&](double level) {
    ++result.evaluations;
    return sharper_upper_bound(model, m, m0_assumed, level, draws);
  };

  result.q_adjusted = q_target;
  result.report = evaluate(q_target);
  if (model.degenerate_mixing()) return result;
  if (result.report.sharper_upper > target) {
    result.bracketed = false;
    return result;
  }
  double lo = q_target;
  BoundReport lo_report = result.report;
  double hi = 1.0 - 1e-6;
  BoundReport hi_report = evaluate(hi);
  if (hi_report.sharper_upper <= target) {
    result.q_adjusted = hi;
    result.report = hi_report;
    return result;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    BoundReport mid_report = evaluate(mid);
    if (mid_report.sharper_upper <= target) {
      lo = mid;
      lo_report = mid_report;
    } else {
      hi = mid;
    }
  }
  result.q_adjusted = lo;
  result.report = lo_report;
  return result;
}

}  // namespace copfdr
