#pragma once

#include "copfdr/copula.hpp"
#include "copfdr/lsu.hpp"
#include "copfdr/rng.hpp"

#include <cstddef>

namespace copfdr {

// FDR bounds for the step-up test under an Archimedean p-value copula.
// Notation: q_i = i q / m, m1 = m - m0, h(z) = g(psi^{-1}(q/m)|z) - g(psi^{-1}(q)|z)
// with g(x|z) = exp(-z x) / psi(x).
//
// Quantities that may leave the double range for extreme eta are evaluated
// through their logarithms; the log_* functions expose those directly.

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// z*_k = log(1 + 1/k) / (psi^{-1}(q_k) - psi^{-1}(q_{k+1})), 1 <= k <= m - 1.
/// The integrand of the sharper bound for index k is non-negative for Z >= z*_k.
double z_star_k(const CopulaModel& model, std::size_t m, double q, std::size_t k);
double log_z_star_k(const CopulaModel& model, std::size_t m, double q, std::size_t k);

/// z* = log m / (psi^{-1}(q/m) - psi^{-1}(q)), the sign change of h; m >= 2.
double z_star(const CopulaModel& model, std::size_t m, double q);
double log_z_star(const CopulaModel& model, std::size_t m, double q);

/// Minimiser of h: (log m + log psi^{-1}(q/m) - log psi^{-1}(q)) /
/// (psi^{-1}(q/m) - psi^{-1}(q)). Always >= z*.
double z_floor_star(const CopulaModel& model, std::size_t m, double q);
double log_z_floor_star(const CopulaModel& model, std::size_t m, double q);

/// gamma_min = 1 - E[h(Z) 1{Z <= z*}] over the given draws (common random
/// numbers). Exactly 1 with zero error when Z is degenerate.
McEstimate gamma_min_mc(const CopulaModel& model, std::size_t m, double q,
                        const MixingDraws& draws);
McEstimate gamma_min_mc(const CopulaModel& model, std::size_t m, double q,
                        std::size_t mc_draws, RandomStream& stream);

/// Clayton closed form 1 - I1 + I2 with
///   I1 = P(1/eta, m^eta ln m / (m^eta - 1)),  I2 = P(1/eta, ln m / (m^eta - 1)),
/// P the regularized lower incomplete gamma. Independent of q.
double gamma_min_clayton(double eta, std::size_t m, double q);

/// gamma_min by the cheapest exact route: closed form for Clayton, 1 for a
/// degenerate Z, Monte Carlo otherwise.
McEstimate gamma_min(const CopulaModel& model, std::size_t m, double q,
                     const MixingDraws& draws);

/// Analytic floor under gamma_min:
///   1 - min{(m-1)/q F_Z(z*),
///           exp(-zf psi^{-1}(q))/q (1 - psi^{-1}(q)/psi^{-1}(q/m)) (1 - F_Z(z*))}
/// with zf = z_floor_star. F_Z(z*) is exact for Clayton, empirical over the
/// draws for Gumbel, and the left limit 0 at the atom of a degenerate Z.
/// Not clamped; may be negative.
double gamma_floor(const CopulaModel& model, std::size_t m, double q, const MixingDraws& draws);
double gamma_floor(const CopulaModel& model, std::size_t m, double q, std::size_t mc_draws,
                   RandomStream& stream);

/// F_Z(z*) as reported: exact for Independence (1, the atom at 1 is included)
/// and Clayton, empirical over the draws for Gumbel.
double mixing_cdf_at_z_star(const CopulaModel& model, std::size_t m, double q,
                            const MixingDraws& draws);

/// (m0 q / m) * gamma_min.
double lower_bound(const CopulaModel& model, std::size_t m, std::size_t m0, double q,
                   std::size_t mc_draws, RandomStream& stream);

struct BoundReport {
  double classical_upper = 0.0;   ///< m0 q / m
  double sharper_upper = 0.0;     ///< classical_upper - b
  double b = 0.0;
  double lower = 0.0;             ///< classical_upper * gamma_min
  double gamma_min = 1.0;
  double gamma_min_se = 0.0;
  double gamma_floor = 1.0;
  double z_star = 1.0;
  double fz_at_zstar = 1.0;
  /// Sample sd over Z draws of the single-draw statistic
  /// m0 q/m - (q/m) m0 sum_k integrand_k(Z); its mean is sharper_upper.
  double bound_sd_per_draw = 0.0;
  double sharper_upper_se = 0.0;  ///< bound_sd_per_draw / sqrt(mc_draws)
  std::size_t mc_draws = 0;
};

/// Sharper upper bound under a Dirac-uniform configuration (false-null
/// p-values identically 0), together with every other bound in one report.
///
///   b = (q/m) m0 sum_{k=m1+1}^{m-1} E[(e^{-Z psi^{-1}(q_{k+1})}/q_{k+1}
///                                     - e^{-Z psi^{-1}(q_k)}/q_k)
///                                    (G_k(Z) - G_k(z*_k)) 1{Z >= z*_k}]
///
/// G_k(z) is Bolshev's probability for `dirac_uniform_thresholds`. One set of
/// `mc_draws` Z values is drawn from `stream` and shared by every k and by the
/// gamma_min / floor / F_Z estimates.
BoundReport sharper_upper_bound(const CopulaModel& model, std::size_t m, std::size_t m0,
                                double q, std::size_t mc_draws, RandomStream& stream);
BoundReport sharper_upper_bound(const CopulaModel& model, std::size_t m, std::size_t m0,
                                double q, const MixingDraws& draws);

/// Convenience: cfg.m, cfg.m0, cfg.q, cfg.mc_draws and RandomStream(cfg.seed).
BoundReport bound_report(const CopulaModel& model, const SimulationConfig& cfg);

struct CalibrationResult {
  double q_adjusted = 0.0;
  bool bracketed = true;   ///< false if the bound already exceeds the target at q_target
  BoundReport report;      ///< bounds at q_adjusted with m0 = m0_assumed
  std::size_t evaluations = 0;
};

/// Largest q' in [q_target, 1) with sharper_upper(q') <= (m0_assumed/m) q_target,
/// located by bisection to absolute tolerance `tol` on q'. The same Z draws are
/// reused for every evaluation. Returns q_target for a degenerate Z.
CalibrationResult calibrate_q(const CopulaModel& model, std::size_t m, std::size_t m0_assumed,
                              double q_target, std::size_t mc_draws,
                              const RandomStream& stream, double tol = 1e-4);

}  // namespace copfdr
