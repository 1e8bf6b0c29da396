#pragma once

#include "copfdr/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace copfdr {

enum class Family { Independence, Clayton, Gumbel };

std::string_view family_name(Family family) noexcept;

/// Parses "independence", "clayton" or "gumbel" (case-sensitive).
Family parse_family(std::string_view text);

/// One-parameter Archimedean copula with a completely monotone generator.
///
///   Independence  psi(t) = exp(-t)
///   Clayton       psi(t) = (1 + eta t)^(-1/eta),  eta > 0
///   Gumbel        psi(t) = exp(-t^(1/eta)),       eta >= 1
///
/// psi is the Laplace transform of the mixing variable Z, so conditionally on
/// Z = z the uniforms of the copula are iid with cdf exp(-z psi^{-1}(u)).
/// Clayton Z is eta times a Gamma(1/eta, 1) variate; Gumbel Z is positive
/// stable with index 1/eta. Gumbel with eta = 1 is the independence copula and
/// every method below takes the independence path for it.
///
/// Every quantity that can leave the double range for extreme eta has a log
/// counterpart (`log_psi_inv`, `psi_of_log`, `log_mixing_draw`); the bound
/// computations only use those.
class CopulaModel {
public:
  static CopulaModel independence() noexcept;
  static CopulaModel clayton(double eta);
  static CopulaModel gumbel(double eta);
  /// eta is ignored for Independence.
  static CopulaModel make(Family family, double eta);

  Family family() const noexcept { return family_; }
  double eta() const noexcept { return eta_; }

  /// Z is the constant 1 (Independence, or Gumbel with eta = 1).
  bool degenerate_mixing() const noexcept;

  /// psi(t) for t >= 0; throws std::domain_error for t < 0 or NaN.
  double psi(double t) const;
  /// psi(exp(log_t)); log_t may be any extended real.
  double psi_of_log(double log_t) const noexcept;

  /// psi^{-1}(u) for 0 < u <= 1; may be +inf when it exceeds the double range.
  double psi_inv(double u) const;
  /// log psi^{-1}(u) for 0 < u < 1 (returns -inf at u = 1).
  double log_psi_inv(double u) const;

  /// log of one mixing draw.
  double log_mixing_draw(RandomStream& stream) const;

  /// F_Z(z) where it has a closed form (Independence, Clayton).
  double mixing_cdf_exact(double z) const;

  /// Laplace-transform of the mixing law, E[exp(-t Z)]; equals psi.
  double laplace(double t) const { return psi(t); }

  std::string describe() const;

  friend bool operator==(const CopulaModel&, const CopulaModel&) = default;

private:
  CopulaModel(Family family, double eta) noexcept : family_(family), eta_(eta) {}

  Family family_;
  double eta_;
};

struct MixingDraws {
  std::vector<double> values;      ///< Z, clamped below at DBL_MIN
  std::vector<double> log_values;  ///< log Z, never clamped
  std::uint64_t stream_key = 0;    ///< key of the stream that produced them
};

/// n independent draws of Z. Independence gives exactly 1 (log 0).
MixingDraws sample_mixing(const CopulaModel& model, std::size_t n, RandomStream& stream);

/// F_Z(z) for z > 0. Exact for Independence (1{z >= 1}) and Clayton;
/// empirical over `mc_draws` fresh draws for Gumbel.
double mixing_cdf(const CopulaModel& model, double z, std::size_t mc_draws,
                  RandomStream& stream);

/// Empirical F_Z(z) over existing draws, comparing in log space.
double empirical_mixing_cdf(const MixingDraws& draws, double log_z) noexcept;

struct PValueSample {
  std::vector<double> values;
  std::vector<bool> null_mask;  ///< true = true null; first m0 entries
  std::size_t m0 = 0;

  std::size_t size() const noexcept { return values.size(); }
};

/// Marshall-Olkin draw of one p-value vector: a single Z, then
/// P_i = psi(-ln(Y_i) / Z) for iid uniform Y_i. True nulls occupy indices
/// [0, m0). With `dirac_uniform` the remaining m - m0 values are exactly 0;
/// otherwise every coordinate comes from the copula.
PValueSample sample_pvalues(const CopulaModel& model, std::size_t m, std::size_t m0,
                            bool dirac_uniform, RandomStream& stream);

/// Deterministic core of `sample_pvalues`: transforms given uniforms for a
/// given log Z. `uniforms` holds one value per copula coordinate (m0 of them
/// under a Dirac-uniform configuration, m otherwise).
PValueSample pvalues_from_uniforms(const CopulaModel& model, double log_z,
                                   std::span<const double> uniforms, std::size_t m,
                                   std::size_t m0, bool dirac_uniform);

}  // namespace copfdr
