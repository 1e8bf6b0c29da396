#include "copfdr/copula.hpp"

#include "copfdr/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace copfdr {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_unit_interval(double u) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::domain_error("psi_inv: argument must lie in (0, 1]");
  }
}

}  // namespace

std::string_view family_name(Family family) noexcept {
  switch (family) {
    case Family::Independence: return "independence";
    case Family::Clayton: return "clayton";
    case Family::Gumbel: return "gumbel";
  }
  return "unknown";
}

Family parse_family(std::string_view text) {
  if (text == "independence") return Family::Independence;
  if (text == "clayton") return Family::Clayton;
  if (text == "gumbel") return Family::Gumbel;
  throw std::invalid_argument("unknown copula family '" + std::string(text) + "'");
}

CopulaModel CopulaModel::independence() noexcept { return {Family::Independence, 0.0}; }

CopulaModel CopulaModel::clayton(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("Clayton copula requires eta > 0");
  }
  return {Family::Clayton, eta};
}

CopulaModel CopulaModel::gumbel(double eta) {
  if (!(eta >= 1.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("Gumbel copula requires eta >= 1");
  }
  return {Family::Gumbel, eta};
}

CopulaModel CopulaModel::make(Family family, double eta) {
  switch (family) {
    case Family::Independence: return independence();
    case Family::Clayton: return clayton(eta);
    case Family::Gumbel: return gumbel(eta);
  }
  throw std::invalid_argument("unknown copula family");
}

bool CopulaModel::degenerate_mixing() const noexcept {
  return family_ == Family::Independence || (family_ == Family::Gumbel && eta_ == 1.0);
}

double CopulaModel::psi(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("psi: argument must be >= 0");
  if (degenerate_mixing()) return std::exp(-t);
  if (family_ == Family::Clayton) return std::exp(-std::log1p(eta_ * t) / eta_);
  return std::exp(-std::pow(t, 1.0 / eta_));
}

double CopulaModel::psi_of_log(double log_t) const noexcept {
  if (degenerate_mixing()) return std::exp(-std::exp(log_t));
  if (family_ == Family::Clayton) {
    return std::exp(-special::softplus(std::log(eta_) + log_t) / eta_);
  }
  return std::exp(-std::exp(log_t / eta_));
}

double CopulaModel::psi_inv(double u) const {
  require_unit_interval(u);
  if (u == 1.0) return 0.0;
  if (degenerate_mixing()) return -std::log(u);
  if (family_ == Family::Clayton) return std::expm1(-eta_ * std::log(u)) / eta_;
  return std::pow(-std::log(u), eta_);
}

double CopulaModel::log_psi_inv(double u) const {
  require_unit_interval(u);
  if (u == 1.0) return -kInf;
  if (degenerate_mixing()) return std::log(-std::log(u));
  if (family_ == Family::Clayton) {
    return special::log_expm1(-eta_ * std::log(u)) - std::log(eta_);
  }
  return eta_ * std::log(-std::log(u));
}

double CopulaModel::log_mixing_draw(RandomStream& stream) const {
  if (degenerate_mixing()) return 0.0;
  if (family_ == Family::Clayton) {
    return std::log(eta_) + stream.log_gamma_variate(1.0 / eta_);
  }
  // Kanter: Z = (a(U)/W)^(eta-1), U ~ Uni(0, pi), W ~ Exp(1), with
  // a(v) = sin((eta-1)v/eta) sin(v/eta)^(1/(eta-1)) / sin(v)^(eta/(eta-1)).
  // The first sine carries (eta-1)/eta, not (1-eta)/eta, so a(v) > 0.
  // Multiplied through by (eta-1) the expression stays finite as eta -> 1.
  const double u = std::numbers::pi * stream.uniform();
  const double w = stream.exponential();
  const double em1 = eta_ - 1.0;
  return em1 * std::log(std::sin(em1 * u / eta_)) + std::log(std::sin(u / eta_)) -
         eta_ * std::log(std::sin(u)) - em1 * std::log(w);
}

double CopulaModel::mixing_cdf_exact(double z) const {
  if (!(z > 0.0)) throw std::domain_error("mixing cdf: z must be > 0");
  if (degenerate_mixing()) return z >= 1.0 ? 1.0 : 0.0;
  if (family_ == Family::Clayton) return special::gamma_p(1.0 / eta_, z / eta_);
  throw std::logic_error("Gumbel mixing law has no closed-form cdf");
}

std::string CopulaModel::describe() const {
  std::ostringstream os;
  os << family_name(family_);
  if (family_ != Family::Independence) os << "(eta=" << eta_ << ")";
  return os.str();
}

MixingDraws sample_mixing(const CopulaModel& model, std::size_t n, RandomStream& stream) {
  MixingDraws draws;
  draws.stream_key = stream.key();
  draws.values.resize(n);
  draws.log_values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lz = model.log_mixing_draw(stream);
    draws.log_values[i] = lz;
    draws.values[i] = std::clamp(std::exp(lz), std::numeric_limits<double>::min(),
                                 std::numeric_limits<double>::max());
  }
  return draws;
}

double empirical_mixing_cdf(const MixingDraws& draws, double log_z) noexcept {
  if (draws.log_values.empty()) return 0.0;
  const auto hits = std::count_if(draws.log_values.begin(), draws.log_values.end(),
                                  [log_z](double v) { return v <= log_z; });
  return static_cast<double>(hits) / static_cast<double>(draws.log_values.size());
}

double mixing_cdf(const CopulaModel& model, double z, std::size_t mc_draws,
                  RandomStream& stream) {
  if (!(z > 0.0)) throw std::domain_error("mixing cdf: z must be > 0");
  if (model.family() != Family::Gumbel || model.degenerate_mixing()) {
    return model.mixing_cdf_exact(z);
  }
  if (mc_draws == 0) throw std::invalid_argument("mixing cdf: mc_draws must be >= 1");
  return empirical_mixing_cdf(sample_mixing(model, mc_draws, stream), std::log(z));
}

PValueSample pvalues_from_uniforms(const CopulaModel& model, double log_z,
                                   std::span<const double> uniforms, std::size_t m,
                                   std::size_t m0, bool dirac_uniform) {
  if (m == 0 || m0 > m) throw std::invalid_argument("sample_pvalues: need 0 <= m0 <= m, m >= 1");
  const std::size_t coords = dirac_uniform ? m0 : m;
  if (uniforms.size() != coords) {
    throw std::invalid_argument("pvalues_from_uniforms: wrong number of uniforms");
  }
  PValueSample sample;
  sample.m0 = m0;
  sample.values.assign(m, 0.0);
  sample.null_mask.assign(m, false);
  std::fill_n(sample.null_mask.begin(), m0, true);
  for (std::size_t i = 0; i < coords; ++i) {
    // psi(-ln(Y) / Z) evaluated through its logarithm
    sample.values[i] = model.psi_of_log(std::log(-std::log(uniforms[i])) - log_z);
  }
  return sample;
}

PValueSample sample_pvalues(const CopulaModel& model, std::size_t m, std::size_t m0,
                            bool dirac_uniform, RandomStream& stream) {
  if (m == 0 || m0 > m) throw std::invalid_argument("sample_pvalues: need 0 <= m0 <= m, m >= 1");
  const double log_z = model.log_mixing_draw(stream);
  std::vector<double> uniforms(dirac_uniform ? m0 : m);
  for (auto& y : uniforms) y = stream.uniform();
  return pvalues_from_uniforms(model, log_z, uniforms, m, m0, dirac_uniform);
}

}  // namespace copfdr
