#include "copfdr/estimation.hpp"

#include "copfdr/kernels/kernels.hpp"
#include "copfdr/parallel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace copfdr {
namespace {

std::vector<double> resolve_weights(std::size_t m,
                                    std::optional<std::span<const double>> weights) {
  const std::size_t pairs = m * (m - 1) / 2;
  if (!weights) return std::vector<double>(pairs, 1.0);
  if (weights->size() != pairs) {
    throw std::invalid_argument("weights must have m(m-1)/2 = " + std::to_string(pairs) +
                                " entries, got " + std::to_string(weights->size()));
  }
  double total = 0.0;
  for (double w : *weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("weights must not all be zero");
  return {weights->begin(), weights->end()};
}

void require_fit_family(Family family) {
  if (family == Family::Independence) {
    throw std::invalid_argument("independence has no parameter to fit");
  }
}

}  // namespace

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

KendallEstimate kendall_tau_sample(const Matrix& data) {
  const std::size_t n = data.rows();
  const std::size_t m = data.cols();
  if (n < 2) throw std::invalid_argument("Kendall tau needs at least 2 observations");
  if (m < 2) throw std::invalid_argument("Kendall tau needs at least 2 columns");
  std::vector<std::vector<double>> cols(m);
  for (std::size_t c = 0; c < m; ++c) {
    cols[c] = data.column(c);
    bool constant = true;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::isnan(cols[c][r])) {
        throw std::invalid_argument("NaN in row " + std::to_string(r + 1) + ", column " +
                                    std::to_string(c + 1));
      }
      if (cols[c][r] != cols[c][0]) constant = false;
    }
    if (constant) {
      throw std::invalid_argument("column " + std::to_string(c + 1) +
                                  " is constant; Kendall tau undefined");
    }
  }

  KendallEstimate est;
  est.n = n;
  est.m = m;
  est.tau_matrix = Matrix(m, m, 1.0);
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  const std::size_t count = m * (m - 1) / 2;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  index.reserve(count);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) index.emplace_back(i, j);
  std::vector<double> taus(count);
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const auto [i, j] = index[p];
      taus[p] = static_cast<double>(kernels::concordance(cols[i].data(), cols[j].data(), n)) /
                pairs;
    }
  });
  for (std::size_t p = 0; p < count; ++p) {
    const auto [i, j] = index[p];
    est.tau_matrix(i, j) = taus[p];
    est.tau_matrix(j, i) = taus[p];
  }
  return est;
}

double tau_of_eta(Family family, double eta) {
  switch (family) {
    case Family::Independence: return 0.0;
    case Family::Clayton:
      if (!(eta > 0.0)) throw std::invalid_argument("Clayton eta must be > 0");
      return eta / (2.0 + eta);
    case Family::Gumbel:
      if (!(eta >= 1.0)) throw std::invalid_argument("Gumbel eta must be >= 1");
      return (eta - 1.0) / eta;
  }
  throw std::invalid_argument("unknown family");
}

double eta_of_tau(Family family, double tau) {
  require_fit_family(family);
  if (!(tau >= 0.0 && tau < 1.0)) throw std::domain_error("tau must lie in [0, 1)");
  if (family == Family::Clayton) return 2.0 * tau / (1.0 - tau);
  return 1.0 / (1.0 - tau);
}

EtaRange fit_eta_range(Family family) {
  require_fit_family(family);
  if (family == Family::Clayton) return {1e-6, 1e6};
  return {1.0, 1e6};
}

double realized_copula_objective(const KendallEstimate& tau, Family family, double eta,
                                 std::optional<std::span<const double>> weights) {
  if (tau.m < 2) throw std::invalid_argument("fit needs m >= 2");
  const std::vector<double> w = resolve_weights(tau.m, weights);
  const double model_tau = tau_of_eta(family, eta);
  double objective = 0.0;
  std::size_t p = 0;
  for (std::size_t i = 0; i < tau.m; ++i) {
    for (std::size_t j = i + 1; j < tau.m; ++j, ++p) {
      const double g = tau.tau_matrix(i, j) - model_tau;
      objective += w[p] * g * g;
    }
  }
  return objective;
}

FitResult realized_copula_fit(const KendallEstimate& tau, Family family,
                              std::optional<std::span<const double>> weights) {
  require_fit_family(family);
  if (tau.m < 2) throw std::invalid_argument("fit needs m >= 2");
  const std::vector<double> w = resolve_weights(tau.m, weights);
  double num = 0.0;
  double den = 0.0;
  std::size_t p = 0;
  for (std::size_t i = 0; i < tau.m; ++i) {
    for (std::size_t j = i + 1; j < tau.m; ++j, ++p) {
      num += w[p] * tau.tau_matrix(i, j);
      den += w[p];
    }
  }
  FitResult fit;
  fit.family = family;
  fit.mean_tau = num / den;
  if (fit.mean_tau < 0.0) {
    throw std::invalid_argument("mean Kendall tau " + std::to_string(fit.mean_tau) +
                                " < 0: negative association unsupported");
  }
  const EtaRange range = fit_eta_range(family);
  const double tau_lo = tau_of_eta(family, range.lo);
  const double tau_hi = tau_of_eta(family, range.hi);
  double target = fit.mean_tau;
  if (target < tau_lo) {
    target = tau_lo;
    fit.clamped = true;
  } else if (target > tau_hi) {
    target = tau_hi;
    fit.clamped = true;
  }
  fit.eta_hat = fit.clamped ? (target == tau_lo ? range.lo : range.hi) : eta_of_tau(family, target);
  fit.objective = realized_copula_objective(tau, family, fit.eta_hat, w);
  return fit;
}

Matrix sample_copula_data(const CopulaModel& model, std::size_t n, std::size_t m,
                          const RandomStream& stream) {
  if (n == 0 || m == 0) throw std::invalid_argument("sample_copula_data needs n, m >= 1");
  Matrix data(n, m);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      RandomStream rs = stream.substream(r);
      const PValueSample s = sample_pvalues(model, m, m, false, rs);
      for (std::size_t c = 0; c < m; ++c) data(r, c) = s.values[c];
    }
  });
  return data;
}

}  // namespace copfdr
