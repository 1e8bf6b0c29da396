#pragma once

#include "copfdr/copula.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace copfdr {

/// Dense row-major matrix of doubles.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<double> column(std::size_t c) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct KendallEstimate {
  Matrix tau_matrix;  ///< symmetric m x m, diagonal set to 1
  std::size_t n = 0;  ///< observations
  std::size_t m = 0;  ///< columns
};

/// Pairwise Kendall tau-a over the columns of `data` (n rows, m columns):
/// (concordant - discordant) / C(n, 2), ties counting as neither.
/// Throws std::invalid_argument for n < 2, m < 2, NaN entries, or a constant
/// column (the message names the 1-based column).
KendallEstimate kendall_tau_sample(const Matrix& data);

/// Closed-form Kendall tau: Clayton eta/(2+eta), Gumbel (eta-1)/eta,
/// Independence 0.
double tau_of_eta(Family family, double eta);

/// Inverse of `tau_of_eta` for tau in [0, 1): Clayton 2 tau/(1-tau),
/// Gumbel 1/(1-tau). Throws std::domain_error outside [0, 1) and
/// std::invalid_argument for Independence.
double eta_of_tau(Family family, double tau);

/// Parameter range used by the fit. The bounds stay finite so that a fitted
/// model can always be constructed.
struct EtaRange {
  double lo;
  double hi;
};
EtaRange fit_eta_range(Family family);

struct FitResult {
  double eta_hat = 0.0;
  Family family = Family::Clayton;
  double objective = 0.0;  ///< sum_{i<j} w_ij (tau_ij - tau(eta_hat))^2
  double mean_tau = 0.0;   ///< weighted mean of the off-diagonal taus
  bool clamped = false;    ///< mean_tau fell outside tau(fit_eta_range)
};

/// Realized-copula moment fit with a diagonal weight matrix: the minimiser of
/// sum_{i<j} w_ij (tau_ij - tau(eta))^2 satisfies tau(eta) = weighted mean of
/// tau_ij. `weights` lists w_ij for i < j in row-major order (m(m-1)/2
/// entries); identity when omitted.
///
/// Throws std::invalid_argument for Independence, a weight vector of the
/// wrong length, negative or all-zero weights, and for a negative mean tau.
FitResult realized_copula_fit(const KendallEstimate& tau, Family family,
                              std::optional<std::span<const double>> weights = std::nullopt);

/// Objective of `realized_copula_fit` at an arbitrary eta.
double realized_copula_objective(const KendallEstimate& tau, Family family, double eta,
                                 std::optional<std::span<const double>> weights = std::nullopt);

/// n draws of an m-dimensional copula vector (every coordinate a true null),
/// one row per draw; row r uses stream.substream(r).
Matrix sample_copula_data(const CopulaModel& model, std::size_t n, std::size_t m,
                          const RandomStream& stream);

}  // namespace copfdr
