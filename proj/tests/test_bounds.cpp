#include <doctest.h>

#include "copfdr/bounds.hpp"
#include "copfdr/order_stats.hpp"
#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace copfdr;

namespace {

// Sharper bound assembled term by term through the reference recursion.
double reference_b(const CopulaModel& model, std::size_t m, std::size_t m0, double q,
                   const MixingDraws& draws) {
  const std::size_t m1 = m - m0;
  double total = 0.0;
  for (double lz : draws.log_values) {
    const double z = std::exp(lz);
    for (std::size_t k = m1 + 1; k <= m - 1; ++k) {
      const double zk = z_star_k(model, m, q, k);
      if (z < zk) continue;
      const double qk = k * q / m;
      const double qk1 = (k + 1) * q / m;
      const double diff =
          std::exp(-z * model.psi_inv(qk1)) / qk1 - std::exp(-z * model.psi_inv(qk)) / qk;
      const double g = bolshev(dirac_uniform_thresholds(model, m, m0, q, k, z));
      const double g_star = bolshev(dirac_uniform_thresholds(model, m, m0, q, k, zk));
      total += diff * (g - g_star);
    }
  }
  return q / m * m0 * total / static_cast<double>(draws.log_values.size());
}

}  // namespace

TEST_CASE("z*_k examples") {
  for (std::size_t k : {1u, 7u, 19u}) {
    CHECK(z_star_k(CopulaModel::independence(), 20, 0.05, k) == 1.0);
  }
  CHECK(z_star_k(CopulaModel::clayton(1.0), 20, 0.05, 1) ==
        doctest::Approx(std::log(2.0) / 200.0).epsilon(1e-12));
  const double gumbel = std::log(20.0 / 19.0) /
                        (std::pow(std::log(1.0 / 0.0475), 2) - std::pow(std::log(20.0), 2));
  CHECK(z_star_k(CopulaModel::gumbel(2.0), 20, 0.05, 19) == doctest::Approx(gumbel).epsilon(1e-12));
  CHECK_THROWS_AS(z_star_k(CopulaModel::gumbel(2.0), 20, 0.05, 0), std::invalid_argument);
  CHECK_THROWS_AS(z_star_k(CopulaModel::gumbel(2.0), 20, 0.05, 20), std::invalid_argument);
}

TEST_CASE("z* examples") {
  CHECK(z_star(CopulaModel::independence(), 20, 0.05) == 1.0);
  CHECK(z_star(CopulaModel::clayton(1.0), 20, 0.05) ==
        doctest::Approx(std::log(20.0) / 380.0).epsilon(1e-12));
  const double gumbel =
      std::log(20.0) / (std::pow(std::log(400.0), 2) - std::pow(std::log(20.0), 2));
  CHECK(z_star(CopulaModel::gumbel(2.0), 20, 0.05) == doctest::Approx(gumbel).epsilon(1e-12));
  CHECK(gumbel == doctest::Approx(0.11127).epsilon(1e-4));
  CHECK_THROWS_AS(z_star(CopulaModel::clayton(1.0), 1, 0.05), std::invalid_argument);
}

TEST_CASE("floor minimiser lies above z*") {
  for (const auto& model : {CopulaModel::clayton(0.5), CopulaModel::clayton(2.0),
                            CopulaModel::gumbel(1.5), CopulaModel::gumbel(8.0)}) {
    CHECK(z_floor_star(model, 20, 0.05) >= z_star(model, 20, 0.05));
  }
}

TEST_CASE("Clayton gamma_min closed form") {
  // eta = 1: F(x) = 1 - e^{-x}
  const double l20 = std::log(20.0);
  const double expected = std::exp(-20.0 * l20 / 19.0) + 1.0 - std::exp(-l20 / 19.0);
  CHECK(gamma_min_clayton(1.0, 20, 0.05) == doctest::Approx(expected).epsilon(1e-13));
  // eta -> 0: both arguments approach 1/eta and 1 - gamma_min ~ ln m / sqrt(2 pi / eta)
  double prev = 0.0;
  for (double eta : {1e-1, 1e-2, 1e-3, 1e-5, 1e-7}) {
    const double g = gamma_min_clayton(eta, 20, 0.05);
    CHECK(g > prev);
    CHECK(1.0 - g == doctest::Approx(std::log(20.0) * std::sqrt(eta / (2.0 * M_PI))).epsilon(0.05 + eta));
    prev = g;
  }
  CHECK(gamma_min_clayton(1e-7, 20, 0.05) > 0.999);
  CHECK(gamma_min_clayton(2.0, 20, 0.05) == gamma_min_clayton(2.0, 20, 0.01));
  for (double eta : {0.5, 1.0, 2.0, 4.0}) {
    CAPTURE(eta);
    CHECK(gamma_min_clayton(eta, 20, 0.05) ==
          doctest::Approx(oracle::clayton_gamma_min_quadrature(eta, 20, 0.05)).epsilon(1e-7));
  }
  for (double eta : {1e-4, 1e-2, 1.0, 1e2, 1e4}) {
    const double g = gamma_min_clayton(eta, 20, 0.05);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
  }
}

TEST_CASE("gamma_min by Monte Carlo") {
  RandomStream s(3);
  const auto ind = gamma_min_mc(CopulaModel::independence(), 20, 0.05, 1000, s);
  CHECK(ind.value == 1.0);
  CHECK(ind.std_error == 0.0);
  const auto c2 = gamma_min_mc(CopulaModel::clayton(2.0), 20, 0.05, 100000, s);
  CHECK(std::abs(c2.value - gamma_min_clayton(2.0, 20, 0.05)) <= 3.0 * c2.std_error);
  const auto near_ind = gamma_min_mc(CopulaModel::gumbel(1.001), 20, 0.05, 100000, s);
  CHECK(near_ind.value > 0.99);
}

TEST_CASE("gamma floor") {
  RandomStream s(4);
  CHECK(gamma_floor(CopulaModel::independence(), 20, 0.05, 100, s) == 1.0);
  CHECK(gamma_floor(CopulaModel::clayton(2.0), 20, 0.05, 100, s) <=
        gamma_min_clayton(2.0, 20, 0.05));
  for (double eta : {1.5, 3.0, 8.0}) {
    const auto model = CopulaModel::gumbel(eta);
    const auto draws = sample_mixing(model, 50000, s);
    CHECK(gamma_floor(model, 20, 0.05, draws) <= gamma_min(model, 20, 0.05, draws).value + 1e-12);
  }
}

TEST_CASE("lower bound") {
  RandomStream s(5);
  CHECK(lower_bound(CopulaModel::independence(), 20, 16, 0.05, 100, s) == 0.04);
  CHECK(lower_bound(CopulaModel::clayton(2.0), 20, 16, 0.05, 100, s) ==
        doctest::Approx(0.04 * gamma_min_clayton(2.0, 20, 0.05)).epsilon(1e-15));
  CHECK(lower_bound(CopulaModel::clayton(2.0), 20, 0, 0.05, 100, s) == 0.0);
}

TEST_CASE("independence: sharper bound equals the classical bound") {
  for (std::size_t m0 : {1u, 5u, 16u, 20u}) {
    RandomStream s(6);
    const auto r = sharper_upper_bound(CopulaModel::independence(), 20, m0, 0.05, 1000, s);
    CHECK(r.b == 0.0);
    CHECK(r.sharper_upper == m0 * 0.05 / 20);
    CHECK(r.lower == r.classical_upper);
    CHECK(r.z_star == 1.0);
    CHECK(r.fz_at_zstar == 1.0);
    CHECK(r.gamma_floor == 1.0);
  }
}

TEST_CASE("batched sharper bound matches the term-by-term reference") {
  for (const auto& model : {CopulaModel::clayton(0.7), CopulaModel::clayton(3.0),
                            CopulaModel::gumbel(2.0), CopulaModel::gumbel(7.0)}) {
    for (std::size_t m0 : {16u, 9u}) {
      RandomStream s(7);
      const auto draws = sample_mixing(model, 700, s);
      const auto r = sharper_upper_bound(model, 20, m0, 0.05, draws);
      CAPTURE(model.describe());
      CAPTURE(m0);
      CHECK(r.b == doctest::Approx(reference_b(model, 20, m0, 0.05, draws)).epsilon(1e-10));
    }
  }
}

TEST_CASE("report invariants") {
  for (const auto& model : {CopulaModel::clayton(0.2), CopulaModel::clayton(1.7),
                            CopulaModel::clayton(8.0), CopulaModel::gumbel(1.3),
                            CopulaModel::gumbel(6.6), CopulaModel::gumbel(20.0)}) {
    RandomStream s(8);
    const auto r = sharper_upper_bound(model, 20, 16, 0.05, 20000, s);
    CAPTURE(model.describe());
    CHECK(r.b >= 0.0);
    CHECK(r.sharper_upper == doctest::Approx(r.classical_upper - r.b).epsilon(1e-15));
    CHECK(r.sharper_upper <= 0.04 + 1e-12);
    CHECK(r.lower <= r.sharper_upper);
    CHECK(r.gamma_floor <= r.gamma_min + 1e-12);
    CHECK(r.gamma_min <= 1.0);
    CHECK(r.lower == doctest::Approx(0.04 * r.gamma_min).epsilon(1e-15));
    CHECK(r.mc_draws == 20000);
    CHECK(r.sharper_upper_se == doctest::Approx(r.bound_sd_per_draw / std::sqrt(20000.0)));
  }
}

TEST_CASE("integrand sign above z*_k") {
  for (const auto& model : {CopulaModel::clayton(1.5), CopulaModel::gumbel(4.0)}) {
    RandomStream s(9);
    const auto draws = sample_mixing(model, 5000, s);
    for (std::size_t k = 1; k <= 19; ++k) {
      const double zk = z_star_k(model, 20, 0.05, k);
      const double qk = k * 0.05 / 20, qk1 = (k + 1) * 0.05 / 20;
      for (double z : draws.values) {
        if (z < zk) continue;
        const double d =
            std::exp(-z * model.psi_inv(qk1)) / qk1 - std::exp(-z * model.psi_inv(qk)) / qk;
        CHECK(d >= -1e-12 * std::exp(-z * model.psi_inv(qk)) / qk);
      }
    }
  }
}

TEST_CASE("sharper bound with an empty k range") {
  RandomStream s(10);
  const auto r = sharper_upper_bound(CopulaModel::clayton(2.0), 20, 1, 0.05, 100, s);
  CHECK(r.b == 0.0);
  CHECK(r.sharper_upper == r.classical_upper);
}

TEST_CASE("bound report is reproducible") {
  SimulationConfig cfg;
  cfg.mc_draws = 5000;
  cfg.seed = 7;
  const auto a = bound_report(CopulaModel::gumbel(3.0), cfg);
  const auto b = bound_report(CopulaModel::gumbel(3.0), cfg);
  CHECK(a.sharper_upper == b.sharper_upper);
  CHECK(a.gamma_min == b.gamma_min);
  CHECK(a.bound_sd_per_draw == b.bound_sd_per_draw);
}

TEST_CASE("extreme Clayton parameters stay finite") {
  for (double eta : {1e-3, 1e3}) {
    RandomStream s(11);
    const auto r = sharper_upper_bound(CopulaModel::clayton(eta), 20, 16, 0.05, 5000, s);
    CHECK(std::isfinite(r.sharper_upper));
    CHECK(std::isfinite(r.lower));
    CHECK(std::abs(r.sharper_upper - 0.04) <= 2e-3);
  }
}

TEST_CASE("calibration") {
  const RandomStream s(12);
  const auto ind = calibrate_q(CopulaModel::independence(), 20, 20, 0.05, 1000, s);
  CHECK(ind.q_adjusted == 0.05);

  const auto model = CopulaModel::clayton(1.7);
  const auto c20 = calibrate_q(model, 20, 20, 0.05, 20000, s);
  CHECK(c20.bracketed);
  CHECK(c20.q_adjusted > 0.05);
  CHECK(c20.report.sharper_upper <= 0.05 + 1e-4);
  // a smaller assumed m0 lowers the target to (m0 / m) q; the bound shrinks
  // less in relative terms there, so q' moves up by less
  const auto c10 = calibrate_q(model, 20, 10, 0.05, 20000, s);
  CHECK(c10.bracketed);
  CHECK(c10.q_adjusted > 0.05);
  CHECK(c10.report.sharper_upper <= 0.025 + 1e-4);
  CHECK(c10.q_adjusted < c20.q_adjusted);

  CHECK_THROWS_AS(calibrate_q(model, 20, 21, 0.05, 100, s), std::invalid_argument);
  CHECK_THROWS_AS(calibrate_q(model, 20, 20, 1.0, 100, s), std::invalid_argument);
}
