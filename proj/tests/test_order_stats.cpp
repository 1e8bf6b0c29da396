#include <doctest.h>

#include "copfdr/order_stats.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace copfdr;

namespace {

std::vector<double> random_sorted(std::mt19937_64& gen, std::size_t n, double hi) {
  std::uniform_real_distribution<double> uni(0.0, hi);
  std::vector<double> a(n);
  for (double& x : a) x = uni(gen);
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

TEST_CASE("small cases by hand") {
  CHECK(bolshev(ThresholdVector({0.3})) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(bolshev(ThresholdVector({0.0, 0.5})) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(bolshev(ThresholdVector({0.2, 0.5})) == doctest::Approx(0.55).epsilon(1e-15));
  CHECK(bolshev(ThresholdVector()) == 1.0);
}

TEST_CASE("[0.2, 0.5] against sorted-uniform Monte Carlo") {
  const auto mc = oracle::order_stat_mc({0.2, 0.5}, 2000000, 5);
  CHECK(std::abs(bolshev(ThresholdVector({0.2, 0.5})) - mc.p) <= 3.0 * mc.se);
}

TEST_CASE("boundary identities") {
  for (std::size_t n : {1u, 2u, 7u, 30u, 200u}) {
    CHECK(bolshev(ThresholdVector(std::vector<double>(n, 0.0))) == 1.0);
    // a_1 = 1 forces every later threshold to 1 as well
    CHECK(bolshev(ThresholdVector(std::vector<double>(n, 1.0))) == 0.0);
  }
}

TEST_CASE("agrees with Steck's determinant") {
  std::mt19937_64 gen(77);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rep % 15;
    const auto a = random_sorted(gen, n, rep % 2 ? 1.0 : 0.3);
    CAPTURE(n);
    CHECK(bolshev(ThresholdVector(a)) == doctest::Approx(oracle::steck(a)).epsilon(1e-10));
  }
}

TEST_CASE("agrees with Monte Carlo over sorted uniforms") {
  std::mt19937_64 gen(78);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 1 + rep;
    const auto a = random_sorted(gen, n, 0.6);
    const auto mc = oracle::order_stat_mc(a, 200000, 100 + rep);
    CAPTURE(n);
    CHECK(std::abs(bolshev(ThresholdVector(a)) - mc.p) <= 3.0 * mc.se + 1e-12);
  }
}

TEST_CASE("raising a threshold never increases the probability") {
  std::mt19937_64 gen(79);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rep % 12;
    auto a = random_sorted(gen, n, 0.8);
    const double base = bolshev(ThresholdVector(a));
    const std::size_t j = rep % n;
    const double upper = j + 1 < n ? a[j + 1] : 1.0;
    a[j] = 0.5 * (a[j] + upper);
    CHECK(bolshev(ThresholdVector(a)) <= base + 1e-14);
  }
}

TEST_CASE("results stay in [0, 1] up to moderate lengths") {
  std::mt19937_64 gen(80);
  for (std::size_t n : {20u, 40u, 60u}) {
    for (double hi : {0.01, 0.2, 1.0}) {
      const double p = bolshev(ThresholdVector(random_sorted(gen, n, hi)));
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
  // small thresholds keep the alternating series well conditioned at any length
  for (std::size_t n : {120u, 200u}) {
    const double p = bolshev(ThresholdVector(random_sorted(gen, n, 0.001)));
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("long ill-conditioned vectors are reported, not clamped") {
  std::mt19937_64 gen(81);
  for (std::size_t n : {120u, 200u}) {
    const ThresholdVector a(random_sorted(gen, n, 1.0));
    try {
      const double p = bolshev(a);
      CHECK(p >= -1e-10);
      CHECK(p <= 1.0 + 1e-10);
    } catch (const std::runtime_error&) {
      CHECK(true);
    }
  }
}

TEST_CASE("threshold vector validation") {
  CHECK_THROWS_AS(ThresholdVector({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(ThresholdVector({-0.1}), std::invalid_argument);
  CHECK_THROWS_AS(ThresholdVector({1.1}), std::invalid_argument);
  CHECK_THROWS_AS(ThresholdVector({std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(ThresholdVector(std::vector<double>(201, 0.0)), std::length_error);
}

TEST_CASE("Dirac-uniform thresholds: independence reduces to the critical values") {
  const auto t = dirac_uniform_thresholds(CopulaModel::independence(), 3, 3, 0.15, 1, 1.0);
  REQUIRE(t.size() == 2);
  CHECK(t[0] == doctest::Approx(0.10).epsilon(1e-14));
  CHECK(t[1] == doctest::Approx(0.15).epsilon(1e-14));
}

TEST_CASE("Dirac-uniform thresholds: k = m - 1 leaves one nonzero entry") {
  const auto model = CopulaModel::clayton(1.5);
  const std::size_t m = 20, m0 = 16;
  const double q = 0.05, z = 0.7;
  const auto t = dirac_uniform_thresholds(model, m, m0, q, m - 1, z);
  REQUIRE(t.size() == m0 - 1);
  for (std::size_t j = 0; j + 1 < t.size(); ++j) CHECK(t[j] == 0.0);
  CHECK(t[m0 - 2] == doctest::Approx(std::exp(-z * model.psi_inv(q))).epsilon(1e-13));
}

TEST_CASE("Dirac-uniform thresholds: Clayton eta = 1, m = 4, q = 0.2, k = 2, z = 2") {
  // psi^{-1}(x) = 1/x - 1; q_3 = 0.15, q_4 = 0.2
  const auto t = dirac_uniform_thresholds(CopulaModel::clayton(1.0), 4, 4, 0.2, 2, 2.0);
  REQUIRE(t.size() == 3);
  CHECK(t[0] == 0.0);
  CHECK(t[1] == doctest::Approx(std::exp(-2.0 * (1.0 / 0.15 - 1.0))).epsilon(1e-12));
  CHECK(t[2] == doctest::Approx(std::exp(-8.0)).epsilon(1e-12));
}

TEST_CASE("Dirac-uniform thresholds: log-z form and argument checks") {
  const auto model = CopulaModel::gumbel(2.0);
  const auto a = dirac_uniform_thresholds(model, 20, 16, 0.05, 8, 0.3);
  const auto b = dirac_uniform_thresholds_log_z(model, 20, 16, 0.05, 8, std::log(0.3));
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-13));
  CHECK_THROWS_AS(dirac_uniform_thresholds(model, 20, 16, 0.05, 4, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(dirac_uniform_thresholds(model, 20, 16, 0.05, 20, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(dirac_uniform_thresholds(model, 20, 16, 0.05, 8, 0.0), std::invalid_argument);
}

TEST_CASE("G_k increases with z") {
  const auto model = CopulaModel::clayton(2.0);
  for (std::size_t k = 5; k <= 19; k += 2) {
    double prev = 0.0;
    for (double z = 1e-3; z < 50.0; z *= 1.7) {
      const double g = bolshev(dirac_uniform_thresholds(model, 20, 16, 0.05, k, z));
      CHECK(g >= prev - 1e-14);
      prev = g;
    }
  }
}
