#include <doctest.h>

#include "copfdr/rng.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

using copfdr::RandomStream;

TEST_CASE("same seed gives the same sequence") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("substreams depend only on the parent key") {
  RandomStream parent(7);
  const RandomStream before = parent.substream(3);
  for (int i = 0; i < 10; ++i) parent.next_u64();
  RandomStream after = parent.substream(3);
  RandomStream copy = before;
  for (int i = 0; i < 20; ++i) CHECK(copy.next_u64() == after.next_u64());

  std::set<std::uint64_t> keys;
  for (std::uint64_t i = 0; i < 1000; ++i) keys.insert(RandomStream(7).substream(i).key());
  CHECK(keys.size() == 1000);
  CHECK(RandomStream(7).substream(0).key() != RandomStream(8).substream(0).key());
}

TEST_CASE("uniforms stay in the open interval with the right moments") {
  RandomStream s(1);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(sum2 / n - mean * mean - 1.0 / 12.0) < 2e-3);
}

TEST_CASE("exponential and normal moments") {
  RandomStream s(2);
  const int n = 200000;
  double se = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < n; ++i) {
    se += s.exponential();
    const double z = s.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(std::abs(se / n - 1.0) < 4.0 / std::sqrt(n));
  CHECK(std::abs(sn / n) < 4.0 / std::sqrt(n));
  CHECK(std::abs(sn2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("gamma variates match mean and variance for shapes on both sides of 1") {
  for (double shape : {0.05, 0.5, 1.0, 3.7}) {
    CAPTURE(shape);
    RandomStream s(11);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double g = std::exp(s.log_gamma_variate(shape));
      sum += g;
      sum2 += g * g;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean - shape) < 4.0 * std::sqrt(shape / n));
    CHECK(std::abs(var - shape) / shape < 0.1);
  }
}

TEST_CASE("tiny gamma shapes stay finite in log space") {
  RandomStream s(5);
  for (int i = 0; i < 1000; ++i) {
    const double lg = s.log_gamma_variate(1e-3);
    REQUIRE(std::isfinite(lg));
  }
  CHECK_THROWS_AS(s.log_gamma_variate(0.0), std::invalid_argument);
  CHECK_THROWS_AS(s.log_gamma_variate(-1.0), std::invalid_argument);
}
