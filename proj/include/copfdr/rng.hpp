#pragma once

#include <array>
#include <cstdint>

namespace copfdr {

/// Splittable pseudo-random stream.
///
/// A stream is identified by a 64-bit key. `substream(i)` derives a child key
/// from the parent key alone, so the child does not depend on how many values
/// the parent has already produced. Replication r of an experiment with seed s
/// uses `RandomStream(s).substream(r)` and is reproducible regardless of which
/// thread runs it. The generator behind each key is xoshiro256** seeded through
/// splitmix64.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed);

  RandomStream substream(std::uint64_t index) const;

  std::uint64_t key() const noexcept { return key_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() noexcept;

  /// Unit exponential.
  double exponential() noexcept;

  /// Standard normal (Box-Muller, one value per call).
  double normal() noexcept;

  /// Logarithm of a Gamma(shape, 1) variate. Exact for every shape > 0:
  /// Marsaglia-Tsang for shape >= 1, and G(a) = G(a + 1) * U^(1/a) below 1,
  /// carried in log space so tiny shapes do not underflow.
  double log_gamma_variate(double shape);

private:
  std::uint64_t key_;
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace copfdr
