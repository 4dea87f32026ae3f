#pragma once

#include <cstdint>
#include <random>

namespace extinction_lab {

/// Seed for stream `index` under master seed `master`. Two rounds of the
/// SplitMix64 finalizer so neighbouring indices land far apart.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index);

/// Reproducible random stream. Conversions to real numbers are done here
/// rather than through <random> distributions, whose output is
/// implementation-defined, so a (master, index) pair yields the same
/// sequence with every standard library.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1).
  double uniform_open() {
    return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
  }

  /// Exponential with the given rate.
  double exponential(double rate);

 private:
  std::mt19937_64 engine_;
};

}  // namespace extinction_lab
