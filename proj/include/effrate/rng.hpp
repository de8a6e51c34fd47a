#pragma once

#include <cstdint>
#include <random>

namespace effrate {

/// Independent, reproducible random stream identified by (seed, index).
/// Substreams with distinct indices are seeded through SplitMix64 so that
/// neighbouring indices do not produce correlated Mersenne-Twister states.
class RngStream {
 public:
  using engine_type = std::mt19937_64;

  explicit RngStream(std::uint64_t seed, std::uint64_t index = 0);

  engine_type& engine() { return engine_; }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

 private:
  engine_type engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace effrate
