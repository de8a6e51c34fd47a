#include "effrate/rng.hpp"

namespace effrate {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed ^ (0x632be59bd9b4e019ULL * (index + 1));
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

}  // namespace effrate
