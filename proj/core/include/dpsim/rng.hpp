#pragma once

#include <cstdint>
#include <random>

namespace dpsim {

// splitmix64 step: bijective 64-bit mix used to derive well-separated child
// seeds from a master seed.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Stream-splitting rule: simulation k of a run seeded with master uses
// child_seed(master, k). Distinct (master, k) pairs give independent,
// reproducible streams.
constexpr std::uint64_t child_seed(std::uint64_t master,
                                   std::uint64_t stream) noexcept {
  return mix64(master ^ mix64(stream));
}

// One reproducible pseudo-random stream (mt19937_64 under the hood).
class RandomStream {
 public:
  RandomStream(std::uint64_t master, std::uint64_t stream)
      : gen_(child_seed(master, stream)) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t bits() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace dpsim
