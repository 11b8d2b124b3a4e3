#pragma once

#include <cstdint>

namespace arena {

// SplitMix64: a 64-bit shift-register generator with splittable seeding.
// The algorithm is fixed here (not delegated to any runtime's default
// generator) so that seeded experiments reproduce byte-for-byte across
// platforms and language ports.
//
//   state' = state + 0x9E3779B97F4A7C15
//   z = state'; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   output = z ^ (z >> 31)
//
// split(stream) derives an independent generator by mixing the stream
// index through one output step of the parent seed.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) via rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  Prng split(std::uint64_t stream) const {
    Prng child(state_ ^ (0xA5A5A5A5A5A5A5A5ULL + stream));
    child.next();
    return child;
  }

 private:
  std::uint64_t state_;
};

}  // namespace arena
