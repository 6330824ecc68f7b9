#pragma once

#include <cstdint>
#include <random>

namespace pfc {

// Deterministic random source. All randomness in the library flows through
// an explicitly passed Rng; there is no hidden global state. The generator
// is a Mersenne Twister (mt19937_64) and the uniform draws below are defined
// directly on its 64-bit output, so identical seeds give identical streams
// on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform double in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in {0, ..., bound-1}; bound must be positive.
  int uniform_int(int bound);

  // Mixes a base seed with a stream index into an independent-looking seed.
  // Used to hand out per-trial / per-sample generators whose results do not
  // depend on evaluation order.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 gen_;
};

}  // namespace pfc
