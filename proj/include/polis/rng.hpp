#ifndef POLIS_RNG_HPP
#define POLIS_RNG_HPP

#include <cstdint>

namespace polis {

// PCG-XSH-RR 64/32 (O'Neill 2014). We carry our own generator instead of the
// <random> distributions because std::uniform_int_distribution and friends are
// not bit-portable across standard library implementations; every draw
// primitive below is fully specified by this header so traces can be
// reproduced from a seed alone.
class Pcg32 {
 public:
  static constexpr std::uint64_t kDefaultStream = 0xda3e39cb94b95bdbull;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = kDefaultStream)
      : state_(0u), inc_((stream << 1u) | 1u) {
    next_u32();
    state_ += seed;
    next_u32();
  }

  std::uint32_t next_u32() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ull + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  // High word drawn first.
  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return (hi << 32u) | lo;
  }

  // Uniform on [0, 1) with 53-bit resolution; consumes one next_u64().
  double next_double() {
    return static_cast<double>(next_u64() >> 11u) * 0x1.0p-53;
  }

  // Unbiased uniform integer on [0, n); rejection sampling on next_u32().
  std::uint32_t uniform_int(std::uint32_t n) {
    const std::uint32_t threshold = (-n) % n;
    for (;;) {
      const std::uint32_t r = next_u32();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform on [lo, hi); one next_double().
  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30u;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27u;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31u;
  return z;
}

// Child seed `index` of a root seed. Used everywhere a root seed must expand
// into independent substreams (estimator replicates, optimizer executions,
// per-evaluation estimator roots), so parallel schedules cannot change results.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return mix64(root + (index + 1u) * 0x9e3779b97f4a7c15ull);
}

// Fixed stream selectors, one per purpose, so the same numeric seed given to
// different commands never yields correlated draws.
inline constexpr std::uint64_t kStreamMap = 1;
inline constexpr std::uint64_t kStreamSim = 2;
inline constexpr std::uint64_t kStreamOptimizer = 3;

}  // namespace polis

#endif  // POLIS_RNG_HPP
