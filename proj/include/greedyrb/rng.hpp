#pragma once

#include <cstdint>
#include <random>

namespace greedyrb {

// All randomness in the library flows through mt19937_64 seeded from
// splitmix64-derived sub-seeds, with fixed transforms for the uniform and
// Gaussian draws below. The C++ standard pins down mt19937_64 bit-exactly,
// so identical seeds give identical training sets on every platform.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed; stream tags keep snapshot generation,
// noise injection and solver restarts decoupled from each other.
inline std::uint64_t subseed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream ^ 0xa02bdbf7bb3c0a7ULL));
}

namespace stream {
inline constexpr std::uint64_t snapshots = 1;
inline constexpr std::uint64_t noise = 2;
inline constexpr std::uint64_t restarts = 3;
inline constexpr std::uint64_t samples = 4;
}  // namespace stream

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform on [0, 1): 53 mantissa bits of one 64-bit draw
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; one value per pair of draws, the sine branch is discarded
  double gaussian() {
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::uint64_t next_u64() { return gen_(); }

  // uniform integer in [0, n) by rejection, n > 0
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return v % n;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace greedyrb
