#pragma once

#include <cstdint>
#include <cmath>
#include <string_view>

namespace walkplot {

// Deterministic xoshiro256** generator with hand-rolled distributions.
// std::mt19937 is portable but the standard distributions are not; every
// sample drawn here is bit-identical across platforms and compilers.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    // splitmix64 expansion of the seed into the full state
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n), n >= 1; rejection sampling keeps it unbiased
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // standard normal via Box-Muller (cached spare)
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  bool bernoulli(double p) { return uniform() < p; }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Named sub-stream derivation: all pipeline randomness flows from one global
// seed through (name, index) keyed streams, so stages re-run independently
// yet reproducibly.
inline Rng derive_stream(std::uint64_t seed, std::string_view name,
                         std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t x = seed ^ fnv1a64(name);
  std::uint64_t h = Rng::splitmix64(x);
  x ^= a * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL;
  h ^= Rng::splitmix64(x);
  x ^= b * 0xd6e8feb86659fd93ULL + 0xca5a826395121157ULL;
  h ^= Rng::splitmix64(x);
  return Rng(h);
}

}  // namespace walkplot
