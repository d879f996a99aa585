#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace cabalsim {

// Version tag for the generator algorithm. Bump if the sequence for a given
// (seed, stream_id) ever changes; published seeds are only reproducible
// within one version.
inline constexpr int kRngAlgorithmVersion = 1;

// Deterministic xoshiro256++ generator with splitmix64 state expansion.
//
// The standard <random> engines are portable but the distributions are not;
// everything downstream of next_u64() here is implemented by hand so that a
// (seed, stream_id) pair yields the same sequence on every platform.
// stream_id is intended to be the trial index, so sweeps can hand each trial
// an independent stream of the same master seed.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t a = seed;
    std::uint64_t b = stream_id ^ 0x6a09e667f3bcc909ull;  // stream 0 stays distinct from seed-only
    for (int i = 0; i < 4; ++i) {
      state_[i] = splitmix64(a) ^ splitmix64(b);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
      state_[0] = 0x9e3779b97f4a7c15ull;  // xoshiro state must be nonzero
    }
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() {
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Masked rejection keeps it exact and portable.
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
    std::uint64_t v;
    do {
      v = next_u64() & mask;
    } while (v >= n);
    return v;
  }

  bool bernoulli(double p) { return next_unit() < p; }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_;
};

}  // namespace cabalsim
