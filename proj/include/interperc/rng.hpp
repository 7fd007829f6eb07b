#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace interperc {

/// Mixing step of SplitMix64; used to derive stream ids.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// PCG-XSH-RR 32-bit generator with a selectable stream.
struct Pcg32 {
  using result_type = std::uint32_t;

  std::uint64_t state = 0;
  std::uint64_t inc = 1;  // stream selector (odd)

  Pcg32() = default;
  Pcg32(std::uint64_t seed, std::uint64_t stream_id) {
    inc = (stream_id << 1u) | 1u;
    state = 0;
    (*this)();
    state += seed;
    (*this)();
  }

  std::uint32_t operator()() {
    std::uint64_t old = state;
    state = old * 6364136223846793005ULL + inc;
    auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  std::uint64_t next_u64() {
    std::uint64_t hi = (*this)();
    return (hi << 32) | (*this)();
  }

  static constexpr std::uint32_t min() { return 0u; }
  static constexpr std::uint32_t max() { return 0xFFFFFFFFu; }

  friend bool operator==(const Pcg32&, const Pcg32&) = default;
};

/// A reproducible random stream identified by (seed, stream_id).
///
/// Splitting rule: the child for tag `t` has stream id
/// splitmix64(stream_id ^ splitmix64(t)). Children of distinct tags (and
/// grandchildren along distinct tag paths) select different PCG increments,
/// which gives independent sequences for all practical purposes. The root of
/// every experiment is RngStream{seed, 0}.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  [[nodiscard]] RngStream derive(std::uint64_t tag) const {
    return {seed, splitmix64(stream_id ^ splitmix64(tag))};
  }
  template <typename... Tags>
  [[nodiscard]] RngStream derive(std::uint64_t tag, Tags... rest) const {
    return derive(tag).derive(static_cast<std::uint64_t>(rest)...);
  }

  [[nodiscard]] Pcg32 engine() const { return Pcg32(seed, stream_id); }

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

/// Purpose tags for derived streams.
namespace tag {
inline constexpr std::uint64_t origin = 0x6f726967;    // straddling interval
inline constexpr std::uint64_t right = 0x72696768;     // upward continuation
inline constexpr std::uint64_t left = 0x6c656674;      // downward continuation
inline constexpr std::uint64_t shift = 0x73686966;     // periodic offset
inline constexpr std::uint64_t thin = 0x7468696e;      // thinning coins
inline constexpr std::uint64_t line = 0x6c696e65;      // per-line streams
inline constexpr std::uint64_t trial = 0x74726961;     // per-trial streams
inline constexpr std::uint64_t param = 0x70617261;     // random parameters
}  // namespace tag

// Distributions are written out explicitly: the std:: distributions are not
// reproducible across standard library implementations.

/// Uniform on the open interval (0, 1), 53-bit resolution.
inline double uniform01(Pcg32& rng) {
  constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(rng.next_u64() >> 11) + 0.5) * scale;
}

inline double uniform(Pcg32& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Exponential with the given rate.
inline double exponential(Pcg32& rng, double rate) {
  return -std::log(uniform01(rng)) / rate;
}

/// Standard normal via Box-Muller (one variate per call).
inline double standard_normal(Pcg32& rng) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Uniform integer in [0, n) by rejection.
inline std::uint64_t uniform_index(Pcg32& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do {
    r = rng.next_u64();
  } while (r >= limit);
  return r % n;
}

}  // namespace interperc
