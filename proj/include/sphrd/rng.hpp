#pragma once

#include <array>
#include <cstdint>

namespace sphrd {

/// xoshiro256** 1.0 (Blackman and Vigna, 2018), seeded through splitmix64.
/// Output is identical on every platform for a given seed.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  /// Advances the state by 2^128 outputs. Successive jumps give
  /// non-overlapping substreams.
  void jump();

  /// Uniform double in (0, 1] with 53 random bits.
  double uniform_open_closed();

 private:
  std::array<std::uint64_t, 4> s_;
};

/// splitmix64 step; also used to derive per-task seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Standard normal variates by the Box-Muller transform, cached in pairs.
class NormalSampler {
 public:
  explicit NormalSampler(Xoshiro256& engine) : engine_(engine) {}
  double operator()();

 private:
  Xoshiro256& engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sphrd
