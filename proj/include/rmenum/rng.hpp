#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace rmenum {

// Seedable, splittable pseudo-random stream. A child stream is a pure
// function of (root seed, label path), never of how much the parent has been
// consumed, so parallel chains stay reproducible under any schedule.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0);

  RngStream split(std::initializer_list<std::uint64_t> label) const;

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on [0, bound); bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace rmenum
