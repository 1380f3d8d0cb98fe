#include "rmenum/rng.hpp"

#include <stdexcept>

namespace rmenum {
namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

RngStream RngStream::split(std::initializer_list<std::uint64_t> label) const {
  std::uint64_t h = mix(seed_ ^ 0x5851f42d4c957f2dULL);
  for (std::uint64_t part : label) h = mix(h ^ mix(part));
  return RngStream(h);
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("RngStream::below: bound must be positive");
  // Reject the biased tail.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

}  // namespace rmenum
