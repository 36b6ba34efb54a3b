#include "ptm/rng.hpp"

#include "ptm/distributions.hpp"

namespace ptm {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed + kGolden) ^ mix64(stream * kGolden + 0x243f6a8885a308d3ULL))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  return mix64(key_ + counter * kGolden);
}

double CounterRng::uniform01(std::uint64_t counter) const {
  // 53 random bits, offset half a lattice step: strictly inside (0,1).
  return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t counter) const {
  return normal_quantile(uniform01(counter));
}

Vec CounterRng::normal_vec(std::uint64_t base, int d) const {
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = normal(base + static_cast<std::uint64_t>(i));
  return v;
}

}  // namespace ptm
