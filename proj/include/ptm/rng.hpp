#pragma once

#include <cstdint>

#include "ptm/types.hpp"

namespace ptm {

// Counter-based generator built on the SplitMix64 finalizer: every output is
// a pure function of (seed, stream, counter), so draw i of any stream can be
// produced independently of all others. That is what makes results identical
// regardless of evaluation order or thread count.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  // Uniform on the open interval (0,1).
  double uniform01(std::uint64_t counter) const;

  // Standard normal via the inverse CDF (no rejection, one counter per draw).
  double normal(std::uint64_t counter) const;

  // d iid standard normals at counters base, base+1, ..., base+d-1.
  Vec normal_vec(std::uint64_t base, int d) const;

  // Raw 64-bit output, useful for index shuffles.
  std::uint64_t bits(std::uint64_t counter) const;

  std::uint64_t key() const { return key_; }

private:
  std::uint64_t key_;
};

}  // namespace ptm
