// SPDX-License-Identifier: Apache-2.0
//
// Seedable pseudorandom generator with a fixed, documented algorithm so
// protocol runs are reproducible bit-for-bit across platforms.
#pragma once

#include <cstdint>
#include <string>

namespace qcorr {

// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, one multiply-xorshift
// update per output. Used directly as the uniform source; substreams are
// derived by mixing (seed, index) so parallel round simulation stays
// deterministic.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr const char* algorithm = "splitmix64";

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  int uniform_int(int n) { return static_cast<int>(uniform() * n); }

  bool bernoulli(double p) { return uniform() < p; }

  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return SplitMix64(mixer.next_u64());
  }

 private:
  std::uint64_t state_;
};

}  // namespace qcorr
