#pragma once

#include <cstdint>

namespace listdec {

// The single randomness source of the library.  Everything that samples
// (field elements, error positions, design candidates) draws from one of
// these streams, so a fixed seed reproduces every artifact byte for byte.
struct SplitMix64 {
  uint64_t state = 0;

  uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// Independent stream for trial `index` under a master seed.  Used by the CLI
// so that --jobs N gives the same per-trial randomness as a serial run.
inline SplitMix64 fork_stream(uint64_t seed, uint64_t index) {
  SplitMix64 g{seed ^ (0x9e3779b97f4a7c15ULL * (index + 1))};
  return SplitMix64{g.next()};
}

// Uniform draw from [0, n): 64-bit words >= n * floor(2^64 / n) are rejected,
// the rest reduced mod n.  n = 0 is a logic error.
uint64_t uniform_below(SplitMix64& g, uint64_t n);

}  // namespace listdec
