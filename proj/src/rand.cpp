#include "listdec/rand.hpp"

#include <stdexcept>

namespace listdec {

uint64_t uniform_below(SplitMix64& g, uint64_t n) {
  if (n == 0) throw std::logic_error("uniform_below: n must be positive");
  // limit = n * floor(2^64 / n); limit == 0 encodes 2^64 (no rejection).
  uint64_t q = UINT64_MAX / n;
  if (UINT64_MAX % n + 1 == n) ++q;
  uint64_t limit = q * n;
  for (;;) {
    uint64_t w = g.next();
    if (limit == 0 || w < limit) return w % n;
  }
}

}  // namespace listdec
