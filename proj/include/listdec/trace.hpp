#pragma once

#include <cstddef>
#include <cstdint>

namespace listdec {

// Stage measurements of one list-decoding run.  The pipelines fill this on
// request so that command-line transcripts report the same numbers the
// library computed, not a re-derivation that could drift.
struct DecodeTrace {
  uint64_t D = 0;          // interpolation degree parameter actually used
  size_t threshold = 0;    // least agreement a candidate must reach
  size_t solver_dim = 0;   // affine dimension of the functional equation solutions
  size_t pruned_dim = 0;   // affine hull dimension of the candidates after precoding
  size_t list_size = 0;    // survivors of the re-encode filter
};

}  // namespace listdec
