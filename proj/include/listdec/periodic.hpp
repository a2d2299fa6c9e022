#pragma once

#include "listdec/linalg.hpp"

namespace listdec {

// Affine subspace of F_q^{b*delta} cut out block by block: x is a member iff
// for every block i
//     a[i] + sum_{j<i} A[i][j] * block_j(x) + B * block_i(x) = 0
// and the trailing `pad` coordinates are zero.  dim ker(B) <= rank, so each
// consistent prefix admits at most q^rank extensions into the next block.
struct PeriodicSubspace {
  FieldPtr field;
  size_t delta = 0;
  size_t blocks = 0;
  size_t rank = 0;
  Mat B;
  std::vector<Vec> a;               // one offset vector per block
  std::vector<std::vector<Mat>> A;  // A[i][j], j < i
  size_t pad = 0;                   // zero coordinates appended past the true ambient
  bool is_empty = false;            // decided at construction on the stacked system

  size_t ambient() const { return delta * blocks; }
};

// Validates shapes and the kernel bound, then decides emptiness by solving
// the stacked block-triangular system once.
PeriodicSubspace periodic_make(FieldPtr field, size_t delta, size_t blocks, size_t rank,
                               Mat B, std::vector<Vec> a, std::vector<std::vector<Mat>> A,
                               size_t pad = 0);

bool periodic_member(const PeriodicSubspace& H, const Vec& x);

// All consistent extensions of a prefix of j-1 whole blocks into block j,
// as a subspace of F_q^delta; Empty when the prefix violates an earlier
// block equation or the block system is inconsistent.
AffineSubspace periodic_extend(const PeriodicSubspace& H, const Vec& prefix);

// Exact dimension of the projection onto the first j blocks; always at most
// j*rank.  H must be non-empty.
size_t periodic_project_dim(const PeriodicSubspace& H, size_t j);

// Same point set at block size u*delta with b/u blocks and rank bound
// u*rank, built by stacking u consecutive block equations.  Requires the
// intra-group coefficients to repeat from group to group (true for every
// producer in this library); NotDivisible / ShapeMismatch otherwise.
PeriodicSubspace periodic_regroup(const PeriodicSubspace& H, size_t u);

// Exhaustive multi-scale inspection: for every scale l, the projection onto
// whole groups of l blocks must again be periodic with rank bound l*rank,
// witnessed by a single subspace covering every prefix's extension coset.
bool ultra_check(const PeriodicSubspace& H, uint64_t cap = kEnumerationCap);

// The same point set as a flat affine subspace of F_q^{b*delta}.
AffineSubspace periodic_to_affine(const PeriodicSubspace& H);

std::vector<Vec> periodic_enumerate(const PeriodicSubspace& H, uint64_t cap = kEnumerationCap);

}  // namespace listdec
