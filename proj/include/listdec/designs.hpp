#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "listdec/periodic.hpp"

namespace listdec {

// Certificate written by design_verify after an exhaustive scan: every
// r-dimensional subspace W satisfies  sum_H dim(W meet H) <= d.
struct DesignCertificate {
  size_t r = 0;
  size_t d = 0;
};

// A family of dim-`dim` subspaces of F_q^ambient.  Members are genuine
// subspaces (offset zero, canonical basis).  Sampling leaves `certified`
// unset; only the exhaustive verifier fills it in.
struct SubspaceDesign {
  FieldPtr field;
  size_t ambient = 0;
  size_t dim = 0;
  std::vector<AffineSubspace> members;
  std::optional<DesignCertificate> certified;
};

// Designs at increasing block lengths.  Level i (1-based) lives in
// F_q^{lengths[i-1]}, has cardinality lengths[i]/lengths[i-1], and must be
// certified with r = ranks[i-1] and certified bound d <= ranks[i] before the
// cascade is usable for pruning.
struct CascadedDesign {
  FieldPtr field;
  std::vector<size_t> lengths;  // m_0 .. m_l, each dividing the next
  std::vector<size_t> ranks;    // r_0 .. r_l, non-decreasing
  std::vector<SubspaceDesign> levels;
};

// `count` independent uniform dim-`dim` subspaces, one forked stream per
// member: a dim x ambient matrix is drawn and redrawn until it has full row
// rank.  Deterministic in `seed`.
SubspaceDesign design_sample(FieldPtr field, size_t ambient, size_t dim, size_t count,
                             uint64_t seed);

// Number of r-dimensional subspaces of F_q^n, saturating at cap + 1.
uint64_t subspace_count_capped(uint64_t q, size_t n, size_t r, uint64_t cap);

// Every r-dimensional subspace of F_q^n exactly once, as canonical RREF
// basis rows, ordered by pivot-column profile and then lexicographically by
// the free entries.  TooLarge when the count exceeds `cap`.
std::vector<std::vector<Vec>> subspace_enumerate(const Field& F, size_t n, size_t r,
                                                 uint64_t cap = kEnumerationCap);

// sum_H dim(W meet H) for one W via the rank identity
// dim(W meet H) = rank W + dim H - rank [W; H].
size_t design_sum(const SubspaceDesign& D, const std::vector<Vec>& W_rows);

// Exact max of design_sum over all r-dimensional W, by exhaustive scan.
// Stamps certified = (r, max) on D and returns the max.
size_t design_verify(SubspaceDesign& D, size_t r, uint64_t cap = kEnumerationCap);

// Members of T whose j'th block lies in the j'th design member, computed by
// walking the blocks in order and narrowing an affine frontier at each step.
// With the certificate covering T's extension rank, the result's dimension
// never exceeds certified d.
AffineSubspace design_prune(const SubspaceDesign& D, const PeriodicSubspace& T);

// The product H_1 x ... x H_b as a subspace of F_q^{b * ambient}; dimension
// is the sum of the member dimensions.
AffineSubspace precode_subspace(const Field& F, const std::vector<AffineSubspace>& members);

// Sample-and-verify construction: level i draws dims[i-1]-dimensional
// subspaces in F_q^{lengths[i-1]} until a draw certifies with bound at most
// ranks[i], retrying a bounded number of times before VerificationFailed.
CascadedDesign cascade_build(FieldPtr field, std::vector<size_t> lengths,
                             std::vector<size_t> ranks, std::vector<size_t> dims,
                             uint64_t seed);

// The subspace of F_q^kappa cut out by all levels of C at once: for every
// level i and every lengths[i]-sized window, the window must lie in the
// product of that level's members, and all coordinates past lengths.back()
// must vanish.
AffineSubspace canonical_subspace(const CascadedDesign& C, size_t kappa);

// Intersection of T with the canonical subspace, narrowed level by level and
// window by window.  For T with extension rank at most ranks[0] whose
// projections stay periodic at every grouping (the producers in this library
// guarantee that), the result has dimension at most ranks.back().
AffineSubspace cascade_prune(const CascadedDesign& C, const PeriodicSubspace& T, size_t kappa);

// Text form: one header line (q, ambient, dim, count, certificate) followed
// by dim basis rows per member.  Parsing needs the field to interpret the
// element tokens and rejects a header whose q disagrees with it.
std::string design_to_string(const SubspaceDesign& D);
SubspaceDesign design_from_string(const FieldPtr& field, const std::string& text);

}  // namespace listdec
