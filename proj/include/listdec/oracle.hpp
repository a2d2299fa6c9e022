#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "listdec/linalg.hpp"

namespace listdec {

// Guard shared by the brute-force reference implementations.  Checked before
// a scan starts so a bad parameter fails fast instead of spinning.  The
// references exist to cross-check the production paths; nothing here is
// tuned for speed.
struct OracleBudget {
  uint64_t max_enum = 1ULL << 20;
  double max_seconds = 60.0;  // advisory only; scans are sized by max_enum
};

// Indices in [0, domain) for which `holds` is true, ascending.
std::vector<uint64_t> brute_equation_members(const std::function<bool(uint64_t)>& holds,
                                             uint64_t domain, const OracleBudget& budget = {});

struct SubspaceDesign;

// Total intersection dimension sum over the members H of D for one subspace
// W given by spanning rows.  Each dim(W meet H) is read off the nullspace of
// the column-concatenated bases: kernel vectors are mapped back into W and
// the resulting span is counted point by point.  No rank identity involved,
// so this checks design_sum through a disjoint computation.
size_t brute_design_sum(const SubspaceDesign& D, const std::vector<Vec>& W_rows,
                        const OracleBudget& budget = {});

struct RsCodeSpec;

// Every message polynomial whose encoding lies within distance e of y, found
// by walking all q^(mk) messages in canonical coefficient order.  Evaluation
// is a local Horner loop over field primitives; nothing is borrowed from the
// encoder under test.  Ignores any precode on the spec.
std::vector<Poly> brute_rs_decode(const RsCodeSpec& spec, const Vec& y, size_t e,
                                  const OracleBudget& budget = {});

struct HermitianTower;
struct FoldedInterpolation;

// Residual series c_0..c_{n-1} of A_0 + sum_i A_i * (f twisted i-1 times),
// f = kappa(msg), computed through naive truncated series convolutions over
// the published monomial expansions; nothing is borrowed from the block
// transcription in folded_solve.
Vec brute_folded_residual(const HermitianTower& T, size_t k, const FoldedInterpolation& Q,
                          const Vec& msg, uint64_t n, const OracleBudget& budget = {});

// The membership predicate of folded_solve's listed set: the k residual
// coefficients starting at the smallest valuation among A_1..A_s all vanish.
bool brute_folded_window_member(const HermitianTower& T, size_t k, const FoldedInterpolation& Q,
                                const Vec& msg, const OracleBudget& budget = {});

}  // namespace listdec
