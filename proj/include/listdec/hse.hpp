#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "listdec/periodic.hpp"

namespace listdec {

// Parameters of the hashed set construction over F_q^k, k = delta * blocks.
// zeta is the rational zeta_num / zeta_den; zeta * delta and zeta * blocks
// must be integers, and zeta <= 1/2 so that truncation to the first
// zeta * delta coordinates is surjective.  lambda = 0 lets the builder pick
// min(k, 64).
struct HseParams {
  FieldPtr field;
  size_t delta = 0;
  size_t blocks = 0;
  size_t zeta_num = 0;
  size_t zeta_den = 1;
  size_t lambda = 0;
  uint64_t seed = 0;
};

// The set itself: one random polynomial per prefix length, plus a final one
// hashing the whole prefix.  A vector (y_1, z_1, ..., y_b', z_b'; w) belongs
// iff every z_j is the truncated hash of the y-prefix through P_j and w is
// the truncated hash of everything before it through Q.  Coefficient lists
// keep exactly lambda + 1 entries, leading zeros included, so the draw is
// reproducible coefficient by coefficient.
struct HseSet {
  HseParams params;
  size_t d_prime = 0;                   // (1 - zeta) * delta
  size_t b_prime = 0;                   // (1 - zeta) * blocks
  size_t zd = 0;                        // zeta * delta
  std::vector<FieldPtr> ext;            // ext[j-1] = extension of degree j * d_prime
  FieldPtr top;                         // extension of degree b_prime * delta
  std::vector<std::vector<Elem>> P;     // P[j-1] over ext[j-1], low to high
  std::vector<Elem> Q;                  // over top, low to high

  size_t k() const { return params.delta * params.blocks; }
  size_t k_prime() const { return b_prime * params.delta; }
  size_t input_len() const { return b_prime * d_prime; }
};

// Draws the polynomials from per-index forked streams of params.seed and
// builds the needed extension fields from the first irreducible polynomial
// in enumeration order.  MissingFieldSpec when such a field cannot be set
// up; BadDims for inconsistent parameters.
HseSet hse_build(const HseParams& params);

// Whether the parameters sit inside the regime where the randomized
// construction is proven to work for extension rank s (zeta below one
// third, s well below zeta * delta, and the field large enough for the
// union bound with c read off as lambda / k).  Informational: nothing
// refuses to run outside it.
bool hse_proven_regime(const HseSet& S, size_t s);

// Injective encoding: the y-blocks carry x verbatim, the z- and w-blocks
// carry the hashes.
Vec hse_encode(const HseSet& S, const Vec& x);

bool hse_member(const HseSet& S, const Vec& v);

// All of W meet the set, walked block by block: each frontier prefix is
// extended through its extension coset and kept only when the new block's
// hash constraint holds; the final block of hashes then follows uniquely.
// The frontier may never exceed frontier_cap (0 = the polynomial degree),
// else FrontierOverflow.
std::vector<Vec> hse_intersect(const HseSet& S, const PeriodicSubspace& W,
                               size_t frontier_cap = 0);

// Text form with every defining polynomial and coefficient spelled out;
// reloading through hse_from_string reproduces the set byte for byte.
std::string hse_to_string(const HseSet& S);
HseSet hse_from_string(const FieldPtr& field, const std::string& text);

}  // namespace listdec
