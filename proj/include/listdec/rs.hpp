#pragma once

#include <variant>

#include "listdec/designs.hpp"
#include "listdec/hse.hpp"
#include "listdec/trace.hpp"

namespace listdec {

// Message restriction: nothing, one design member per coefficient block, or
// a hashed evaluation set over regrouped blocks.
using RsPrecode = std::variant<std::monostate, SubspaceDesign, HseSet>;

// Evaluation code over an extension field whose evaluation points all lie in
// the base subfield.  Messages are polynomials of degree below k over the
// extension; only their values at base-field points are transmitted, which
// ties the received symbols to the message through the Frobenius map.
struct RsCodeSpec {
  FieldPtr field;            // the extension; its immediate base supplies the points
  size_t n = 0, k = 0;
  std::vector<Elem> alphas;  // n distinct base-field elements
  RsPrecode precode;

  const FieldPtr& base() const { return field->base(); }
  size_t m() const { return field->deg(); }
};

// Validates the parameter window 1 <= k < n <= q, point distinctness, and
// the shape of any precode (design: one member per block over the base with
// block length m; hashed set: ambient k*m with a block size divisible by m).
RsCodeSpec rs_make(FieldPtr field, size_t n, size_t k, std::vector<Elem> alphas,
                   RsPrecode precode = {});

Vec rs_encode(const RsCodeSpec& spec, const Poly& f);  // DegreeTooHigh at deg >= k

// The decoder's linear form A[0] + A[1] Y_1 + ... + A[s] Y_s with
// deg A[0] <= D+k-1 and deg A[i] <= D.
struct InterpolationPoly {
  size_t s = 0;
  size_t D = 0;
  std::vector<Poly> A;
};

// Largest error count the interpolation argument covers: s(n-k)/(s+1).
size_t rs_radius(const RsCodeSpec& spec, size_t s);

// Nonzero form vanishing on every received tuple
// (alpha_i, y_i, y_i^q, ..., y_i^(q^(s-1))).  The solution is the first
// kernel vector of the constraint system in column order, which makes the
// whole decoding transcript reproducible.
InterpolationPoly rs_interpolate(const RsCodeSpec& spec, const Vec& y, size_t s);

// Coefficient vectors solving the functional equation
//     A[0] + A[1] f + A[2] f^sigma + ... + A[s] f^(sigma^(s-1)) = 0,
// as a periodic subspace over the base field with k blocks of size m and
// rank bound s-1.  A power of X common to every A[i] is divided out first;
// afterwards some A[i], i >= 1, must have a nonzero constant term (the
// interpolation step always delivers this; InternalInvariant otherwise).
// The block equations transcribe the coefficient identities of X^0..X^(k-1);
// identities at higher powers of X, when the degree profile admits any, can
// only shrink the true solution set, so the listed members form a superset
// that the caller filters by re-encoding.
PeriodicSubspace rs_solve(const FieldPtr& field, size_t k, const InterpolationPoly& Q);

// Full pipeline: interpolate, solve, prune through the precode, re-encode
// every candidate and keep those within distance e of y.  The returned list
// is therefore exactly the close-by codewords (restricted to the precode).
// RadiusTooLarge above rs_radius; EnumerationTooLarge when the pruned
// subspace still holds more than `cap` points.  A non-null `trace` receives
// the stage measurements of the run.
std::vector<Poly> rs_list_decode(const RsCodeSpec& spec, const Vec& y, size_t s, size_t e,
                                 uint64_t cap = kEnumerationCap, DecodeTrace* trace = nullptr);

}  // namespace listdec
