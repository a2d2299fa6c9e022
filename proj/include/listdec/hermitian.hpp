#pragma once

#include <variant>

#include "listdec/designs.hpp"
#include "listdec/hse.hpp"
#include "listdec/trace.hpp"

namespace listdec {

// Nested Artin-Schreier extensions over F_q, q = r^2: level i+1 adjoins a
// root of X^r + X = x_i^{r+1}.  gamma is the canonical primitive element of
// F_q (first of full order in enumeration order) and xi its inverse; the
// diagonal substitution x_i -> gamma^{(r+1)^{i-1}} x_i generates a cyclic
// symmetry of order q-1 used for folding.
struct HermitianTower {
  uint64_t r = 0;
  size_t e = 0;
  FieldPtr field;  // F_{r^2}
  Elem gamma;
  Elem xi;
  uint64_t genus = 0;
  bool r_ge_2e = false;  // the distance analysis assumes r >= 2e; recorded, not enforced
};

// Builds the field, the generator pair, and the genus.  r must be a prime
// power and e at least 2.
HermitianTower hermitian_make(uint64_t r, size_t e);

// Exact genus of the level-e curve, by integer arithmetic; grows like
// r^e * (1+1/r)^e / 2 and always stays below e * r^e.
uint64_t hermitian_genus(uint64_t r, size_t e);

// A rational point: e affine coordinates satisfying every level equation,
// or the single point at infinity.  The all-zero tuple is the origin, the
// common zero of every x_i.
struct Place {
  enum class Kind { Affine, Infinity };
  Kind kind = Kind::Affine;
  std::vector<Elem> alpha;

  bool operator==(const Place& o) const { return kind == o.kind && alpha == o.alpha; }
  bool operator!=(const Place& o) const { return !(*this == o); }
};

Place place_infinity();
Place place_origin(const HermitianTower& T);

// Affine with e in-field coordinates satisfying the level equations, or
// infinity with none.
bool place_check(const HermitianTower& T, const Place& P);

// All r^{e+1} affine rational points: each choice of alpha_1 in F_q admits
// exactly r roots of X^r + X = alpha_1^{r+1}, and so on up the levels.
// Ordered by coordinate enumeration index, level by level.
std::vector<Place> tower_places(const HermitianTower& T);

// Functions with poles only at infinity of order at most l, spanned by the
// monomials x_1^{j_1} ... x_e^{j_e} of weight sum_i j_i r^{e-i} (r+1)^{i-1}
// at most l, with j_i < r above level one (the level equation rewrites any
// higher power downward).  The weights are the pole orders at infinity and
// are pairwise distinct, which makes the family a basis; monomials are
// sorted by weight, so prefixes of the list span the smaller spaces.
struct RrBasis {
  uint64_t l = 0;
  std::vector<std::vector<uint32_t>> monomials;  // exponent tuples j_1..j_e
  std::vector<uint64_t> weights;                 // parallel to monomials

  size_t dim() const { return monomials.size(); }
};

RrBasis rr_basis(const HermitianTower& T, uint64_t l);

// Value of sum_t coeffs[t] * monomial_t at an affine place.
// PoleAtInfinity when P is the point at infinity.
Elem rr_eval(const HermitianTower& T, const RrBasis& B, const Vec& coeffs, const Place& P);

// P^{sigma^j}: coordinate i is scaled by xi^{j (r+1)^{i-1}}.  Fixes the
// origin and infinity; j may be negative, everything is periodic in q-1.
Place sigma_on_place(const HermitianTower& T, const Place& P, int64_t j);

// Coordinates of f^{sigma^j} over the same basis: the coefficient of a
// monomial with exponents (j_1..j_e) picks up gamma^{j sum_i j_i (r+1)^{i-1}}.
// The two actions fit together as f(P^{sigma^j}) = f^{sigma^{-j}}(P).
Vec sigma_on_function(const HermitianTower& T, const RrBasis& B, const Vec& coeffs, int64_t j);

// Truncated expansion at the origin in the local parameter x = x_1:
// coeff[t] multiplies x^{valuation+t}, coefficients are decided for every
// exponent below `order`, and coeff.front() is nonzero unless the series is
// zero to that order (then coeff is empty and valuation equals order).
struct LocalSeries {
  uint64_t order = 0;
  uint64_t valuation = 0;
  std::vector<Elem> coeff;
};

// Expansions of x_1..x_e to the given order: the first is x itself, and
// each next solves S^r + S = (previous)^{r+1} coefficient by coefficient
// along the branch through the origin.  x_i has valuation (r+1)^{i-1}.
std::vector<LocalSeries> local_expansions(const HermitianTower& T, uint64_t order);

// Dense coefficient list c_0..c_{order-1}.
Vec local_series_dense(const Field& F, const LocalSeries& S);

// Matrix of the map reading a function of L((k+2g-1) Pinf), in basis
// coordinates, off to the first k coefficients of its expansion at the
// origin.  The map is onto and its kernel has dimension exactly g.
Mat ev_matrix(const HermitianTower& T, size_t k);

Vec ev_P0(const HermitianTower& T, size_t k, const Vec& coeffs);

// Deterministic right inverse of ev_matrix: column i is the solve()
// preimage of the i-th unit vector with free variables at zero.
// SingularSystem if a unit vector had no preimage, which would mean the
// evaluation matrix lost surjectivity and indicates an internal failure.
Mat kappa_P0(const HermitianTower& T, size_t k);

// Message restriction applied inside the decoder: nothing, one design
// member per coefficient block, or a hashed evaluation set.
using FoldedPrecode = std::variant<std::monostate, SubspaceDesign, HseSet>;

// Folded evaluation code: a message v in F_q^k becomes the function
// kappa(v) on the pole-order budget k+2g-1, transmitted as N columns of m
// values each, column i listing the function at m consecutive sigma-shifts
// of the i-th representative.  Representatives are chosen deterministically:
// the lexicographically first point of each symmetry orbit away from the
// zeros of x_1, then the sigma^m shifts of those leaders, until N are
// placed; this keeps the N*m shifted points pairwise distinct.
struct FoldedSpec {
  HermitianTower tower;
  size_t m = 0;
  size_t s = 0;
  size_t N = 0;
  size_t k = 0;
  std::vector<Place> reps;

  uint64_t l() const { return k + 2 * tower.genus - 1; }
};

// Validates m <= q-1, 1 <= s <= m, the orbit capacity N <= r^{e-1}
// floor((q-1)/m), and the pole budget l <= m*N, then picks the
// representatives.
FoldedSpec folded_make(HermitianTower tower, size_t m, size_t s, size_t N, size_t k);

using FoldedWord = std::vector<Vec>;  // N columns of m symbols

FoldedWord folded_encode(const FoldedSpec& spec, const Vec& msg);

// The decoder's linear form A[0] + A[1] Y_1 + ... + A[s] Y_s, with A[0]
// over the basis of L((D+k+2g-1) Pinf) and A[1..s] over the basis of
// L(D Pinf).
struct FoldedInterpolation {
  size_t s = 0;
  uint64_t D = 0;
  std::vector<Vec> A;
};

// Nonzero form vanishing on every window (i, j): at the place P_i^{sigma^j},
// A_0 plus sum_t A_t * Y[i][j+t-1] is zero, for all i and j = 0..m-s.  The
// degree parameter D = floor((N(m-s+1) - k + (s-1)g + 1)/(s+1)) leaves more
// unknowns than conditions; the first kernel vector of the constraint
// system in column order keeps the transcript reproducible.
FoldedInterpolation folded_interpolate(const FoldedSpec& spec, const FoldedWord& Y);

// Coefficient vectors solving the window identities of the functional
// equation A[0] + A[1] f + A[2] f^{sigma^{-1}} + ... + A[s] f^{sigma^{-(s-1)}}
// = 0, as a periodic subspace over F_q with block size q-1 and rank bound
// s-1.  Writing every A_i as a series at the origin and u for the smallest
// valuation among A_1..A_s, the identity at x^{u+d} involves only the
// message coordinates f_0..f_d, and the k identities d = 0..k-1 transcribe
// into block equations whose coefficients depend on d and the residue of
// the coordinate index mod q-1 alone.  Identities above that window, when
// the series admit any, can only shrink the true solution set, so the
// listed members form a superset that the caller filters by re-encoding.
// A message length that fills its last block only partly is represented by
// padding when there is a single block; with two or more blocks the shared
// block matrix cannot carry a partial block, so q-1 must divide k
// (NotDivisible otherwise).
PeriodicSubspace folded_solve(const FoldedSpec& spec, const FoldedInterpolation& Q);

// Full pipeline: interpolate, solve, prune through the precode, re-encode
// every candidate and keep those agreeing with Y in at least t columns.
// Any precoded message with that much agreement appears in the output, so
// the returned list is exactly the close-by precoded messages.  Requires
// t > floor((D+k+2g-1)/(m-s+1)) (ThresholdTooLow), the agreement level at
// which every surviving message is forced to satisfy the functional
// equation.  A hashed-set precode must cover ambient k with a block size
// divisible by q-1; the solver output is regrouped to the set's block size
// before intersecting.  EnumerationTooLarge when candidates exceed `cap`.
// A non-null `trace` receives the stage measurements of the run.
std::vector<Vec> folded_list_decode(const FoldedSpec& spec, const FoldedWord& Y, size_t t,
                                    const FoldedPrecode& precode = {},
                                    uint64_t cap = kEnumerationCap,
                                    DecodeTrace* trace = nullptr);

// Advisory error-fraction estimate for the chosen parameters:
// s/(s+1) * (1 - k/(N(m-s+1))) - 3g/((m-s+1)N).  Useful for sizing trials;
// nothing checks decoding requests against it.
double folded_error_fraction(const FoldedSpec& spec);

// Text form: one header line (r, e, gamma, m, s, N, k) followed by one
// representative tuple per line.  Loading rebuilds the spec from r and e
// and verifies that the stored generator and representatives match the
// canonical reconstruction; any disagreement is a ParseError.
std::string folded_to_string(const FoldedSpec& spec);
FoldedSpec folded_from_string(const std::string& text);

}  // namespace listdec
