#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "listdec/error.hpp"
#include "listdec/rand.hpp"

namespace listdec {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Field element: dense coordinate vector over GF(p), low digit first.  The
// digit count always equals the absolute degree of the owning field; `fid`
// identifies that field so mixed-field arithmetic is caught early.
struct Elem {
  boost::container::small_vector<uint32_t, 16> d;
  uint16_t fid = 0;

  bool operator==(const Elem& o) const { return fid == o.fid && d == o.d; }
  bool operator!=(const Elem& o) const { return !(*this == o); }
  bool operator<(const Elem& o) const { return d < o.d; }
};

// Univariate polynomial with coefficients in one field, low to high.
// Normalized: no trailing zero coefficients; the zero polynomial has an
// empty coefficient list and degree -1.
struct Poly {
  std::vector<Elem> c;

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool operator==(const Poly& o) const { return c == o.c; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
};

// Raw description of GF(p^a): p prime, monic degree-a defining polynomial
// over GF(p) as digits low-to-high (length a+1).
struct FieldSpec {
  uint64_t p = 0;
  unsigned a = 0;
  std::vector<uint32_t> defining;
};

// Raw description of GF(q^m) on top of a FieldSpec for F_q.  Each defining
// coefficient is the digit vector of one F_q element.
struct TowerSpec {
  FieldSpec base;
  unsigned m = 0;
  std::vector<std::vector<uint32_t>> defining;
};

// A finite field, either GF(p) or an extension of another Field by a monic
// irreducible polynomial.  Immutable after construction; all operations are
// pure, so instances are safe to share across threads.
class Field : public std::enable_shared_from_this<Field> {
public:
  // GF(p).  Primality by trial division; p must fit in 31 bits so products
  // stay exact in 64-bit intermediates.
  static FieldPtr prime(uint64_t p);

  // Extension of `base` by a monic irreducible `defining` (coefficients in
  // `base`, low to high).  Irreducibility is established by checking that
  // gcd(defining, X^{Q^i} - X) = 1 for 1 <= i <= deg/2, Q = |base|.
  static FieldPtr extension(const FieldPtr& base, const std::vector<Elem>& defining);

  uint64_t p() const { return p_; }
  unsigned deg() const { return deg_; }          // over the immediate base
  unsigned abs_deg() const { return abs_deg_; }  // over GF(p)
  const FieldPtr& base() const { return base_; } // null for GF(p)
  const std::vector<Elem>& defining() const { return defining_; }
  uint16_t id() const { return id_; }

  bool has_size_u64() const { return size_ != 0; }
  uint64_t size() const;  // p^abs_deg; TooLarge if it does not fit in uint64

  Elem zero() const;
  Elem one() const;
  Elem from_int(uint64_t v) const;  // the prime-subfield constant v mod p

  // Canonical enumeration: element #i has the base-p digits of i, low digit
  // first.  This order is the determinism contract for every exhaustive scan
  // and every "first candidate" rule in the library.
  Elem elem_at(uint64_t index) const;
  uint64_t index_of(const Elem& x) const;

  bool is_zero(const Elem& x) const;
  bool is_one(const Elem& x) const;
  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem neg(const Elem& x) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem inv(const Elem& x) const;  // DivideByZero on 0
  Elem div(const Elem& x, const Elem& y) const;
  Elem pow(const Elem& x, uint64_t e) const;

  // Coordinate vector over the immediate base (length deg(); for GF(p) the
  // element itself).  from_coords is its inverse.
  std::vector<Elem> coords(const Elem& x) const;
  Elem from_coords(const std::vector<Elem>& co) const;
  Elem embed(const Elem& base_elem) const;  // immediate base -> this field

  // Uniform element: each GF(p) digit drawn by 64-bit rejection sampling,
  // low digit first.
  Elem sample(SplitMix64& g) const;

  // Digits as characters 0-9 (p <= 10) or comma-separated decimal digits
  // (p > 10); tower levels joined by ':' per immediate-base coordinate.
  std::string to_string(const Elem& x) const;
  Elem parse(const std::string& s) const;

  // Throws logic_error when x does not belong to this field.
  void check(const Elem& x) const;

private:
  Field() = default;

  uint64_t p_ = 0;
  FieldPtr base_;
  std::vector<Elem> defining_;  // empty for GF(p)
  unsigned deg_ = 1;
  unsigned abs_deg_ = 1;
  uint64_t size_ = 0;  // 0 when p^abs_deg overflows uint64
  uint16_t id_ = 0;
};

// Validated construction from raw specs.
FieldPtr field_make(const FieldSpec& spec);
FieldPtr field_make(uint64_t p, unsigned a, const std::vector<uint32_t>& defining);
FieldPtr tower_make(const TowerSpec& spec);
FieldPtr tower_make(const FieldPtr& base, unsigned m, const std::vector<Elem>& defining);

// First monic irreducible of degree a over GF(p) in canonical enumeration
// order of the lower coefficients.  The shipped default for p in {2,3,5},
// a <= 16; other inputs work but take correspondingly longer.
std::vector<uint32_t> default_defining_poly(uint64_t p, unsigned a);
FieldSpec default_field_spec(uint64_t p, unsigned a);

// Same first-hit rule one level up: monic degree-m polynomial over `base`
// whose lower coefficient tuple has the smallest enumeration index.
std::vector<Elem> default_tower_defining(const FieldPtr& base, unsigned m);

// First element of multiplicative order |F|-1 in canonical enumeration
// order, by exhaustive order test.
Elem primitive_element(const Field& F);

// x^(Q^j) where Q is the size of the immediate base of F (p for GF(p)).
// frobenius(x, deg) is the identity.
Elem frobenius(const Field& F, const Elem& x, unsigned j);

// ---- polynomial arithmetic over a field ----

Poly poly_make(const Field& F, std::vector<Elem> coeffs);  // normalizes
Poly poly_zero();
Poly poly_one(const Field& F);
Poly poly_x(const Field& F);
Poly poly_const(const Field& F, const Elem& c);
Elem poly_coeff(const Field& F, const Poly& f, size_t i);  // 0 past the end

Poly poly_add(const Field& F, const Poly& f, const Poly& g);
Poly poly_sub(const Field& F, const Poly& f, const Poly& g);
Poly poly_neg(const Field& F, const Poly& f);
Poly poly_mul(const Field& F, const Poly& f, const Poly& g);
Poly poly_scale(const Field& F, const Elem& c, const Poly& f);
Poly poly_shift(const Field& F, const Poly& f, unsigned k);  // f * X^k
std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& f, const Poly& g);
Poly poly_mod(const Field& F, const Poly& f, const Poly& g);
Poly poly_gcd(const Field& F, const Poly& f, const Poly& g);  // monic unless zero

struct PolyXgcd {
  Poly g, u, v;  // u*f + v*h = g
};
PolyXgcd poly_xgcd(const Field& F, const Poly& f, const Poly& h);

Elem poly_eval(const Field& F, const Poly& f, const Elem& x);
Poly poly_powmod(const Field& F, const Poly& base, uint64_t e, const Poly& mod);
bool poly_is_irreducible(const Field& F, const Poly& f);

// Coefficient-wise Q-th power, Q = |immediate base|; preserves degree.
Poly poly_frobenius(const Field& F, const Poly& f, unsigned j = 1);

// ---- linearized polynomials ----

// The map x -> sum_i a[i] * x^(Q^i), Q = |immediate base of F|; F_Q-linear
// on F viewed as a vector space over that base.
struct LinearizedPoly {
  std::vector<Elem> a;  // a[i] multiplies X^(Q^i)

  int qdeg() const;  // largest i with a[i] != 0; -1 for the zero map
  bool is_zero() const { return qdeg() < 0; }
};

Elem linearized_eval(const Field& F, const LinearizedPoly& B, const Elem& x);

// Basis (as field elements) of ker B inside F, a vector space over the
// immediate base of dimension at most qdeg(B).  ZeroMap if B = 0.
std::vector<Elem> linearized_kernel(const Field& F, const LinearizedPoly& B);

}  // namespace listdec
