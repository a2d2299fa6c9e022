#include "listdec/fields.hpp"

#include <atomic>
#include <cassert>
#include <sstream>

namespace listdec {

namespace {

std::atomic<uint16_t> next_field_id{1};

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// p^e, or 0 if the product leaves uint64 range.
uint64_t checked_pow(uint64_t p, unsigned e) {
  uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > UINT64_MAX / p) return 0;
    r *= p;
  }
  return r;
}

bool digits_all_zero(const Elem& x) {
  for (uint32_t v : x.d)
    if (v != 0) return false;
  return true;
}

}  // namespace

void Field::check(const Elem& x) const {
  if (x.fid != id_ || x.d.size() != abs_deg_)
    throw std::logic_error("element does not belong to this field");
}

FieldPtr Field::prime(uint64_t p) {
  if (!is_prime_u64(p)) fail(Err::NotPrime, "p = " + std::to_string(p));
  if (p >= (1ULL << 31)) fail(Err::TooLarge, "characteristic must fit in 31 bits");
  auto F = std::shared_ptr<Field>(new Field());
  F->p_ = p;
  F->deg_ = 1;
  F->abs_deg_ = 1;
  F->size_ = p;
  F->id_ = next_field_id.fetch_add(1);
  return F;
}

FieldPtr Field::extension(const FieldPtr& base, const std::vector<Elem>& defining) {
  if (!base) throw std::logic_error("extension needs a base field");
  if (defining.size() < 2) fail(Err::NotMonic, "defining polynomial must have degree >= 1");
  for (const Elem& c : defining) base->check(c);
  if (!base->is_one(defining.back())) fail(Err::NotMonic, "leading coefficient is not 1");
  unsigned deg = static_cast<unsigned>(defining.size()) - 1;
  if (deg >= 2) {
    Poly f;
    f.c = defining;
    if (!poly_is_irreducible(*base, f))
      fail(Err::NotIrreducible, "defining polynomial splits over the base field");
  }
  auto F = std::shared_ptr<Field>(new Field());
  F->p_ = base->p();
  F->base_ = base;
  F->defining_ = defining;
  F->deg_ = deg;
  F->abs_deg_ = base->abs_deg() * deg;
  F->size_ = checked_pow(F->p_, F->abs_deg_);
  F->id_ = next_field_id.fetch_add(1);
  return F;
}

uint64_t Field::size() const {
  if (size_ == 0) fail(Err::TooLarge, "field size does not fit in 64 bits");
  return size_;
}

Elem Field::zero() const {
  Elem x;
  x.fid = id_;
  x.d.assign(abs_deg_, 0);
  return x;
}

Elem Field::one() const {
  Elem x = zero();
  x.d[0] = 1 % p_;
  return x;
}

Elem Field::from_int(uint64_t v) const {
  Elem x = zero();
  x.d[0] = static_cast<uint32_t>(v % p_);
  return x;
}

Elem Field::elem_at(uint64_t index) const {
  Elem x = zero();
  for (unsigned i = 0; i < abs_deg_ && index != 0; ++i) {
    x.d[i] = static_cast<uint32_t>(index % p_);
    index /= p_;
  }
  if (index != 0) throw std::logic_error("element index out of range");
  return x;
}

uint64_t Field::index_of(const Elem& x) const {
  check(x);
  size();  // range guard
  uint64_t idx = 0;
  for (unsigned i = abs_deg_; i-- > 0;) idx = idx * p_ + x.d[i];
  return idx;
}

bool Field::is_zero(const Elem& x) const {
  check(x);
  return digits_all_zero(x);
}

bool Field::is_one(const Elem& x) const {
  check(x);
  return x == one();
}

Elem Field::add(const Elem& x, const Elem& y) const {
  check(x);
  check(y);
  Elem r = x;
  for (unsigned i = 0; i < abs_deg_; ++i) {
    uint64_t v = static_cast<uint64_t>(r.d[i]) + y.d[i];
    if (v >= p_) v -= p_;
    r.d[i] = static_cast<uint32_t>(v);
  }
  return r;
}

Elem Field::sub(const Elem& x, const Elem& y) const {
  check(x);
  check(y);
  Elem r = x;
  for (unsigned i = 0; i < abs_deg_; ++i) {
    uint64_t v = static_cast<uint64_t>(r.d[i]) + p_ - y.d[i];
    if (v >= p_) v -= p_;
    r.d[i] = static_cast<uint32_t>(v);
  }
  return r;
}

Elem Field::neg(const Elem& x) const { return sub(zero(), x); }

Elem Field::mul(const Elem& x, const Elem& y) const {
  check(x);
  check(y);
  if (!base_) {
    Elem r = zero();
    r.d[0] = static_cast<uint32_t>(static_cast<uint64_t>(x.d[0]) * y.d[0] % p_);
    return r;
  }
  // Schoolbook product of the coordinate polynomials over the base field,
  // then reduction modulo the defining polynomial.
  std::vector<Elem> xc = coords(x), yc = coords(y);
  std::vector<Elem> prod(2 * deg_ - 1, base_->zero());
  for (unsigned i = 0; i < deg_; ++i) {
    if (digits_all_zero(xc[i])) continue;
    for (unsigned j = 0; j < deg_; ++j)
      prod[i + j] = base_->add(prod[i + j], base_->mul(xc[i], yc[j]));
  }
  for (unsigned k = 2 * deg_ - 2; k >= deg_; --k) {
    if (digits_all_zero(prod[k])) continue;
    const Elem c = prod[k];
    for (unsigned j = 0; j < deg_; ++j)
      prod[k - deg_ + j] = base_->sub(prod[k - deg_ + j], base_->mul(c, defining_[j]));
  }
  prod.resize(deg_);
  return from_coords(prod);
}

Elem Field::inv(const Elem& x) const {
  check(x);
  if (digits_all_zero(x)) fail(Err::DivideByZero, "inverse of zero");
  if (!base_) {
    // extended Euclid on integers
    int64_t a = x.d[0], m = static_cast<int64_t>(p_);
    int64_t t0 = 0, t1 = 1, r0 = m, r1 = a;
    while (r1 != 0) {
      int64_t q = r0 / r1;
      int64_t t2 = t0 - q * t1;
      int64_t r2 = r0 - q * r1;
      t0 = t1; t1 = t2;
      r0 = r1; r1 = r2;
    }
    assert(r0 == 1);
    Elem r = zero();
    r.d[0] = static_cast<uint32_t>((t0 % m + m) % m);
    return r;
  }
  Poly f = poly_make(*base_, coords(x));
  Poly def;
  def.c = defining_;
  PolyXgcd e = poly_xgcd(*base_, f, def);
  if (e.g.deg() != 0)
    throw std::logic_error("defining polynomial not coprime with nonzero element");
  Poly u = poly_scale(*base_, base_->inv(e.g.c[0]), e.u);
  u = poly_mod(*base_, u, def);
  u.c.resize(deg_, base_->zero());
  return from_coords(u.c);
}

Elem Field::div(const Elem& x, const Elem& y) const { return mul(x, inv(y)); }

Elem Field::pow(const Elem& x, uint64_t e) const {
  check(x);
  Elem r = one();
  Elem b = x;
  while (e != 0) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e != 0) b = mul(b, b);
  }
  return r;
}

std::vector<Elem> Field::coords(const Elem& x) const {
  check(x);
  if (!base_) return {x};
  unsigned babs = base_->abs_deg();
  std::vector<Elem> co(deg_);
  for (unsigned i = 0; i < deg_; ++i) {
    Elem c;
    c.fid = base_->id();
    c.d.assign(x.d.begin() + i * babs, x.d.begin() + (i + 1) * babs);
    co[i] = std::move(c);
  }
  return co;
}

Elem Field::from_coords(const std::vector<Elem>& co) const {
  if (!base_) {
    if (co.size() != 1) fail(Err::LengthMismatch, "prime field expects one coordinate");
    check(co[0]);
    return co[0];
  }
  if (co.size() != deg_)
    fail(Err::LengthMismatch, "expected " + std::to_string(deg_) + " coordinates");
  Elem x = zero();
  unsigned babs = base_->abs_deg();
  for (unsigned i = 0; i < deg_; ++i) {
    base_->check(co[i]);
    for (unsigned j = 0; j < babs; ++j) x.d[i * babs + j] = co[i].d[j];
  }
  return x;
}

Elem Field::embed(const Elem& base_elem) const {
  if (!base_) {
    check(base_elem);
    return base_elem;
  }
  base_->check(base_elem);
  Elem x = zero();
  for (unsigned j = 0; j < base_->abs_deg(); ++j) x.d[j] = base_elem.d[j];
  return x;
}

Elem Field::sample(SplitMix64& g) const {
  Elem x = zero();
  for (unsigned i = 0; i < abs_deg_; ++i)
    x.d[i] = static_cast<uint32_t>(uniform_below(g, p_));
  return x;
}

namespace {

void render_digits(std::string& out, const uint32_t* d, unsigned n, uint64_t p) {
  if (p <= 10) {
    for (unsigned i = 0; i < n; ++i) out.push_back(static_cast<char>('0' + d[i]));
  } else {
    for (unsigned i = 0; i < n; ++i) {
      if (i) out.push_back(',');
      out += std::to_string(d[i]);
    }
  }
}

std::vector<uint32_t> parse_digits(const std::string& s, unsigned n, uint64_t p) {
  std::vector<uint32_t> d;
  if (p <= 10) {
    for (char ch : s) {
      if (ch < '0' || ch >= '0' + static_cast<int>(p))
        fail(Err::ParseError, "bad digit '" + std::string(1, ch) + "'");
      d.push_back(static_cast<uint32_t>(ch - '0'));
    }
  } else {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      uint64_t v = 0;
      if (tok.empty()) fail(Err::ParseError, "empty digit");
      for (char ch : tok) {
        if (ch < '0' || ch > '9') fail(Err::ParseError, "bad digit token " + tok);
        v = v * 10 + static_cast<uint64_t>(ch - '0');
        if (v >= p) fail(Err::ParseError, "digit out of range: " + tok);
      }
      d.push_back(static_cast<uint32_t>(v));
    }
  }
  if (d.size() != n)
    fail(Err::ParseError, "expected " + std::to_string(n) + " digits, got " + std::to_string(d.size()));
  return d;
}

}  // namespace

std::string Field::to_string(const Elem& x) const {
  check(x);
  std::string out;
  if (!base_ || !base_->base()) {
    render_digits(out, x.d.data(), abs_deg_, p_);
    return out;
  }
  std::vector<Elem> co = coords(x);
  for (unsigned i = 0; i < co.size(); ++i) {
    if (i) out.push_back(':');
    out += base_->to_string(co[i]);
  }
  return out;
}

Elem Field::parse(const std::string& s) const {
  if (!base_ || !base_->base()) {
    if (s.find(':') != std::string::npos) fail(Err::ParseError, "unexpected ':' in " + s);
    Elem x = zero();
    std::vector<uint32_t> d = parse_digits(s, abs_deg_, p_);
    for (unsigned i = 0; i < abs_deg_; ++i) x.d[i] = d[i];
    return x;
  }
  std::vector<Elem> co;
  std::stringstream ss(s);
  std::string block;
  while (std::getline(ss, block, ':')) co.push_back(base_->parse(block));
  if (co.size() != deg_)
    fail(Err::ParseError, "expected " + std::to_string(deg_) + " blocks in " + s);
  return from_coords(co);
}

FieldPtr field_make(const FieldSpec& spec) { return field_make(spec.p, spec.a, spec.defining); }

FieldPtr field_make(uint64_t p, unsigned a, const std::vector<uint32_t>& defining) {
  if (!is_prime_u64(p)) fail(Err::NotPrime, "p = " + std::to_string(p));
  FieldPtr P = Field::prime(p);
  if (a == 0) throw std::logic_error("extension degree must be positive");
  if (defining.size() != a + 1)
    fail(Err::NotMonic, "defining polynomial must have degree exactly a");
  std::vector<Elem> cs;
  cs.reserve(defining.size());
  for (uint32_t v : defining) {
    if (v >= p) fail(Err::ParseError, "coefficient out of range");
    cs.push_back(P->from_int(v));
  }
  if (a == 1) {
    if (cs.back() != P->one()) fail(Err::NotMonic, "leading coefficient is not 1");
    return P;
  }
  return Field::extension(P, cs);
}

FieldPtr tower_make(const FieldPtr& base, unsigned m, const std::vector<Elem>& defining) {
  if (m == 0) throw std::logic_error("tower degree must be positive");
  if (defining.size() != m + 1)
    fail(Err::NotMonic, "defining polynomial must have degree exactly m");
  if (m == 1) {
    for (const Elem& c : defining) base->check(c);
    if (!base->is_one(defining.back())) fail(Err::NotMonic, "leading coefficient is not 1");
    return base;
  }
  return Field::extension(base, defining);
}

FieldPtr tower_make(const TowerSpec& spec) {
  FieldPtr base = field_make(spec.base);
  std::vector<Elem> cs;
  cs.reserve(spec.defining.size());
  for (const auto& digits : spec.defining) {
    if (digits.size() != base->abs_deg()) fail(Err::ParseError, "coefficient digit count mismatch");
    Elem c = base->zero();
    for (unsigned i = 0; i < base->abs_deg(); ++i) {
      if (digits[i] >= spec.base.p) fail(Err::ParseError, "digit out of range");
      c.d[i] = digits[i];
    }
    cs.push_back(c);
  }
  return tower_make(base, spec.m, cs);
}

std::vector<uint32_t> default_defining_poly(uint64_t p, unsigned a) {
  if (!is_prime_u64(p)) fail(Err::NotPrime, "p = " + std::to_string(p));
  if (a == 0) throw std::logic_error("degree must be positive");
  if (a == 1) return {0, 1};
  FieldPtr P = Field::prime(p);
  uint64_t count = checked_pow(p, a);
  if (count == 0) fail(Err::TooLarge, "degree too large for default table");
  for (uint64_t idx = 0; idx < count; ++idx) {
    std::vector<uint32_t> cs(a + 1, 0);
    uint64_t v = idx;
    for (unsigned i = 0; i < a; ++i) {
      cs[i] = static_cast<uint32_t>(v % p);
      v /= p;
    }
    cs[a] = 1;
    Poly f;
    for (uint32_t c : cs) f.c.push_back(P->from_int(c));
    if (poly_is_irreducible(*P, f)) return cs;
  }
  throw std::logic_error("no irreducible polynomial found");  // cannot happen
}

FieldSpec default_field_spec(uint64_t p, unsigned a) {
  FieldSpec s;
  s.p = p;
  s.a = a;
  s.defining = default_defining_poly(p, a);
  return s;
}

std::vector<Elem> default_tower_defining(const FieldPtr& base, unsigned m) {
  if (m == 0) throw std::logic_error("degree must be positive");
  if (m == 1) return {base->zero(), base->one()};
  uint64_t q = base->size();
  uint64_t count = checked_pow(q, m);
  if (count == 0) fail(Err::TooLarge, "degree too large for default search");
  for (uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Elem> cs;
    uint64_t v = idx;
    for (unsigned i = 0; i < m; ++i) {
      cs.push_back(base->elem_at(v % q));
      v /= q;
    }
    cs.push_back(base->one());
    Poly f;
    f.c = cs;
    if (poly_is_irreducible(*base, f)) return cs;
  }
  throw std::logic_error("no irreducible polynomial found");  // cannot happen
}

Elem primitive_element(const Field& F) {
  uint64_t q = F.size();
  if (q > (1ULL << 24)) fail(Err::TooLarge, "exhaustive order test capped at 2^24 elements");
  for (uint64_t idx = 1; idx < q; ++idx) {
    Elem x = F.elem_at(idx);
    Elem acc = x;
    uint64_t ord = 1;
    while (!F.is_one(acc)) {
      acc = F.mul(acc, x);
      ++ord;
      if (ord > q - 1) throw std::logic_error("order test overran group size");
    }
    if (ord == q - 1) return x;
  }
  throw std::logic_error("no generator found");  // cannot happen for a field
}

Elem frobenius(const Field& F, const Elem& x, unsigned j) {
  uint64_t Q = F.base() ? F.base()->size() : F.p();
  Elem r = x;
  for (unsigned i = 0; i < j; ++i) r = F.pow(r, Q);
  return r;
}

// ---- polynomials ----

Poly poly_make(const Field& F, std::vector<Elem> coeffs) {
  while (!coeffs.empty() && F.is_zero(coeffs.back())) coeffs.pop_back();
  Poly f;
  f.c = std::move(coeffs);
  return f;
}

Poly poly_zero() { return Poly{}; }

Poly poly_one(const Field& F) { return Poly{{F.one()}}; }

Poly poly_x(const Field& F) { return Poly{{F.zero(), F.one()}}; }

Poly poly_const(const Field& F, const Elem& c) {
  return F.is_zero(c) ? Poly{} : Poly{{c}};
}

Elem poly_coeff(const Field& F, const Poly& f, size_t i) {
  return i < f.c.size() ? f.c[i] : F.zero();
}

Poly poly_add(const Field& F, const Poly& f, const Poly& g) {
  std::vector<Elem> c(std::max(f.c.size(), g.c.size()), F.zero());
  for (size_t i = 0; i < c.size(); ++i) {
    Elem v = F.zero();
    if (i < f.c.size()) v = F.add(v, f.c[i]);
    if (i < g.c.size()) v = F.add(v, g.c[i]);
    c[i] = v;
  }
  return poly_make(F, std::move(c));
}

Poly poly_neg(const Field& F, const Poly& f) {
  Poly r = f;
  for (Elem& c : r.c) c = F.neg(c);
  return r;
}

Poly poly_sub(const Field& F, const Poly& f, const Poly& g) {
  return poly_add(F, f, poly_neg(F, g));
}

Poly poly_mul(const Field& F, const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return Poly{};
  std::vector<Elem> c(f.c.size() + g.c.size() - 1, F.zero());
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (F.is_zero(f.c[i])) continue;
    for (size_t j = 0; j < g.c.size(); ++j)
      c[i + j] = F.add(c[i + j], F.mul(f.c[i], g.c[j]));
  }
  return poly_make(F, std::move(c));
}

Poly poly_scale(const Field& F, const Elem& s, const Poly& f) {
  if (F.is_zero(s)) return Poly{};
  Poly r = f;
  for (Elem& c : r.c) c = F.mul(s, c);
  return poly_make(F, std::move(r.c));
}

Poly poly_shift(const Field& F, const Poly& f, unsigned k) {
  if (f.is_zero()) return Poly{};
  std::vector<Elem> c(f.c.size() + k, F.zero());
  for (size_t i = 0; i < f.c.size(); ++i) c[i + k] = f.c[i];
  Poly r;
  r.c = std::move(c);
  return r;
}

std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& f, const Poly& g) {
  if (g.is_zero()) fail(Err::DivideByZero, "polynomial division by zero");
  if (f.deg() < g.deg()) return {Poly{}, f};
  Elem lead_inv = F.inv(g.c.back());
  std::vector<Elem> rem = f.c;
  std::vector<Elem> quo(f.c.size() - g.c.size() + 1, F.zero());
  for (size_t k = f.c.size(); k-- >= g.c.size();) {
    Elem q = F.mul(rem[k], lead_inv);
    if (!F.is_zero(q)) {
      quo[k - (g.c.size() - 1)] = q;
      for (size_t j = 0; j < g.c.size(); ++j) {
        size_t idx = k - (g.c.size() - 1) + j;
        rem[idx] = F.sub(rem[idx], F.mul(q, g.c[j]));
      }
    }
    if (k == g.c.size() - 1) break;
  }
  return {poly_make(F, std::move(quo)), poly_make(F, std::move(rem))};
}

Poly poly_mod(const Field& F, const Poly& f, const Poly& g) {
  return poly_divmod(F, f, g).second;
}

Poly poly_gcd(const Field& F, const Poly& f, const Poly& g) {
  Poly a = f, b = g;
  while (!b.is_zero()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a = poly_scale(F, F.inv(a.c.back()), a);
  return a;
}

PolyXgcd poly_xgcd(const Field& F, const Poly& f, const Poly& h) {
  Poly r0 = f, r1 = h;
  Poly u0 = poly_one(F), u1 = poly_zero();
  Poly v0 = poly_zero(), v1 = poly_one(F);
  while (!r1.is_zero()) {
    auto [q, r2] = poly_divmod(F, r0, r1);
    Poly u2 = poly_sub(F, u0, poly_mul(F, q, u1));
    Poly v2 = poly_sub(F, v0, poly_mul(F, q, v1));
    r0 = std::move(r1); r1 = std::move(r2);
    u0 = std::move(u1); u1 = std::move(u2);
    v0 = std::move(v1); v1 = std::move(v2);
  }
  return {r0, u0, v0};
}

Elem poly_eval(const Field& F, const Poly& f, const Elem& x) {
  Elem acc = F.zero();
  for (size_t i = f.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f.c[i]);
  return acc;
}

Poly poly_powmod(const Field& F, const Poly& base, uint64_t e, const Poly& mod) {
  Poly r = poly_mod(F, poly_one(F), mod);
  Poly b = poly_mod(F, base, mod);
  while (e != 0) {
    if (e & 1) r = poly_mod(F, poly_mul(F, r, b), mod);
    e >>= 1;
    if (e != 0) b = poly_mod(F, poly_mul(F, b, b), mod);
  }
  return r;
}

bool poly_is_irreducible(const Field& F, const Poly& f) {
  int d = f.deg();
  if (d <= 0) return false;
  if (d == 1) return true;
  uint64_t Q = F.size();
  // X^(Q^i) mod f, iterated; a factor of degree i <= d/2 shows up as a
  // nontrivial gcd with X^(Q^i) - X.
  Poly t = poly_mod(F, poly_x(F), f);
  for (int i = 1; i <= d / 2; ++i) {
    t = poly_powmod(F, t, Q, f);
    Poly g = poly_gcd(F, poly_sub(F, t, poly_x(F)), f);
    if (g.deg() > 0) return false;
  }
  return true;
}

Poly poly_frobenius(const Field& F, const Poly& f, unsigned j) {
  Poly r = f;
  for (Elem& c : r.c) c = frobenius(F, c, j);
  return r;
}

// ---- linearized polynomials ----

int LinearizedPoly::qdeg() const {
  for (size_t i = a.size(); i-- > 0;)
    if (!digits_all_zero(a[i])) return static_cast<int>(i);
  return -1;
}

Elem linearized_eval(const Field& F, const LinearizedPoly& B, const Elem& x) {
  Elem acc = F.zero();
  Elem fr = x;
  for (size_t i = 0; i < B.a.size(); ++i) {
    if (i > 0) fr = frobenius(F, fr, 1);
    if (!F.is_zero(B.a[i])) acc = F.add(acc, F.mul(B.a[i], fr));
  }
  return acc;
}

}  // namespace listdec
