#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "listdec/fields.hpp"
#include "listdec/linalg.hpp"

using namespace listdec;

namespace {

FieldPtr f4() { return field_make(2, 2, {1, 1, 1}); }

FieldPtr f16_over_f4() {
  FieldPtr base = f4();
  return tower_make(base, 2, default_tower_defining(base, 2));
}

}  // namespace

TEST_CASE("field construction accepts GF(4) and rejects bad specs") {
  FieldPtr F = f4();
  CHECK(F->p() == 2);
  CHECK(F->size() == 4);
  CHECK(F->abs_deg() == 2);

  CHECK_THROWS_WITH_AS(field_make(2, 2, {1, 0, 1}), doctest::Contains("NotIrreducible"), Error);
  CHECK_THROWS_WITH_AS(field_make(4, 1, {0, 1}), doctest::Contains("NotPrime"), Error);
  CHECK_THROWS_WITH_AS(field_make(2, 2, {1, 1, 0}), doctest::Contains("NotMonic"), Error);
  CHECK_THROWS_WITH_AS(field_make(9, 2, {1, 1, 1}), doctest::Contains("NotPrime"), Error);
}

TEST_CASE("degree-one specs collapse to the prime field") {
  FieldPtr F = field_make(5, 1, {0, 1});
  CHECK(F->size() == 5);
  CHECK(F->base() == nullptr);
}

TEST_CASE("field axioms hold exhaustively on fields of size up to 64") {
  FieldPtr f8 = field_make(default_field_spec(2, 3));
  FieldPtr f9 = field_make(default_field_spec(3, 2));
  FieldPtr f64 = tower_make(f8, 2, default_tower_defining(f8, 2));
  for (const FieldPtr& F : {f4(), f8, f9, f16_over_f4(), f64}) {
    uint64_t q = F->size();
    std::vector<Elem> all;
    for (uint64_t i = 0; i < q; ++i) all.push_back(F->elem_at(i));
    for (const Elem& a : all) {
      CHECK(F->add(a, F->zero()) == a);
      CHECK(F->mul(a, F->one()) == a);
      CHECK(F->is_zero(F->add(a, F->neg(a))));
      if (!F->is_zero(a)) CHECK(F->is_one(F->mul(a, F->inv(a))));
    }
    for (const Elem& a : all)
      for (const Elem& b : all) {
        CHECK(F->add(a, b) == F->add(b, a));
        CHECK(F->mul(a, b) == F->mul(b, a));
      }
    // associativity and distributivity on a deterministic sample of triples
    SplitMix64 g{7};
    for (int t = 0; t < 200; ++t) {
      Elem a = F->elem_at(uniform_below(g, q));
      Elem b = F->elem_at(uniform_below(g, q));
      Elem c = F->elem_at(uniform_below(g, q));
      CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
      CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
    }
  }
}

TEST_CASE("frobenius on GF(4) sends w to w+1 and fixes the prime field") {
  FieldPtr F = f4();
  Elem w = F->elem_at(2);  // digits (0,1): the defining root
  CHECK(frobenius(*F, w, 1) == F->add(w, F->one()));
  CHECK(frobenius(*F, F->one(), 1) == F->one());
  CHECK(frobenius(*F, F->zero(), 5) == F->zero());
}

TEST_CASE("frobenius to the tower degree is the identity") {
  FieldPtr T = f16_over_f4();
  SplitMix64 g{11};
  for (int t = 0; t < 100; ++t) {
    Elem x = T->sample(g);
    CHECK(frobenius(*T, x, 2) == x);
  }
}

TEST_CASE("frobenius fixes the embedded base field") {
  FieldPtr T = f16_over_f4();
  FieldPtr B = T->base();
  for (uint64_t i = 0; i < B->size(); ++i) {
    Elem a = T->embed(B->elem_at(i));
    CHECK(frobenius(*T, a, 1) == a);
  }
}

TEST_CASE("frobenius is a field automorphism") {
  for (const FieldPtr& F : {f4(), f16_over_f4()}) {
    uint64_t q = F->size();
    for (uint64_t i = 0; i < q; ++i)
      for (uint64_t j = 0; j < q; ++j) {
        Elem a = F->elem_at(i), b = F->elem_at(j);
        CHECK(frobenius(*F, F->add(a, b), 1) ==
              F->add(frobenius(*F, a, 1), frobenius(*F, b, 1)));
        CHECK(frobenius(*F, F->mul(a, b), 1) ==
              F->mul(frobenius(*F, a, 1), frobenius(*F, b, 1)));
      }
  }
}

TEST_CASE("poly_frobenius raises coefficients and commutes with evaluation") {
  FieldPtr F = f4();
  Elem w = F->elem_at(2);
  Poly f = poly_make(*F, {w, F->one()});  // w + X
  Poly fs = poly_frobenius(*F, f);
  CHECK(fs.c[0] == F->add(w, F->one()));
  CHECK(fs.c[1] == F->one());

  // coefficients in the prime field stay put
  Poly g = poly_make(*F, {F->one(), F->one(), F->one()});
  CHECK(poly_frobenius(*F, g) == g);

  // (f^sigma)(a) = f(a)^q for a in the subfield, both sides computed separately
  FieldPtr T = f16_over_f4();
  SplitMix64 rg{3};
  for (int t = 0; t < 50; ++t) {
    Poly h = poly_make(*T, {T->sample(rg), T->sample(rg), T->sample(rg), T->sample(rg)});
    for (uint64_t i = 0; i < 4; ++i) {
      Elem a = T->embed(T->base()->elem_at(i));
      Elem lhs = poly_eval(*T, poly_frobenius(*T, h), a);
      Elem rhs = T->pow(poly_eval(*T, h, a), 4);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("polynomial division, gcd and xgcd are exact") {
  FieldPtr F = field_make(default_field_spec(3, 2));
  SplitMix64 g{19};
  for (int t = 0; t < 100; ++t) {
    std::vector<Elem> fc, gc;
    for (int i = 0; i < 6; ++i) fc.push_back(F->sample(g));
    for (int i = 0; i < 3; ++i) gc.push_back(F->sample(g));
    Poly f = poly_make(*F, fc), h = poly_make(*F, gc);
    if (h.is_zero()) continue;
    auto [q, r] = poly_divmod(*F, f, h);
    CHECK(poly_add(*F, poly_mul(*F, q, h), r) == f);
    CHECK(r.deg() < h.deg());

    PolyXgcd e = poly_xgcd(*F, f, h);
    Poly lhs = poly_add(*F, poly_mul(*F, e.u, f), poly_mul(*F, e.v, h));
    CHECK(lhs == e.g);
    if (!f.is_zero()) {
      Poly gg = poly_gcd(*F, f, h);
      CHECK(poly_mod(*F, f, gg).is_zero());
      CHECK(poly_mod(*F, h, gg).is_zero());
      CHECK(F->is_one(gg.c.back()));
    }
  }
}

TEST_CASE("irreducibility test agrees with an exhaustive factor scan") {
  FieldPtr P = Field::prime(2);
  // every monic cubic over GF(2), checked against a root/factor scan
  for (uint64_t idx = 0; idx < 8; ++idx) {
    std::vector<Elem> cs;
    uint64_t v = idx;
    for (int i = 0; i < 3; ++i) {
      cs.push_back(P->from_int(v % 2));
      v /= 2;
    }
    cs.push_back(P->one());
    Poly f;
    f.c = cs;
    // independent scan: a cubic is reducible iff it has a root
    bool has_root = false;
    for (uint64_t x = 0; x < 2; ++x)
      if (P->is_zero(poly_eval(*P, f, P->from_int(x)))) has_root = true;
    CHECK(poly_is_irreducible(*P, f) == !has_root);
  }
}

TEST_CASE("default defining polynomials are the first irreducibles in index order") {
  CHECK(default_defining_poly(2, 2) == std::vector<uint32_t>{1, 1, 1});
  CHECK(default_defining_poly(2, 3) == std::vector<uint32_t>{1, 1, 0, 1});
  CHECK(default_defining_poly(2, 4) == std::vector<uint32_t>{1, 1, 0, 0, 1});
  CHECK(default_defining_poly(3, 2) == std::vector<uint32_t>{1, 0, 1});
  for (unsigned a = 2; a <= 8; ++a) {
    FieldPtr F = field_make(default_field_spec(2, a));
    CHECK(F->size() == (1ULL << a));
  }
}

TEST_CASE("coordinate maps are mutually inverse bijections") {
  FieldPtr T = f16_over_f4();
  std::set<std::vector<uint64_t>> seen;
  for (uint64_t i = 0; i < 16; ++i) {
    Elem x = T->elem_at(i);
    std::vector<Elem> co = T->coords(x);
    REQUIRE(co.size() == 2);
    CHECK(T->from_coords(co) == x);
    seen.insert({T->base()->index_of(co[0]), T->base()->index_of(co[1])});
  }
  CHECK(seen.size() == 16);
}

TEST_CASE("element strings round-trip and match the tower format") {
  FieldPtr T = f16_over_f4();
  FieldPtr B = T->base();
  Elem x = T->from_coords({B->elem_at(2), B->elem_at(3)});
  CHECK(T->to_string(x) == "01:11");
  for (uint64_t i = 0; i < 16; ++i) {
    Elem y = T->elem_at(i);
    CHECK(T->parse(T->to_string(y)) == y);
  }
  CHECK(B->to_string(B->elem_at(2)) == "01");
  CHECK_THROWS_AS(B->parse("0"), Error);
  CHECK_THROWS_AS(B->parse("21"), Error);
}

TEST_CASE("sampling is deterministic and hits every residue") {
  FieldPtr F = field_make(default_field_spec(5, 2));
  SplitMix64 a{42}, b{42};
  std::map<uint64_t, int> hist;
  for (int t = 0; t < 500; ++t) {
    Elem x = F->sample(a);
    CHECK(x == F->sample(b));
    hist[F->index_of(x)]++;
  }
  CHECK(hist.size() > 20);  // 25 classes, all should be close to covered
}

TEST_CASE("primitive element search returns the first generator in index order") {
  FieldPtr F = f4();
  Elem g = primitive_element(*F);
  CHECK(F->index_of(g) == 2);  // 0 and 1 fail the order test first
  CHECK(F->is_one(F->pow(g, 3)));
  CHECK(!F->is_one(F->pow(g, 1)));

  FieldPtr F16 = field_make(default_field_spec(2, 4));
  Elem h = primitive_element(*F16);
  std::set<uint64_t> powers;
  Elem acc = F16->one();
  for (int i = 0; i < 15; ++i) {
    powers.insert(F16->index_of(acc));
    acc = F16->mul(acc, h);
  }
  CHECK(powers.size() == 15);
}

TEST_CASE("linearized polynomials evaluate, vanish at zero, and act linearly") {
  FieldPtr F = f4();
  Elem w = F->elem_at(2);
  LinearizedPoly B{{F->one(), F->one()}};  // X + X^2
  CHECK(F->is_one(linearized_eval(*F, B, w)));
  CHECK(F->is_zero(linearized_eval(*F, B, F->zero())));

  FieldPtr T = f16_over_f4();
  LinearizedPoly C{{T->elem_at(7), T->elem_at(9)}};
  for (uint64_t i = 0; i < 16; ++i)
    for (uint64_t j = 0; j < 16; ++j) {
      Elem x = T->elem_at(i), y = T->elem_at(j);
      CHECK(linearized_eval(*T, C, T->add(x, y)) ==
            T->add(linearized_eval(*T, C, x), linearized_eval(*T, C, y)));
    }
}

TEST_CASE("linearized kernels match exhaustive root counts") {
  FieldPtr F = f4();
  LinearizedPoly B{{F->one(), F->one()}};  // X^2 + X vanishes exactly on GF(2)
  std::vector<Elem> ker = linearized_kernel(*F, B);
  REQUIRE(ker.size() == 1);
  std::set<uint64_t> span = {0, F->index_of(ker[0])};
  CHECK(span == std::set<uint64_t>{0, 1});

  LinearizedPoly ident{{F->one()}};
  CHECK(linearized_kernel(*F, ident).empty());

  LinearizedPoly zero{{F->zero()}};
  CHECK_THROWS_WITH_AS(linearized_kernel(*F, zero), doctest::Contains("ZeroMap"), Error);

  FieldPtr T = f16_over_f4();
  SplitMix64 g{23};
  for (int t = 0; t < 40; ++t) {
    LinearizedPoly C{{T->sample(g), T->sample(g)}};
    if (C.is_zero()) continue;
    size_t roots = 0;
    for (uint64_t i = 0; i < 16; ++i)
      if (T->is_zero(linearized_eval(*T, C, T->elem_at(i)))) ++roots;
    size_t dim = linearized_kernel(*T, C).size();
    CHECK((1ULL << (2 * dim)) == roots);  // q = 4 per kernel dimension
    CHECK(dim <= static_cast<size_t>(C.qdeg()));
  }
}

TEST_CASE("linearized evaluation agrees with its coordinate matrix") {
  FieldPtr T = f16_over_f4();
  SplitMix64 g{29};
  LinearizedPoly B{{T->sample(g), T->sample(g)}};
  Mat M = linearized_matrix(*T, B);
  for (uint64_t i = 0; i < 16; ++i) {
    Elem x = T->elem_at(i);
    Vec lhs = T->coords(linearized_eval(*T, B, x));
    Vec rhs = mat_vec(*T->base(), M, T->coords(x));
    CHECK(lhs == rhs);
  }
}
