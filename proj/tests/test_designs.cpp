#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "listdec/designs.hpp"
#include "listdec/oracle.hpp"

using namespace listdec;

namespace {

std::vector<uint64_t> key(const Field& F, const Vec& v) {
  std::vector<uint64_t> k;
  for (const Elem& x : v) k.push_back(F.index_of(x));
  return k;
}

std::set<std::vector<uint64_t>> point_set(const Field& F, const std::vector<Vec>& pts) {
  std::set<std::vector<uint64_t>> s;
  for (const Vec& p : pts) s.insert(key(F, p));
  return s;
}

Vec random_vec(const Field& F, size_t n, SplitMix64& g) {
  Vec v;
  for (size_t i = 0; i < n; ++i) v.push_back(F.sample(g));
  return v;
}

// Periodic subspace with no cross-block coupling: every block solves the
// same B x = -a_i system independently, so every grouping of blocks is again
// periodic and the multi-scale property holds by construction.
PeriodicSubspace block_product(const FieldPtr& F, const Mat& B, std::vector<Vec> a) {
  size_t delta = B.cols, blocks = a.size();
  size_t r = nullspace(*F, B).size();
  std::vector<std::vector<Mat>> A(blocks);
  for (size_t i = 0; i < blocks; ++i)
    for (size_t j = 0; j < i; ++j) A[i].push_back(Mat::zeros(*F, delta, delta));
  return periodic_make(F, delta, blocks, r, B, std::move(a), std::move(A));
}

// B with a kernel of dimension `kdim`: identity on the first rows, zero on
// the rest.
Mat partial_identity(const Field& F, size_t delta, size_t kdim) {
  Mat B = Mat::zeros(F, delta, delta);
  for (size_t i = 0; i + kdim < delta; ++i) B.at(i, i) = F.one();
  return B;
}

// Offsets consistent with partial_identity: anything in the column space.
Vec consistent_offset(const Field& F, size_t delta, size_t kdim, SplitMix64& g) {
  Vec v = vec_zeros(F, delta);
  for (size_t i = 0; i + kdim < delta; ++i) v[i] = F.sample(g);
  return v;
}

// All 2-dimensional subspaces found by spanning pairs of vectors and
// deduplicating on the full point set.  Shares nothing with the RREF
// profile enumeration in the library.
std::vector<std::vector<Vec>> planes_by_spanning_pairs(const Field& F, size_t n) {
  uint64_t q = F.size();
  uint64_t total = 1;
  for (size_t i = 0; i < n; ++i) total *= q;
  std::map<std::set<std::vector<uint64_t>>, std::vector<Vec>> seen;
  for (uint64_t i1 = 1; i1 < total; ++i1) {
    Vec v1;
    uint64_t rem = i1;
    for (size_t c = 0; c < n; ++c) {
      v1.push_back(F.elem_at(rem % q));
      rem /= q;
    }
    for (uint64_t i2 = 1; i2 < total; ++i2) {
      if (i2 == i1) continue;
      Vec v2;
      rem = i2;
      for (size_t c = 0; c < n; ++c) {
        v2.push_back(F.elem_at(rem % q));
        rem /= q;
      }
      std::set<std::vector<uint64_t>> pts;
      bool dependent = false;
      for (uint64_t a = 0; a < q && !dependent; ++a)
        for (uint64_t b = 0; b < q; ++b) {
          Vec x = vec_add(F, vec_scale(F, F.elem_at(a), v1), vec_scale(F, F.elem_at(b), v2));
          if ((a != 0 || b != 0) && vec_is_zero(F, x)) {
            dependent = true;
            break;
          }
          pts.insert(key(F, x));
        }
      if (dependent) continue;
      seen.emplace(std::move(pts), std::vector<Vec>{v1, v2});
    }
  }
  std::vector<std::vector<Vec>> out;
  for (auto& kv : seen) out.push_back(kv.second);
  return out;
}

}  // namespace

TEST_CASE("sampling the full space gives full members") {
  FieldPtr F = field_make(default_field_spec(2, 2));
  SubspaceDesign D = design_sample(F, 3, 3, 2, 7);
  REQUIRE(D.members.size() == 2);
  for (const AffineSubspace& H : D.members) CHECK(affine_equal(H, affine_full(*F, 3)));
  CHECK_FALSE(D.certified.has_value());
}

TEST_CASE("sampling is reproducible and rejects bad dimensions") {
  FieldPtr F = Field::prime(2);
  SubspaceDesign a = design_sample(F, 6, 3, 4, 123);
  SubspaceDesign b = design_sample(F, 6, 3, 4, 123);
  REQUIRE(a.members.size() == b.members.size());
  for (size_t i = 0; i < a.members.size(); ++i) {
    CHECK(affine_equal(a.members[i], b.members[i]));
    CHECK(a.members[i].dim() == 3);
    CHECK(vec_is_zero(*F, a.members[i].offset));
  }
  SubspaceDesign c = design_sample(F, 6, 3, 4, 124);
  bool all_same = true;
  for (size_t i = 0; i < 4; ++i) all_same = all_same && affine_equal(a.members[i], c.members[i]);
  CHECK_FALSE(all_same);
  CHECK_THROWS_AS(design_sample(F, 3, 4, 1, 0), Error);
  try {
    design_sample(F, 3, 4, 1, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Err::BadDims);
  }
}

TEST_CASE("subspace counting and enumeration") {
  FieldPtr F = Field::prime(2);
  CHECK(subspace_count_capped(2, 6, 2, 1u << 20) == 651);
  CHECK(subspace_count_capped(2, 8, 2, 1u << 20) == 10795);
  CHECK(subspace_count_capped(2, 6, 0, 1u << 20) == 1);
  CHECK(subspace_count_capped(2, 6, 7, 1u << 20) == 0);
  CHECK(subspace_count_capped(2, 200, 100, 1u << 20) == (1u << 20) + 1);

  std::vector<std::vector<Vec>> all = subspace_enumerate(*F, 6, 2);
  CHECK(all.size() == 651);
  std::set<std::set<std::vector<uint64_t>>> distinct;
  for (const auto& rows : all) {
    CHECK(mat_rank(*F, Mat::from_rows(*F, rows, 6)) == 2);
    AffineSubspace S = affine_make(*F, vec_zeros(*F, 6), rows);
    CHECK(S.basis == rows);  // already canonical
    distinct.insert(point_set(*F, affine_enumerate(*F, S)));
  }
  CHECK(distinct.size() == 651);
  CHECK_THROWS_AS(subspace_enumerate(*F, 6, 2, 100), Error);
}

TEST_CASE("intersection sums for hand-built designs") {
  FieldPtr F = Field::prime(2);
  SubspaceDesign full = design_sample(F, 3, 3, 3, 1);  // three copies of the full space
  CHECK(design_verify(full, 1) == 3);
  CHECK(full.certified->r == 1);
  CHECK(full.certified->d == 3);
  CHECK(design_verify(full, 2) == 6);

  // single plane in dimension 4: the best W is the plane itself
  Vec e0 = vec_zeros(*F, 4), e1 = vec_zeros(*F, 4);
  e0[0] = F->one();
  e1[1] = F->one();
  SubspaceDesign one{F, 4, 2, {affine_make(*F, vec_zeros(*F, 4), {e0, e1})}, std::nullopt};
  CHECK(design_verify(one, 2) == 2);

  // the oracle agrees on the trivial cases
  Vec w0 = vec_zeros(*F, 3), w1 = vec_zeros(*F, 3);
  w0[0] = F->one();
  w1[1] = F->one();
  CHECK(brute_design_sum(full, {w0, w1}) == 6);
  CHECK(brute_design_sum(full, {}) == 0);
}

TEST_CASE("verification maximum matches an independent plane scan") {
  FieldPtr F = Field::prime(2);
  SubspaceDesign D = design_sample(F, 6, 3, 4, 5);
  size_t d_max = design_verify(D, 2);
  CHECK(D.certified->r == 2);
  CHECK(D.certified->d == d_max);

  std::vector<std::vector<Vec>> planes = planes_by_spanning_pairs(*F, 6);
  REQUIRE(planes.size() == 651);
  size_t oracle_max = 0;
  for (const auto& W : planes) {
    size_t via_ranks = design_sum(D, W);
    size_t via_nullspaces = brute_design_sum(D, W);
    CHECK(via_ranks == via_nullspaces);
    oracle_max = std::max(oracle_max, via_nullspaces);
  }
  CHECK(oracle_max == d_max);
}

TEST_CASE("twenty random designs all meet the loose random-design bound") {
  FieldPtr F = Field::prime(2);
  size_t failures = 0;
  for (uint64_t trial = 0; trial < 20; ++trial) {
    SubspaceDesign D = design_sample(F, 8, 4, 4, 1000 + trial);
    size_t d = design_verify(D, 2);
    if (d > 32) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("pruning with full members returns the subspace unchanged") {
  FieldPtr F = Field::prime(2);
  SplitMix64 g{11};
  Mat B = partial_identity(*F, 4, 2);
  std::vector<Vec> a;
  for (int i = 0; i < 3; ++i) a.push_back(consistent_offset(*F, 4, 2, g));
  PeriodicSubspace T = block_product(F, B, a);
  SubspaceDesign D = design_sample(F, 4, 4, 3, 2);
  design_verify(D, 2);
  AffineSubspace out = design_prune(D, T);
  CHECK(affine_equal(out, periodic_to_affine(T)));
}

TEST_CASE("pruning the zero subspace gives the zero point") {
  FieldPtr F = Field::prime(2);
  std::vector<Vec> a(3, vec_zeros(*F, 4));
  PeriodicSubspace T = block_product(F, Mat::identity(*F, 4), a);
  SubspaceDesign D = design_sample(F, 4, 2, 3, 9);
  design_verify(D, 1);
  AffineSubspace out = design_prune(D, T);
  CHECK(affine_equal(out, affine_point(*F, vec_zeros(*F, 12))));
}

TEST_CASE("pruning matches the brute-force filter") {
  FieldPtr F = Field::prime(2);
  for (uint64_t trial = 0; trial < 30; ++trial) {
    SplitMix64 g{900 + trial};
    size_t kdim = 1 + trial % 2;
    Mat B = partial_identity(*F, 4, kdim);
    std::vector<Vec> a;
    for (int i = 0; i < 3; ++i) a.push_back(consistent_offset(*F, 4, kdim, g));
    PeriodicSubspace T = block_product(F, B, a);
    REQUIRE(T.rank == kdim);

    SubspaceDesign D = design_sample(F, 4, 3, 3, 7000 + trial);
    design_verify(D, kdim);

    AffineSubspace out = design_prune(D, T);
    CHECK((out.is_empty || out.dim() <= D.certified->d));

    std::set<std::vector<uint64_t>> expect;
    for (const Vec& x : periodic_enumerate(T)) {
      bool inside = true;
      for (size_t j = 0; j < 3 && inside; ++j) {
        Vec block(x.begin() + j * 4, x.begin() + (j + 1) * 4);
        inside = affine_member(*F, D.members[j], block);
      }
      if (inside) expect.insert(key(*F, x));
    }
    std::set<std::vector<uint64_t>> got =
        out.is_empty ? std::set<std::vector<uint64_t>>{} : point_set(*F, affine_enumerate(*F, out));
    CHECK(got == expect);
  }
}

TEST_CASE("pruning demands a certificate that covers the rank") {
  FieldPtr F = Field::prime(2);
  SplitMix64 g{4};
  Mat B = partial_identity(*F, 4, 2);
  std::vector<Vec> a;
  for (int i = 0; i < 3; ++i) a.push_back(consistent_offset(*F, 4, 2, g));
  PeriodicSubspace T = block_product(F, B, a);

  SubspaceDesign D = design_sample(F, 4, 3, 3, 1);
  CHECK_THROWS_AS(design_prune(D, T), Error);  // never verified
  design_verify(D, 1);                         // rank 2 needed
  try {
    design_prune(D, T);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::Uncertified);
  }
  design_verify(D, 2);
  CHECK_NOTHROW(design_prune(D, T));

  SubspaceDesign wrong = design_sample(F, 4, 3, 2, 1);  // two members, three blocks
  design_verify(wrong, 2);
  try {
    design_prune(wrong, T);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::ShapeMismatch);
  }
}

TEST_CASE("product subspace of the members") {
  FieldPtr F = field_make(default_field_spec(2, 2));
  SubspaceDesign D = design_sample(F, 4, 3, 3, 77);
  AffineSubspace V = precode_subspace(*F, D.members);
  CHECK(V.ambient == 12);
  CHECK(V.dim() == 9);

  AffineSubspace single = precode_subspace(*F, {D.members[1]});
  CHECK(affine_equal(single, D.members[1]));

  SplitMix64 g{31};
  for (int t = 0; t < 1000; ++t) {
    Vec x = random_vec(*F, 12, g);
    bool blockwise = true;
    for (size_t j = 0; j < 3; ++j) {
      Vec block(x.begin() + j * 4, x.begin() + (j + 1) * 4);
      blockwise = blockwise && affine_member(*F, D.members[j], block);
    }
    CHECK(affine_member(*F, V, x) == blockwise);
  }

  AffineSubspace other = affine_full(*F, 3);
  CHECK_THROWS_AS(precode_subspace(*F, {D.members[0], other}), Error);
}

TEST_CASE("cascade construction certifies every level") {
  FieldPtr F = Field::prime(2);
  CascadedDesign C = cascade_build(F, {2, 4, 8}, {1, 2, 4}, {1, 2}, 42);
  REQUIRE(C.levels.size() == 2);
  CHECK(C.levels[0].ambient == 2);
  CHECK(C.levels[0].members.size() == 2);
  CHECK(C.levels[0].dim == 1);
  CHECK(C.levels[1].ambient == 4);
  CHECK(C.levels[1].members.size() == 2);
  CHECK(C.levels[1].dim == 2);
  for (size_t lvl = 0; lvl < 2; ++lvl) {
    REQUIRE(C.levels[lvl].certified.has_value());
    CHECK(C.levels[lvl].certified->r == C.ranks[lvl]);
    CHECK(C.levels[lvl].certified->d <= C.ranks[lvl + 1]);
    SubspaceDesign copy = C.levels[lvl];
    copy.certified.reset();
    CHECK(design_verify(copy, C.ranks[lvl]) == C.levels[lvl].certified->d);
  }

  CascadedDesign single = cascade_build(F, {2, 4}, {1, 2}, {1}, 3);
  CHECK(single.levels.size() == 1);

  CHECK_THROWS_AS(cascade_build(F, {2, 3}, {1, 1}, {1}, 0), Error);
  try {
    cascade_build(F, {2, 3}, {1, 1}, {1}, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotDivisible);
  }
  try {
    cascade_build(F, {2, 4}, {2, 1}, {1}, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Err::ShapeMismatch);
  }
}

TEST_CASE("cascade construction fails when the bound is unreachable") {
  FieldPtr F = Field::prime(2);
  // four lines in the plane must repeat one of the three lines, so some W
  // collects at least 2 > 1
  try {
    cascade_build(F, {2, 8}, {1, 1}, {1}, 5);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::VerificationFailed);
  }
}

TEST_CASE("canonical subspace of an all-full cascade is the padded full space") {
  FieldPtr F = Field::prime(2);
  CascadedDesign C = cascade_build(F, {2, 4, 8}, {1, 2, 4}, {2, 4}, 8);
  AffineSubspace U = canonical_subspace(C, 10);
  std::vector<Vec> expect_rows;
  for (size_t i = 0; i < 8; ++i) {
    Vec e = vec_zeros(*F, 10);
    e[i] = F->one();
    expect_rows.push_back(std::move(e));
  }
  CHECK(affine_equal(U, affine_make(*F, vec_zeros(*F, 10), expect_rows)));
  CHECK_THROWS_AS(canonical_subspace(C, 7), Error);
}

TEST_CASE("canonical subspace membership and dimension bound") {
  FieldPtr F = Field::prime(2);
  CascadedDesign C = cascade_build(F, {2, 4, 8}, {1, 2, 4}, {1, 3}, 21);
  size_t kappa = 9;
  AffineSubspace U = canonical_subspace(C, kappa);

  // one linear constraint per lost dimension, per window
  size_t constraints = (2 - 1) * (8 / 2) + (4 - 3) * (8 / 4);
  CHECK(U.dim() >= 8 - constraints);

  auto direct = [&](const Vec& x) {
    for (size_t c = 8; c < kappa; ++c)
      if (!F->is_zero(x[c])) return false;
    for (size_t lvl = 1; lvl <= 2; ++lvl) {
      size_t m_lo = C.lengths[lvl - 1], m_hi = C.lengths[lvl];
      for (size_t w = 0; w < 8 / m_hi; ++w)
        for (size_t i = 0; i < m_hi / m_lo; ++i) {
          Vec block(x.begin() + w * m_hi + i * m_lo, x.begin() + w * m_hi + (i + 1) * m_lo);
          if (!affine_member(*F, C.levels[lvl - 1].members[i], block)) return false;
        }
    }
    return true;
  };

  for (const Vec& x : affine_enumerate(*F, U)) CHECK(direct(x));
  SplitMix64 g{77};
  size_t inside = 0;
  for (int t = 0; t < 500; ++t) {
    Vec x = random_vec(*F, kappa, g);
    bool d = direct(x);
    CHECK(affine_member(*F, U, x) == d);
    inside += d;
  }
  (void)inside;
}

TEST_CASE("cascade pruning at one level matches plain pruning") {
  FieldPtr F = Field::prime(2);
  CascadedDesign C = cascade_build(F, {2, 4}, {1, 2}, {1}, 13);
  SplitMix64 g{6};
  Mat B = partial_identity(*F, 2, 1);
  std::vector<Vec> a;
  for (int i = 0; i < 2; ++i) a.push_back(consistent_offset(*F, 2, 1, g));
  PeriodicSubspace T = block_product(F, B, a);
  REQUIRE(ultra_check(T));
  AffineSubspace via_cascade = cascade_prune(C, T, 4);
  AffineSubspace via_design = design_prune(C.levels[0], T);
  CHECK(affine_equal(via_cascade, via_design));
}

TEST_CASE("cascade pruning equals intersecting with the canonical subspace") {
  FieldPtr F = Field::prime(2);
  for (uint64_t trial = 0; trial < 10; ++trial) {
    CascadedDesign C = cascade_build(F, {2, 4, 8}, {1, 2, 4}, {1, 2}, 500 + trial);
    SplitMix64 g{300 + trial};
    Mat B = partial_identity(*F, 2, 1);
    std::vector<Vec> a;
    for (int i = 0; i < 4; ++i) a.push_back(consistent_offset(*F, 2, 1, g));
    PeriodicSubspace T = block_product(F, B, a);
    REQUIRE(ultra_check(T));

    AffineSubspace got = cascade_prune(C, T, 8);
    AffineSubspace expect =
        affine_intersect(*F, periodic_to_affine(T), canonical_subspace(C, 8));
    CHECK(affine_equal(got, expect));
    if (!got.is_empty) {
      CHECK(got.dim() <= C.ranks.back());
      CHECK(point_set(*F, affine_enumerate(*F, got)) ==
            point_set(*F, affine_enumerate(*F, expect)));
    }
  }
}

TEST_CASE("cascade pruning the zero subspace") {
  FieldPtr F = Field::prime(2);
  CascadedDesign C = cascade_build(F, {2, 4, 8}, {1, 2, 4}, {1, 2}, 99);
  std::vector<Vec> a(4, vec_zeros(*F, 2));
  PeriodicSubspace T = block_product(F, Mat::identity(*F, 2), a);
  AffineSubspace out = cascade_prune(C, T, 8);
  CHECK(affine_equal(out, affine_point(*F, vec_zeros(*F, 8))));
}

TEST_CASE("cascade pruning rejects weak inputs") {
  FieldPtr F = Field::prime(2);
  CascadedDesign C = cascade_build(F, {2, 4, 8}, {1, 2, 4}, {1, 2}, 15);
  SplitMix64 g{8};
  // rank 2 > cascade base rank 1
  std::vector<Vec> a(4, vec_zeros(*F, 2));
  PeriodicSubspace wide = block_product(F, Mat::zeros(*F, 2, 2), a);
  try {
    cascade_prune(C, wide, 8);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::Uncertified);
  }

  CascadedDesign stripped = C;
  stripped.levels[1].certified.reset();
  Mat B = partial_identity(*F, 2, 1);
  std::vector<Vec> a2;
  for (int i = 0; i < 4; ++i) a2.push_back(consistent_offset(*F, 2, 1, g));
  PeriodicSubspace T = block_product(F, B, a2);
  try {
    cascade_prune(stripped, T, 8);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::Uncertified);
  }
}

TEST_CASE("design text form round-trips") {
  FieldPtr F = field_make(default_field_spec(2, 4));
  SubspaceDesign D = design_sample(F, 3, 2, 2, 64);
  design_verify(D, 1);
  std::string text = design_to_string(D);
  SubspaceDesign back = design_from_string(F, text);
  CHECK(back.ambient == D.ambient);
  CHECK(back.dim == D.dim);
  REQUIRE(back.members.size() == D.members.size());
  for (size_t i = 0; i < D.members.size(); ++i)
    CHECK(affine_equal(back.members[i], D.members[i]));
  REQUIRE(back.certified.has_value());
  CHECK(back.certified->r == D.certified->r);
  CHECK(back.certified->d == D.certified->d);
  CHECK(design_to_string(back) == text);

  FieldPtr other = Field::prime(5);
  CHECK_THROWS_AS(design_from_string(other, text), Error);
  CHECK_THROWS_AS(design_from_string(F, text.substr(0, text.size() / 2)), Error);
}

TEST_CASE("generic equation scan oracle") {
  OracleBudget tight;
  tight.max_enum = 10;
  CHECK_THROWS_AS(brute_equation_members([](uint64_t) { return true; }, 11, tight), Error);
  std::vector<uint64_t> hits =
      brute_equation_members([](uint64_t i) { return i % 3 == 0; }, 10);
  CHECK(hits == std::vector<uint64_t>{0, 3, 6, 9});
}
