#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "listdec/linalg.hpp"

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

Mat random_mat(const Field& F, size_t r, size_t c, SplitMix64& g) {
  Mat M = Mat::zeros(F, r, c);
  for (Elem& e : M.e) e = F.sample(g);
  return M;
}

Vec random_vec(const Field& F, size_t n, SplitMix64& g) {
  Vec v;
  for (size_t i = 0; i < n; ++i) v.push_back(F.sample(g));
  return v;
}

}  // namespace

TEST_CASE("rref fixes the identity and the zero matrix") {
  FieldPtr F = field_make(2, 2, {1, 1, 1});
  Mat I = Mat::identity(*F, 4);
  RrefResult r = rref(*F, I);
  CHECK(r.R == I);
  CHECK(r.rank == 4);

  Mat Z = Mat::zeros(*F, 3, 5);
  RrefResult z = rref(*F, Z);
  CHECK(z.R == Z);
  CHECK(z.rank == 0);
  CHECK(z.pivots.empty());
}

TEST_CASE("rank-nullity and kernel membership on random matrices") {
  FieldPtr F = field_make(2, 2, {1, 1, 1});
  SplitMix64 g{5};
  for (int t = 0; t < 25; ++t) {
    Mat M = random_mat(*F, 6, 6, g);
    RrefResult r = rref(*F, M);
    std::vector<Vec> ns = nullspace(*F, M);
    CHECK(r.rank + ns.size() == 6);
    for (const Vec& v : ns) CHECK(vec_is_zero(*F, mat_vec(*F, M, v)));
    // RREF rows stay inside the original row space: reducing the stacked
    // matrix [M; R] must not increase the rank
    Mat stacked = Mat::zeros(*F, 12, 6);
    for (size_t i = 0; i < 6; ++i)
      for (size_t j = 0; j < 6; ++j) {
        stacked.at(i, j) = M.at(i, j);
        stacked.at(6 + i, j) = r.R.at(i, j);
      }
    CHECK(mat_rank(*F, stacked) == r.rank);
  }
}

TEST_CASE("solve handles identity, inconsistent, and random consistent systems") {
  FieldPtr F = field_make(default_field_spec(3, 2));  // GF(9)
  SplitMix64 g{13};

  Mat I = Mat::identity(*F, 4);
  Vec b = random_vec(*F, 4, g);
  auto s = solve(*F, I, b);
  REQUIRE(s.has_value());
  CHECK(s->particular == b);
  CHECK(s->kernel.empty());

  Mat Z = Mat::zeros(*F, 3, 3);
  Vec nz = vec_zeros(*F, 3);
  nz[1] = F->one();
  CHECK(!solve(*F, Z, nz).has_value());

  for (int t = 0; t < 50; ++t) {
    Mat M = random_mat(*F, 5, 4, g);
    Vec x = random_vec(*F, 4, g);
    Vec rhs = mat_vec(*F, M, x);
    auto sol = solve(*F, M, rhs);
    REQUIRE(sol.has_value());
    CHECK(vec_is_zero(*F, vec_sub(*F, mat_vec(*F, M, sol->particular), rhs)));
    for (const Vec& k : sol->kernel) CHECK(vec_is_zero(*F, mat_vec(*F, M, k)));
  }
}

TEST_CASE("affine intersection is idempotent and detects parallel lines") {
  FieldPtr F2 = Field::prime(2);
  SplitMix64 g{17};
  AffineSubspace A = affine_make(*F2, random_vec(*F2, 4, g),
                                 {random_vec(*F2, 4, g), random_vec(*F2, 4, g)});
  CHECK(affine_equal(affine_intersect(*F2, A, A), A));

  // x + span{(1,0)} and its shift by (0,1): disjoint parallel lines in F_2^2
  Vec dir = {F2->one(), F2->zero()};
  AffineSubspace L1 = affine_make(*F2, vec_zeros(*F2, 2), {dir});
  AffineSubspace L2 = affine_make(*F2, Vec{F2->zero(), F2->one()}, {dir});
  AffineSubspace X = affine_intersect(*F2, L1, L2);
  CHECK(X.is_empty);

  AffineSubspace B = affine_make(*F2, random_vec(*F2, 3, g), {random_vec(*F2, 3, g)});
  AffineSubspace C = affine_make(*F2, random_vec(*F2, 4, g), {random_vec(*F2, 4, g)});
  CHECK_THROWS_WITH_AS(affine_intersect(*F2, B, C), doctest::Contains("DimMismatch"), Error);
}

TEST_CASE("affine intersection equals the brute-force point-set intersection") {
  FieldPtr F3 = Field::prime(3);
  SplitMix64 g{23};
  for (int t = 0; t < 60; ++t) {
    AffineSubspace A = affine_make(*F3, random_vec(*F3, 4, g),
                                   {random_vec(*F3, 4, g), random_vec(*F3, 4, g)});
    AffineSubspace B = affine_make(*F3, random_vec(*F3, 4, g),
                                   {random_vec(*F3, 4, g), random_vec(*F3, 4, g)});
    AffineSubspace X = affine_intersect(*F3, A, B);
    CHECK(affine_equal(X, affine_intersect(*F3, B, A)));

    auto pa = point_set(*F3, affine_enumerate(*F3, A));
    auto pb = point_set(*F3, affine_enumerate(*F3, B));
    std::set<std::vector<uint64_t>> expect;
    for (const auto& p : pa)
      if (pb.count(p)) expect.insert(p);
    CHECK(point_set(*F3, affine_enumerate(*F3, X)) == expect);
  }
}

TEST_CASE("affine enumeration is exact, duplicate-free, and capped") {
  FieldPtr F2 = Field::prime(2);
  Vec off = {F2->one(), F2->zero(), F2->one(), F2->zero()};
  AffineSubspace P = affine_point(*F2, off);
  auto pts = affine_enumerate(*F2, P);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == off);

  CHECK(affine_enumerate(*F2, affine_empty(4)).empty());

  SplitMix64 g{31};
  AffineSubspace A = affine_make(*F2, random_vec(*F2, 6, g),
                                 {random_vec(*F2, 6, g), random_vec(*F2, 6, g),
                                  random_vec(*F2, 6, g)});
  auto all = affine_enumerate(*F2, A);
  CHECK(all.size() == (1ULL << A.dim()));
  CHECK(point_set(*F2, all).size() == all.size());
  for (const Vec& p : all) CHECK(affine_member(*F2, A, p));

  CHECK_THROWS_WITH_AS(affine_enumerate(*F2, A, 4), doctest::Contains("TooLarge"), Error);
}

TEST_CASE("canonical form zeroes pivot columns of the offset") {
  FieldPtr F3 = Field::prime(3);
  SplitMix64 g{37};
  for (int t = 0; t < 40; ++t) {
    AffineSubspace A = affine_make(*F3, random_vec(*F3, 5, g),
                                   {random_vec(*F3, 5, g), random_vec(*F3, 5, g)});
    // offset must be a member, and rebuilding from any member gives the same form
    CHECK(affine_member(*F3, A, A.offset));
    auto pts = affine_enumerate(*F3, A);
    AffineSubspace B = affine_make(*F3, pts[pts.size() / 2], A.basis);
    CHECK(affine_equal(A, B));
  }
}
