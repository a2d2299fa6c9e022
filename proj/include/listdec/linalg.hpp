#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "listdec/fields.hpp"

namespace listdec {

using Vec = std::vector<Elem>;

// Dense row-major matrix over one field.
struct Mat {
  size_t rows = 0, cols = 0;
  std::vector<Elem> e;

  Elem& at(size_t r, size_t c) { return e[r * cols + c]; }
  const Elem& at(size_t r, size_t c) const { return e[r * cols + c]; }

  static Mat zeros(const Field& F, size_t rows, size_t cols);
  static Mat identity(const Field& F, size_t n);
  static Mat from_rows(const Field& F, const std::vector<Vec>& rows, size_t cols);

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && e == o.e; }
};

Vec vec_zeros(const Field& F, size_t n);
Vec vec_add(const Field& F, const Vec& x, const Vec& y);
Vec vec_sub(const Field& F, const Vec& x, const Vec& y);
Vec vec_scale(const Field& F, const Elem& c, const Vec& x);
Elem vec_dot(const Field& F, const Vec& x, const Vec& y);
bool vec_is_zero(const Field& F, const Vec& x);
Vec mat_vec(const Field& F, const Mat& M, const Vec& x);
Mat mat_mul(const Field& F, const Mat& A, const Mat& B);
Mat mat_transpose(const Mat& M);

struct RrefResult {
  Mat R;
  std::vector<size_t> pivots;  // pivot column per pivot row, ascending
  size_t rank = 0;
};

// Reduced row-echelon form.  Pivot choice is the first nonzero entry in
// column order, which fixes the output bit for bit on every platform.
RrefResult rref(const Field& F, const Mat& M);

size_t mat_rank(const Field& F, const Mat& M);

// Kernel basis; one vector per free column, ascending by free column, with a
// 1 in that column.  Deterministic companion of rref.
std::vector<Vec> nullspace(const Field& F, const Mat& M);

struct SolveResult {
  Vec particular;
  std::vector<Vec> kernel;
};

// One solution of M x = b (free variables set to 0) plus the kernel basis;
// nullopt when the system is inconsistent.
std::optional<SolveResult> solve(const Field& F, const Mat& M, const Vec& b);

// Affine subspace offset + span(basis) of F^ambient in canonical form:
// basis rows in RREF, offset reduced to zero in every pivot column.  The
// empty set is a distinct state, not a degenerate offset/basis pair.
struct AffineSubspace {
  size_t ambient = 0;
  bool is_empty = true;
  Vec offset;
  std::vector<Vec> basis;

  size_t dim() const { return basis.size(); }
};

inline constexpr uint64_t kEnumerationCap = 1ULL << 20;

AffineSubspace affine_empty(size_t ambient);
AffineSubspace affine_point(const Field& F, Vec offset);
AffineSubspace affine_make(const Field& F, Vec offset, std::vector<Vec> spanning);
// Smallest affine subspace containing every point; `ambient` only matters
// for the empty list, otherwise the points fix it.
AffineSubspace affine_hull(const Field& F, size_t ambient, const std::vector<Vec>& points);
AffineSubspace affine_full(const Field& F, size_t ambient);

bool affine_equal(const AffineSubspace& A, const AffineSubspace& B);
bool affine_member(const Field& F, const AffineSubspace& A, const Vec& x);

AffineSubspace affine_intersect(const Field& F, const AffineSubspace& A, const AffineSubspace& B);

// All q^dim points, offset + sum c_i basis_i, ordered lexicographically by
// the coefficient tuple (c_1 most significant, each coefficient running
// through the field in canonical element order).  TooLarge above `cap`.
std::vector<Vec> affine_enumerate(const Field& F, const AffineSubspace& A,
                                  uint64_t cap = kEnumerationCap);

// Constraint form {x : C x = d} of a non-empty subspace, and its inverse.
struct AffineConstraints {
  Mat C;
  Vec d;
};
AffineConstraints affine_constraints(const Field& F, const AffineSubspace& A);
AffineSubspace affine_from_constraints(const Field& F, const Mat& C, const Vec& d);

// Matrix of a linearized polynomial acting on coordinate vectors over the
// immediate base field.
Mat linearized_matrix(const Field& F, const LinearizedPoly& B);

}  // namespace listdec
