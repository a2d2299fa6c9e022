#include "listdec/linalg.hpp"

#include <algorithm>

namespace listdec {

Mat Mat::zeros(const Field& F, size_t rows, size_t cols) {
  Mat M;
  M.rows = rows;
  M.cols = cols;
  M.e.assign(rows * cols, F.zero());
  return M;
}

Mat Mat::identity(const Field& F, size_t n) {
  Mat M = zeros(F, n, n);
  for (size_t i = 0; i < n; ++i) M.at(i, i) = F.one();
  return M;
}

Mat Mat::from_rows(const Field& F, const std::vector<Vec>& rows, size_t cols) {
  Mat M = zeros(F, rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) fail(Err::LengthMismatch, "row length mismatch");
    for (size_t j = 0; j < cols; ++j) M.at(i, j) = rows[i][j];
  }
  return M;
}

Vec vec_zeros(const Field& F, size_t n) { return Vec(n, F.zero()); }

Vec vec_add(const Field& F, const Vec& x, const Vec& y) {
  if (x.size() != y.size()) fail(Err::LengthMismatch, "vector length mismatch");
  Vec r = x;
  for (size_t i = 0; i < r.size(); ++i) r[i] = F.add(r[i], y[i]);
  return r;
}

Vec vec_sub(const Field& F, const Vec& x, const Vec& y) {
  if (x.size() != y.size()) fail(Err::LengthMismatch, "vector length mismatch");
  Vec r = x;
  for (size_t i = 0; i < r.size(); ++i) r[i] = F.sub(r[i], y[i]);
  return r;
}

Vec vec_scale(const Field& F, const Elem& c, const Vec& x) {
  Vec r = x;
  for (Elem& v : r) v = F.mul(c, v);
  return r;
}

Elem vec_dot(const Field& F, const Vec& x, const Vec& y) {
  if (x.size() != y.size()) fail(Err::LengthMismatch, "vector length mismatch");
  Elem acc = F.zero();
  for (size_t i = 0; i < x.size(); ++i) acc = F.add(acc, F.mul(x[i], y[i]));
  return acc;
}

bool vec_is_zero(const Field& F, const Vec& x) {
  for (const Elem& v : x)
    if (!F.is_zero(v)) return false;
  return true;
}

Vec mat_vec(const Field& F, const Mat& M, const Vec& x) {
  if (x.size() != M.cols) fail(Err::LengthMismatch, "matrix-vector shape mismatch");
  Vec r = vec_zeros(F, M.rows);
  for (size_t i = 0; i < M.rows; ++i) {
    Elem acc = F.zero();
    for (size_t j = 0; j < M.cols; ++j) acc = F.add(acc, F.mul(M.at(i, j), x[j]));
    r[i] = acc;
  }
  return r;
}

Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
  if (A.cols != B.rows) fail(Err::DimMismatch, "matrix product shape mismatch");
  Mat C = Mat::zeros(F, A.rows, B.cols);
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t k = 0; k < A.cols; ++k) {
      const Elem& a = A.at(i, k);
      if (F.is_zero(a)) continue;
      for (size_t j = 0; j < B.cols; ++j)
        C.at(i, j) = F.add(C.at(i, j), F.mul(a, B.at(k, j)));
    }
  return C;
}

Mat mat_transpose(const Mat& M) {
  Mat T;
  T.rows = M.cols;
  T.cols = M.rows;
  T.e = M.e;
  for (size_t i = 0; i < M.rows; ++i)
    for (size_t j = 0; j < M.cols; ++j) T.e[j * T.cols + i] = M.at(i, j);
  return T;
}

RrefResult rref(const Field& F, const Mat& M) {
  RrefResult res;
  res.R = M;
  Mat& R = res.R;
  size_t r = 0;
  for (size_t c = 0; c < R.cols && r < R.rows; ++c) {
    size_t pivot = r;
    while (pivot < R.rows && F.is_zero(R.at(pivot, c))) ++pivot;
    if (pivot == R.rows) continue;
    if (pivot != r)
      for (size_t j = 0; j < R.cols; ++j) std::swap(R.at(pivot, j), R.at(r, j));
    Elem inv = F.inv(R.at(r, c));
    for (size_t j = c; j < R.cols; ++j) R.at(r, j) = F.mul(inv, R.at(r, j));
    for (size_t i = 0; i < R.rows; ++i) {
      if (i == r || F.is_zero(R.at(i, c))) continue;
      Elem f = R.at(i, c);
      for (size_t j = c; j < R.cols; ++j)
        R.at(i, j) = F.sub(R.at(i, j), F.mul(f, R.at(r, j)));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

size_t mat_rank(const Field& F, const Mat& M) { return rref(F, M).rank; }

std::vector<Vec> nullspace(const Field& F, const Mat& M) {
  RrefResult rr = rref(F, M);
  std::vector<bool> is_pivot(M.cols, false);
  for (size_t c : rr.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (size_t c = 0; c < M.cols; ++c) {
    if (is_pivot[c]) continue;
    Vec v = vec_zeros(F, M.cols);
    v[c] = F.one();
    for (size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = F.neg(rr.R.at(i, c));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<SolveResult> solve(const Field& F, const Mat& M, const Vec& b) {
  if (b.size() != M.rows) fail(Err::LengthMismatch, "right-hand side length mismatch");
  Mat aug = Mat::zeros(F, M.rows, M.cols + 1);
  for (size_t i = 0; i < M.rows; ++i) {
    for (size_t j = 0; j < M.cols; ++j) aug.at(i, j) = M.at(i, j);
    aug.at(i, M.cols) = b[i];
  }
  RrefResult rr = rref(F, aug);
  for (size_t i = 0; i < rr.rank; ++i)
    if (rr.pivots[i] == M.cols) return std::nullopt;
  SolveResult out;
  out.particular = vec_zeros(F, M.cols);
  for (size_t i = 0; i < rr.rank; ++i) out.particular[rr.pivots[i]] = rr.R.at(i, M.cols);
  out.kernel = nullspace(F, M);
  return out;
}

AffineSubspace affine_empty(size_t ambient) {
  AffineSubspace A;
  A.ambient = ambient;
  A.is_empty = true;
  return A;
}

AffineSubspace affine_point(const Field& F, Vec offset) {
  return affine_make(F, std::move(offset), {});
}

AffineSubspace affine_make(const Field& F, Vec offset, std::vector<Vec> spanning) {
  AffineSubspace A;
  A.ambient = offset.size();
  A.is_empty = false;
  if (!spanning.empty()) {
    Mat M = Mat::from_rows(F, spanning, A.ambient);
    RrefResult rr = rref(F, M);
    for (size_t i = 0; i < rr.rank; ++i) {
      Vec row(rr.R.e.begin() + i * rr.R.cols, rr.R.e.begin() + (i + 1) * rr.R.cols);
      A.basis.push_back(std::move(row));
    }
    // zero the offset in every pivot column
    for (size_t i = 0; i < rr.rank; ++i) {
      Elem c = offset[rr.pivots[i]];
      if (!F.is_zero(c)) offset = vec_sub(F, offset, vec_scale(F, c, A.basis[i]));
    }
  }
  A.offset = std::move(offset);
  return A;
}

AffineSubspace affine_hull(const Field& F, size_t ambient, const std::vector<Vec>& points) {
  if (points.empty()) return affine_empty(ambient);
  std::vector<Vec> span;
  span.reserve(points.size() - 1);
  for (size_t i = 1; i < points.size(); ++i) span.push_back(vec_sub(F, points[i], points[0]));
  return affine_make(F, points[0], std::move(span));
}

AffineSubspace affine_full(const Field& F, size_t ambient) {
  std::vector<Vec> rows;
  for (size_t i = 0; i < ambient; ++i) {
    Vec v = vec_zeros(F, ambient);
    v[i] = F.one();
    rows.push_back(std::move(v));
  }
  return affine_make(F, vec_zeros(F, ambient), std::move(rows));
}

bool affine_equal(const AffineSubspace& A, const AffineSubspace& B) {
  if (A.ambient != B.ambient) return false;
  if (A.is_empty || B.is_empty) return A.is_empty == B.is_empty;
  return A.offset == B.offset && A.basis == B.basis;
}

bool affine_member(const Field& F, const AffineSubspace& A, const Vec& x) {
  if (x.size() != A.ambient) fail(Err::LengthMismatch, "point dimension mismatch");
  if (A.is_empty) return false;
  Vec v = vec_sub(F, x, A.offset);
  for (const Vec& row : A.basis) {
    // canonical basis rows are RREF rows; eliminate via the pivot column
    size_t p = 0;
    while (p < row.size() && F.is_zero(row[p])) ++p;
    Elem c = v[p];
    if (!F.is_zero(c)) v = vec_sub(F, v, vec_scale(F, c, row));
  }
  return vec_is_zero(F, v);
}

AffineConstraints affine_constraints(const Field& F, const AffineSubspace& A) {
  if (A.is_empty) throw std::logic_error("constraint form of the empty subspace");
  Mat U = Mat::from_rows(F, A.basis, A.ambient);
  std::vector<Vec> ann = nullspace(F, U);
  AffineConstraints out;
  out.C = Mat::from_rows(F, ann, A.ambient);
  out.d = mat_vec(F, out.C, A.offset);
  return out;
}

AffineSubspace affine_from_constraints(const Field& F, const Mat& C, const Vec& d) {
  auto sol = solve(F, C, d);
  if (!sol) return affine_empty(C.cols);
  return affine_make(F, std::move(sol->particular), std::move(sol->kernel));
}

AffineSubspace affine_intersect(const Field& F, const AffineSubspace& A, const AffineSubspace& B) {
  if (A.ambient != B.ambient) fail(Err::DimMismatch, "ambient dimension mismatch");
  if (A.is_empty || B.is_empty) return affine_empty(A.ambient);
  AffineConstraints ca = affine_constraints(F, A);
  AffineConstraints cb = affine_constraints(F, B);
  Mat C = Mat::zeros(F, ca.C.rows + cb.C.rows, A.ambient);
  Vec d = vec_zeros(F, C.rows);
  for (size_t i = 0; i < ca.C.rows; ++i) {
    for (size_t j = 0; j < A.ambient; ++j) C.at(i, j) = ca.C.at(i, j);
    d[i] = ca.d[i];
  }
  for (size_t i = 0; i < cb.C.rows; ++i) {
    for (size_t j = 0; j < A.ambient; ++j) C.at(ca.C.rows + i, j) = cb.C.at(i, j);
    d[ca.C.rows + i] = cb.d[i];
  }
  return affine_from_constraints(F, C, d);
}

std::vector<Vec> affine_enumerate(const Field& F, const AffineSubspace& A, uint64_t cap) {
  if (A.is_empty) return {};
  if (A.dim() == 0) return {A.offset};
  uint64_t q = F.size();
  uint64_t count = 1;
  for (size_t i = 0; i < A.dim(); ++i) {
    if (count > cap / q) fail(Err::TooLarge, "enumeration exceeds cap");
    count *= q;
  }
  if (count > cap) fail(Err::TooLarge, "enumeration exceeds cap");
  std::vector<Vec> pts;
  pts.reserve(count);
  for (uint64_t t = 0; t < count; ++t) {
    Vec x = A.offset;
    uint64_t rem = t;
    // first basis coefficient is the most significant digit of t
    for (size_t i = A.dim(); i-- > 0;) {
      uint64_t ci = rem % q;
      rem /= q;
      if (ci != 0) x = vec_add(F, x, vec_scale(F, F.elem_at(ci), A.basis[i]));
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

Mat linearized_matrix(const Field& F, const LinearizedPoly& B) {
  const Field& S = F.base() ? *F.base() : F;
  unsigned m = F.base() ? F.deg() : 1;
  Mat M = Mat::zeros(S, m, m);
  for (unsigned j = 0; j < m; ++j) {
    std::vector<Elem> unit(m, S.zero());
    unit[j] = S.one();
    Elem img = linearized_eval(F, B, F.from_coords(unit));
    std::vector<Elem> co = F.coords(img);
    for (unsigned i = 0; i < m; ++i) M.at(i, j) = co[i];
  }
  return M;
}

std::vector<Elem> linearized_kernel(const Field& F, const LinearizedPoly& B) {
  if (B.is_zero()) fail(Err::ZeroMap, "kernel of the zero map is everything");
  const Field& S = F.base() ? *F.base() : F;
  Mat M = linearized_matrix(F, B);
  std::vector<Vec> ns = nullspace(S, M);
  std::vector<Elem> out;
  out.reserve(ns.size());
  for (const Vec& v : ns) out.push_back(F.from_coords(v));
  return out;
}

}  // namespace listdec
