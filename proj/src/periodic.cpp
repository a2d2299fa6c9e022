#include "listdec/periodic.hpp"

#include <map>

namespace listdec {

namespace {

Vec block_of(const Vec& x, size_t delta, size_t i) {
  return Vec(x.begin() + i * delta, x.begin() + (i + 1) * delta);
}

// Stacked constraint system over the full ambient space, pad rows included.
AffineConstraints stacked_constraints(const PeriodicSubspace& H) {
  const Field& F = *H.field;
  size_t amb = H.ambient();
  Mat C = Mat::zeros(F, amb + H.pad, amb);
  Vec d = vec_zeros(F, amb + H.pad);
  for (size_t i = 0; i < H.blocks; ++i)
    for (size_t t = 0; t < H.delta; ++t) {
      size_t row = i * H.delta + t;
      for (size_t j = 0; j < i; ++j)
        for (size_t c = 0; c < H.delta; ++c) C.at(row, j * H.delta + c) = H.A[i][j].at(t, c);
      for (size_t c = 0; c < H.delta; ++c) C.at(row, i * H.delta + c) = H.B.at(t, c);
      d[row] = F.neg(H.a[i][t]);
    }
  for (size_t t = 0; t < H.pad; ++t) C.at(amb + t, amb - H.pad + t) = F.one();
  return {std::move(C), std::move(d)};
}

}  // namespace

PeriodicSubspace periodic_make(FieldPtr field, size_t delta, size_t blocks, size_t rank,
                               Mat B, std::vector<Vec> a, std::vector<std::vector<Mat>> A,
                               size_t pad) {
  if (!field || delta == 0 || blocks == 0) throw std::logic_error("bad periodic shape");
  if (B.rows != delta || B.cols != delta) fail(Err::ShapeMismatch, "B must be delta x delta");
  if (a.size() != blocks) fail(Err::ShapeMismatch, "need one offset vector per block");
  for (const Vec& v : a)
    if (v.size() != delta) fail(Err::ShapeMismatch, "offset vector length mismatch");
  if (A.size() != blocks) fail(Err::ShapeMismatch, "need one coupling row per block");
  for (size_t i = 0; i < blocks; ++i) {
    if (A[i].size() != i) fail(Err::ShapeMismatch, "coupling family must be strictly lower");
    for (const Mat& M : A[i])
      if (M.rows != delta || M.cols != delta) fail(Err::ShapeMismatch, "coupling matrix shape");
  }
  if (pad >= delta) fail(Err::ShapeMismatch, "pad must be shorter than one block");

  PeriodicSubspace H;
  H.field = std::move(field);
  H.delta = delta;
  H.blocks = blocks;
  H.rank = rank;
  H.B = std::move(B);
  H.a = std::move(a);
  H.A = std::move(A);
  H.pad = pad;

  size_t kernel_dim = nullspace(*H.field, H.B).size();
  if (kernel_dim > rank)
    fail(Err::InternalInvariant, "ker(B) has dimension " + std::to_string(kernel_dim) +
                                     " > rank bound " + std::to_string(rank));

  AffineConstraints cs = stacked_constraints(H);
  H.is_empty = affine_from_constraints(*H.field, cs.C, cs.d).is_empty;
  return H;
}

bool periodic_member(const PeriodicSubspace& H, const Vec& x) {
  const Field& F = *H.field;
  if (x.size() != H.ambient()) fail(Err::LengthMismatch, "point has wrong length");
  for (size_t t = 0; t < H.pad; ++t)
    if (!F.is_zero(x[H.ambient() - H.pad + t])) return false;
  for (size_t i = 0; i < H.blocks; ++i) {
    Vec v = H.a[i];
    for (size_t j = 0; j < i; ++j)
      v = vec_add(F, v, mat_vec(F, H.A[i][j], block_of(x, H.delta, j)));
    v = vec_add(F, v, mat_vec(F, H.B, block_of(x, H.delta, i)));
    if (!vec_is_zero(F, v)) return false;
  }
  return true;
}

AffineSubspace periodic_extend(const PeriodicSubspace& H, const Vec& prefix) {
  const Field& F = *H.field;
  if (prefix.size() % H.delta != 0 || prefix.size() >= H.ambient())
    fail(Err::LengthMismatch, "prefix must cover a proper number of whole blocks");
  size_t jb = prefix.size() / H.delta;  // target block
  // a prefix violating an earlier block equation has no extensions at all
  for (size_t i = 0; i < jb; ++i) {
    Vec v = H.a[i];
    for (size_t j = 0; j < i; ++j)
      v = vec_add(F, v, mat_vec(F, H.A[i][j], block_of(prefix, H.delta, j)));
    v = vec_add(F, v, mat_vec(F, H.B, block_of(prefix, H.delta, i)));
    if (!vec_is_zero(F, v)) return affine_empty(H.delta);
  }
  Vec rhs = H.a[jb];
  for (size_t j = 0; j < jb; ++j)
    rhs = vec_add(F, rhs, mat_vec(F, H.A[jb][j], block_of(prefix, H.delta, j)));
  rhs = vec_scale(F, F.neg(F.one()), rhs);

  size_t pad_rows = (jb + 1 == H.blocks) ? H.pad : 0;
  Mat C = Mat::zeros(F, H.delta + pad_rows, H.delta);
  Vec d = vec_zeros(F, H.delta + pad_rows);
  for (size_t t = 0; t < H.delta; ++t) {
    for (size_t c = 0; c < H.delta; ++c) C.at(t, c) = H.B.at(t, c);
    d[t] = rhs[t];
  }
  for (size_t t = 0; t < pad_rows; ++t) C.at(H.delta + t, H.delta - pad_rows + t) = F.one();
  return affine_from_constraints(F, C, d);
}

AffineSubspace periodic_to_affine(const PeriodicSubspace& H) {
  AffineConstraints cs = stacked_constraints(H);
  return affine_from_constraints(*H.field, cs.C, cs.d);
}

std::vector<Vec> periodic_enumerate(const PeriodicSubspace& H, uint64_t cap) {
  return affine_enumerate(*H.field, periodic_to_affine(H), cap);
}

size_t periodic_project_dim(const PeriodicSubspace& H, size_t j) {
  if (j == 0 || j > H.blocks) throw std::logic_error("block index out of range");
  AffineSubspace full = periodic_to_affine(H);
  if (full.is_empty) throw std::logic_error("projection of an empty subspace");
  const Field& F = *H.field;
  std::vector<Vec> truncated;
  for (const Vec& v : full.basis)
    truncated.emplace_back(v.begin(), v.begin() + j * H.delta);
  size_t dim = truncated.empty()
                   ? 0
                   : mat_rank(F, Mat::from_rows(F, truncated, j * H.delta));
  if (dim > j * H.rank)
    fail(Err::InternalInvariant, "projection dimension exceeds j*rank");
  return dim;
}

PeriodicSubspace periodic_regroup(const PeriodicSubspace& H, size_t u) {
  const Field& F = *H.field;
  if (u == 0 || H.blocks % u != 0) fail(Err::NotDivisible, "group size must divide block count");
  size_t delta2 = u * H.delta;
  size_t blocks2 = H.blocks / u;

  // diagonal super-block from group 0; later groups must repeat it exactly
  Mat B2 = Mat::zeros(F, delta2, delta2);
  for (size_t ti = 0; ti < u; ++ti)
    for (size_t tj = 0; tj <= ti; ++tj) {
      const Mat& src = (tj == ti) ? H.B : H.A[ti][tj];
      for (size_t r = 0; r < H.delta; ++r)
        for (size_t c = 0; c < H.delta; ++c)
          B2.at(ti * H.delta + r, tj * H.delta + c) = src.at(r, c);
    }
  for (size_t g = 1; g < blocks2; ++g)
    for (size_t ti = 0; ti < u; ++ti)
      for (size_t tj = 0; tj < ti; ++tj)
        if (!(H.A[g * u + ti][g * u + tj] == H.A[ti][tj]))
          fail(Err::ShapeMismatch, "intra-group coefficients vary between groups");

  std::vector<Vec> a2;
  std::vector<std::vector<Mat>> A2(blocks2);
  for (size_t g = 0; g < blocks2; ++g) {
    Vec ag;
    for (size_t t = 0; t < u; ++t)
      ag.insert(ag.end(), H.a[g * u + t].begin(), H.a[g * u + t].end());
    a2.push_back(std::move(ag));
    for (size_t g2 = 0; g2 < g; ++g2) {
      Mat M = Mat::zeros(F, delta2, delta2);
      for (size_t ti = 0; ti < u; ++ti)
        for (size_t tj = 0; tj < u; ++tj) {
          const Mat& src = H.A[g * u + ti][g2 * u + tj];
          for (size_t r = 0; r < H.delta; ++r)
            for (size_t c = 0; c < H.delta; ++c)
              M.at(ti * H.delta + r, tj * H.delta + c) = src.at(r, c);
        }
      A2[g].push_back(std::move(M));
    }
  }
  return periodic_make(H.field, delta2, blocks2, u * H.rank, std::move(B2), std::move(a2),
                       std::move(A2), H.pad);
}

bool ultra_check(const PeriodicSubspace& H, uint64_t cap) {
  const Field& F = *H.field;
  std::vector<Vec> pts = periodic_enumerate(H, cap);
  if (pts.empty()) return true;
  for (size_t l = 1; l <= H.blocks; ++l) {
    size_t bl = H.blocks / l;
    size_t width = l * H.delta;
    // minimal witness subspace: differences of extensions within every
    // prefix class, across all group boundaries of this scale
    std::vector<Vec> diffs;
    for (size_t j = 0; j < bl; ++j) {
      std::map<std::vector<uint64_t>, std::vector<Vec>> groups;
      for (const Vec& p : pts) {
        std::vector<uint64_t> pref;
        for (size_t i = 0; i < j * width; ++i) pref.push_back(F.index_of(p[i]));
        Vec ext(p.begin() + j * width, p.begin() + (j + 1) * width);
        groups[pref].push_back(std::move(ext));
      }
      for (auto& [pref, exts] : groups)
        for (size_t i = 1; i < exts.size(); ++i)
          diffs.push_back(vec_sub(F, exts[i], exts[0]));
    }
    if (!diffs.empty()) {
      size_t dim = mat_rank(F, Mat::from_rows(F, diffs, width));
      if (dim > l * H.rank) return false;
    }
  }
  return true;
}

}  // namespace listdec
