#include "listdec/rs.hpp"

#include "listdec/periodic.hpp"

namespace listdec {

namespace {

void check_extension(const FieldPtr& field) {
  if (!field) throw std::logic_error("missing field");
  if (!field->base()) throw std::logic_error("the code field must be an extension");
}

uint64_t sat_pow(uint64_t q, size_t e, uint64_t cap) {
  uint64_t v = 1;
  for (size_t i = 0; i < e; ++i) {
    if (v > cap / q) return cap + 1;
    v *= q;
  }
  return v;
}

size_t degree_parameter(const RsCodeSpec& spec, size_t s) {
  return (spec.n - spec.k + 1) / (s + 1);
}

std::vector<Vec> pruned_points(const Field& Fq, const AffineSubspace& A, uint64_t q,
                               uint64_t cap) {
  if (A.is_empty) return {};
  if (sat_pow(q, A.dim(), cap) > cap)
    fail(Err::EnumerationTooLarge, "pruned solution space holds more than " +
                                       std::to_string(cap) + " points");
  return affine_enumerate(Fq, A, cap);
}

}  // namespace

RsCodeSpec rs_make(FieldPtr field, size_t n, size_t k, std::vector<Elem> alphas,
                   RsPrecode precode) {
  check_extension(field);
  const FieldPtr& Fq = field->base();
  if (!Fq->has_size_u64()) fail(Err::TooLarge, "base field too large to evaluate over");
  uint64_t q = Fq->size();
  if (k < 1 || k >= n) fail(Err::BadDims, "need 1 <= k < n");
  if (n > q) fail(Err::BadDims, "need n <= q distinct evaluation points");
  if (alphas.size() != n) fail(Err::LengthMismatch, "need one evaluation point per position");
  for (const Elem& a : alphas) Fq->check(a);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (alphas[i] == alphas[j]) fail(Err::BadDims, "evaluation points must be distinct");
  size_t m = field->deg();
  if (const auto* D = std::get_if<SubspaceDesign>(&precode)) {
    if (D->field->id() != Fq->id()) throw std::logic_error("precode field mismatch");
    if (D->ambient != m || D->members.size() != k)
      fail(Err::ShapeMismatch, "design precode needs k members over blocks of size m");
  } else if (const auto* S = std::get_if<HseSet>(&precode)) {
    if (S->params.field->id() != Fq->id()) throw std::logic_error("precode field mismatch");
    if (S->k() != k * m || S->params.delta % m != 0)
      fail(Err::ShapeMismatch,
           "hashed precode needs ambient k*m with block size a multiple of m");
  }
  for (size_t s = 1; s <= m; ++s) {
    size_t D = (n - k + 1) / (s + 1);
    if ((D + 1) * (s + 1) + k - 1 <= n)
      fail(Err::InternalInvariant, "interpolation space no larger than the constraints");
  }
  RsCodeSpec spec;
  spec.field = std::move(field);
  spec.n = n;
  spec.k = k;
  spec.alphas = std::move(alphas);
  spec.precode = std::move(precode);
  return spec;
}

Vec rs_encode(const RsCodeSpec& spec, const Poly& f) {
  if (f.deg() >= static_cast<int>(spec.k))
    fail(Err::DegreeTooHigh, "message degree must stay below k");
  const Field& F = *spec.field;
  Vec y;
  y.reserve(spec.n);
  for (const Elem& a : spec.alphas) y.push_back(poly_eval(F, f, F.embed(a)));
  return y;
}

size_t rs_radius(const RsCodeSpec& spec, size_t s) {
  if (s < 1 || s > spec.m()) fail(Err::BadS, "need 1 <= s <= m");
  return s * (spec.n - spec.k) / (s + 1);
}

InterpolationPoly rs_interpolate(const RsCodeSpec& spec, const Vec& y, size_t s) {
  if (s < 1 || s > spec.m()) fail(Err::BadS, "need 1 <= s <= m");
  if (y.size() != spec.n) fail(Err::LengthMismatch, "received word length must be n");
  const Field& F = *spec.field;
  uint64_t q = spec.base()->size();
  size_t D = degree_parameter(spec, s);
  size_t cols = (D + spec.k) + s * (D + 1);
  Mat M = Mat::zeros(F, spec.n, cols);
  for (size_t i = 0; i < spec.n; ++i) {
    Elem alpha = F.embed(spec.alphas[i]);
    Elem xp = F.one();
    for (size_t j = 0; j < D + spec.k; ++j) {
      M.at(i, j) = xp;
      xp = F.mul(xp, alpha);
    }
    Elem yq = y[i];
    size_t off = D + spec.k;
    for (size_t t = 0; t < s; ++t) {
      xp = F.one();
      for (size_t j = 0; j <= D; ++j) {
        M.at(i, off + j) = F.mul(xp, yq);
        xp = F.mul(xp, alpha);
      }
      off += D + 1;
      yq = F.pow(yq, q);
    }
  }
  std::vector<Vec> ker = nullspace(F, M);
  if (ker.empty()) fail(Err::InternalInvariant, "interpolation system has full rank");
  const Vec& v = ker[0];
  InterpolationPoly Q;
  Q.s = s;
  Q.D = D;
  Q.A.push_back(poly_make(F, Vec(v.begin(), v.begin() + static_cast<long>(D + spec.k))));
  for (size_t t = 0; t < s; ++t) {
    size_t off = (D + spec.k) + t * (D + 1);
    Q.A.push_back(poly_make(
        F, Vec(v.begin() + static_cast<long>(off), v.begin() + static_cast<long>(off + D + 1))));
  }
  return Q;
}

PeriodicSubspace rs_solve(const FieldPtr& field, size_t k, const InterpolationPoly& Q) {
  check_extension(field);
  const Field& F = *field;
  size_t m = F.deg();
  if (k < 1) fail(Err::BadDims, "need at least one message coefficient");
  if (Q.s < 1 || Q.s > m) fail(Err::BadS, "need 1 <= s <= m");
  if (Q.A.size() != Q.s + 1) fail(Err::ShapeMismatch, "need coefficient polynomials A_0..A_s");
  bool all_zero = true;
  size_t shift = SIZE_MAX;
  for (const Poly& A : Q.A) {
    if (A.is_zero()) continue;
    all_zero = false;
    size_t val = 0;
    while (F.is_zero(A.c[val])) ++val;
    shift = std::min(shift, val);
  }
  if (all_zero) fail(Err::ZeroQ, "the interpolation polynomial must be nonzero");
  std::vector<Poly> A;
  for (const Poly& p : Q.A)
    A.push_back(p.is_zero() ? p
                            : poly_make(*field, Vec(p.c.begin() + static_cast<long>(shift),
                                                    p.c.end())));
  bool pivot = false;
  for (size_t t = 1; t <= Q.s; ++t)
    pivot = pivot || (!A[t].is_zero() && !F.is_zero(A[t].c[0]));
  if (!pivot)
    fail(Err::InternalInvariant,
         "after removing the common power of X, some A_i (i >= 1) must keep a "
         "nonzero constant term");

  auto block_map = [&](size_t l) {
    LinearizedPoly B;
    for (size_t t = 1; t <= Q.s; ++t) B.a.push_back(poly_coeff(F, A[t], l));
    return linearized_matrix(F, B);
  };
  Mat B0 = block_map(0);
  std::vector<Vec> a;
  std::vector<std::vector<Mat>> C(k);
  for (size_t i = 0; i < k; ++i) {
    a.push_back(F.coords(poly_coeff(F, A[0], i)));
    for (size_t j = 0; j < i; ++j) C[i].push_back(block_map(i - j));
  }
  return periodic_make(field->base(), m, k, Q.s - 1, std::move(B0), std::move(a), std::move(C));
}

std::vector<Poly> rs_list_decode(const RsCodeSpec& spec, const Vec& y, size_t s, size_t e,
                                 uint64_t cap, DecodeTrace* trace) {
  if (s < 1 || s > spec.m()) fail(Err::BadS, "need 1 <= s <= m");
  if (e > rs_radius(spec, s))
    fail(Err::RadiusTooLarge, "radius exceeds s(n-k)/(s+1)");
  const Field& F = *spec.field;
  const Field& Fq = *spec.base();
  size_t m = spec.m();
  InterpolationPoly Q = rs_interpolate(spec, y, s);
  PeriodicSubspace T = rs_solve(spec.field, spec.k, Q);
  if (trace) {
    trace->D = Q.D;
    trace->threshold = spec.n - e;
    trace->solver_dim = periodic_to_affine(T).dim();
  }

  std::vector<Vec> candidates;
  if (const auto* D = std::get_if<SubspaceDesign>(&spec.precode)) {
    AffineSubspace P = design_prune(*D, T);
    if (trace) trace->pruned_dim = P.dim();
    candidates = pruned_points(Fq, P, Fq.size(), cap);
  } else if (const auto* S = std::get_if<HseSet>(&spec.precode)) {
    size_t u = S->params.delta / m;
    candidates = hse_intersect(*S, u == 1 ? T : periodic_regroup(T, u));
    if (trace) trace->pruned_dim = affine_hull(Fq, spec.k * m, candidates).dim();
  } else {
    AffineSubspace P = periodic_to_affine(T);
    if (trace) trace->pruned_dim = P.dim();
    candidates = pruned_points(Fq, P, Fq.size(), cap);
  }

  std::vector<Poly> out;
  for (const Vec& x : candidates) {
    Vec coeffs;
    for (size_t i = 0; i < spec.k; ++i)
      coeffs.push_back(F.from_coords(Vec(x.begin() + static_cast<long>(i * m),
                                         x.begin() + static_cast<long>((i + 1) * m))));
    Poly f = poly_make(F, std::move(coeffs));
    Vec c = rs_encode(spec, f);
    size_t dist = 0;
    for (size_t i = 0; i < spec.n; ++i)
      if (c[i] != y[i]) ++dist;
    if (dist <= e) out.push_back(std::move(f));
  }
  if (trace) trace->list_size = out.size();
  return out;
}

}  // namespace listdec
