#include "listdec/oracle.hpp"

#include <set>

#include "listdec/designs.hpp"
#include "listdec/error.hpp"
#include "listdec/hermitian.hpp"
#include "listdec/rs.hpp"

namespace listdec {

std::vector<uint64_t> brute_equation_members(const std::function<bool(uint64_t)>& holds,
                                             uint64_t domain, const OracleBudget& budget) {
  if (domain > budget.max_enum) fail(Err::TooLarge, "equation scan domain exceeds budget");
  std::vector<uint64_t> out;
  for (uint64_t i = 0; i < domain; ++i)
    if (holds(i)) out.push_back(i);
  return out;
}

namespace {

// Number of distinct points in the span of `gens`, counted by enumerating
// every coefficient tuple; the return value is log_q of that count.
size_t span_dim_by_counting(const Field& F, size_t ambient, const std::vector<Vec>& gens,
                            const OracleBudget& budget) {
  uint64_t q = F.size();
  uint64_t combos = 1;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (combos > budget.max_enum / q) fail(Err::TooLarge, "span count exceeds budget");
    combos *= q;
  }
  std::set<Vec> pts;
  for (uint64_t t = 0; t < combos; ++t) {
    Vec x = vec_zeros(F, ambient);
    uint64_t rem = t;
    for (size_t i = 0; i < gens.size(); ++i) {
      uint64_t ci = rem % q;
      rem /= q;
      if (ci != 0) x = vec_add(F, x, vec_scale(F, F.elem_at(ci), gens[i]));
    }
    pts.insert(std::move(x));
  }
  size_t dim = 0;
  uint64_t count = 1;
  while (count < pts.size()) {
    count *= q;
    ++dim;
  }
  if (count != pts.size()) throw std::logic_error("span size is not a power of the field size");
  return dim;
}

}  // namespace

size_t brute_design_sum(const SubspaceDesign& D, const std::vector<Vec>& W_rows,
                        const OracleBudget& budget) {
  const Field& F = *D.field;
  size_t total = 0;
  for (const AffineSubspace& H : D.members) {
    if (H.is_empty) throw std::logic_error("design member is empty");
    size_t r = W_rows.size(), t = H.basis.size();
    Mat M = Mat::zeros(F, D.ambient, r + t);
    for (size_t j = 0; j < r; ++j)
      for (size_t i = 0; i < D.ambient; ++i) M.at(i, j) = W_rows[j][i];
    for (size_t j = 0; j < t; ++j)
      for (size_t i = 0; i < D.ambient; ++i) M.at(i, r + j) = H.basis[j][i];
    // A kernel vector (alpha, beta) says alpha.W = -beta.H, so alpha.W lands
    // in the intersection; all of W meet H arises this way.
    std::vector<Vec> gens;
    for (const Vec& k : nullspace(F, M)) {
      Vec g = vec_zeros(F, D.ambient);
      for (size_t j = 0; j < r; ++j)
        if (!F.is_zero(k[j])) g = vec_add(F, g, vec_scale(F, k[j], W_rows[j]));
      gens.push_back(std::move(g));
    }
    total += span_dim_by_counting(F, D.ambient, gens, budget);
  }
  return total;
}

std::vector<Poly> brute_rs_decode(const RsCodeSpec& spec, const Vec& y, size_t e,
                                  const OracleBudget& budget) {
  const Field& F = *spec.field;
  if (y.size() != spec.n) fail(Err::LengthMismatch, "received word length must be n");
  uint64_t Q = F.size();
  uint64_t count = 1;
  for (size_t i = 0; i < spec.k; ++i) {
    if (count > budget.max_enum / Q) fail(Err::TooLarge, "message scan exceeds budget");
    count *= Q;
  }
  std::vector<Elem> points;
  for (const Elem& a : spec.alphas) points.push_back(F.embed(a));
  std::vector<Poly> out;
  for (uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Elem> coeffs;
    uint64_t rem = idx;
    for (size_t i = 0; i < spec.k; ++i) {
      coeffs.push_back(F.elem_at(rem % Q));
      rem /= Q;
    }
    size_t dist = 0;
    for (size_t i = 0; i < spec.n && dist <= e; ++i) {
      Elem v = F.zero();
      for (size_t j = coeffs.size(); j-- > 0;) v = F.add(F.mul(v, points[i]), coeffs[j]);
      if (v != y[i]) ++dist;
    }
    if (dist <= e) out.push_back(poly_make(F, std::move(coeffs)));
  }
  return out;
}

namespace {

Vec conv_mul(const Field& F, const Vec& a, const Vec& b, size_t n) {
  Vec c = vec_zeros(F, n);
  for (size_t i = 0; i < n && i < a.size(); ++i) {
    if (F.is_zero(a[i])) continue;
    for (size_t j = 0; j + i < n && j < b.size(); ++j)
      c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  }
  return c;
}

Vec conv_pow(const Field& F, Vec base, uint64_t e, size_t n) {
  Vec r = vec_zeros(F, n);
  r[0] = F.one();
  while (e != 0) {
    if (e & 1) r = conv_mul(F, r, base, n);
    e >>= 1;
    if (e != 0) base = conv_mul(F, base, base, n);
  }
  return r;
}

// Series of sum_t coeffs[t] * monomial_t to order n, from the published
// expansions of the tower variables.
Vec brute_function_series(const HermitianTower& T, const RrBasis& B, const Vec& coeffs,
                          const std::vector<Vec>& var_series, size_t n) {
  const Field& F = *T.field;
  Vec acc = vec_zeros(F, n);
  for (size_t t = 0; t < B.monomials.size(); ++t) {
    if (F.is_zero(coeffs[t])) continue;
    Vec mono = vec_zeros(F, n);
    mono[0] = F.one();
    for (size_t i = 0; i < T.e; ++i) {
      uint32_t ji = B.monomials[t][i];
      if (ji != 0) mono = conv_mul(F, mono, conv_pow(F, var_series[i], ji, n), n);
    }
    acc = vec_add(F, acc, vec_scale(F, coeffs[t], mono));
  }
  return acc;
}

}  // namespace

Vec brute_folded_residual(const HermitianTower& T, size_t k, const FoldedInterpolation& Q,
                          const Vec& msg, uint64_t n, const OracleBudget& budget) {
  const Field& F = *T.field;
  if (n == 0 || n > budget.max_enum) fail(Err::TooLarge, "series order exceeds budget");
  RrBasis B0 = rr_basis(T, Q.D + k + 2 * T.genus - 1);
  RrBasis BD = rr_basis(T, Q.D);
  RrBasis Bf = rr_basis(T, k + 2 * T.genus - 1);
  if (Q.A.size() != Q.s + 1) throw std::logic_error("need coefficient vectors A_0..A_s");
  if (Q.A[0].size() != B0.dim()) throw std::logic_error("A_0 coordinate count is off");
  for (size_t t = 1; t <= Q.s; ++t)
    if (Q.A[t].size() != BD.dim()) throw std::logic_error("A_i coordinate count is off");

  std::vector<Vec> var_series;
  for (const LocalSeries& S : local_expansions(T, n)) var_series.push_back(local_series_dense(F, S));

  Vec f = mat_vec(F, kappa_P0(T, k), msg);
  Vec acc = brute_function_series(T, B0, Q.A[0], var_series, n);
  for (size_t t = 1; t <= Q.s; ++t) {
    Vec At = brute_function_series(T, BD, Q.A[t], var_series, n);
    Vec ft = brute_function_series(
        T, Bf, sigma_on_function(T, Bf, f, -static_cast<int64_t>(t - 1)), var_series, n);
    acc = vec_add(F, acc, conv_mul(F, At, ft, n));
  }
  return acc;
}

bool brute_folded_window_member(const HermitianTower& T, size_t k, const FoldedInterpolation& Q,
                                const Vec& msg, const OracleBudget& budget) {
  const Field& F = *T.field;
  uint64_t n = Q.D + k + 2 * T.genus + 1;
  RrBasis BD = rr_basis(T, Q.D);
  if (Q.A.size() != Q.s + 1) throw std::logic_error("need coefficient vectors A_0..A_s");
  for (size_t t = 1; t <= Q.s; ++t)
    if (Q.A[t].size() != BD.dim()) throw std::logic_error("A_i coordinate count is off");
  std::vector<Vec> var_series;
  for (const LocalSeries& S : local_expansions(T, n)) var_series.push_back(local_series_dense(F, S));
  size_t u = SIZE_MAX;
  for (size_t t = 1; t <= Q.s; ++t) {
    Vec At = brute_function_series(T, BD, Q.A[t], var_series, n);
    for (size_t j = 0; j < At.size(); ++j)
      if (!F.is_zero(At[j])) {
        u = std::min(u, j);
        break;
      }
  }
  if (u == SIZE_MAX) throw std::logic_error("no A_i with i >= 1 is nonzero");
  Vec res = brute_folded_residual(T, k, Q, msg, u + k, budget);
  for (size_t d = 0; d < k; ++d)
    if (!F.is_zero(res[u + d])) return false;
  return true;
}

}  // namespace listdec
