#include "listdec/hermitian.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace listdec {

namespace {

// Smallest prime factor if r is a power of it, 0 otherwise.
uint64_t prime_power_base(uint64_t r) {
  if (r < 2) return 0;
  uint64_t p = 2;
  while (p * p <= r && r % p != 0) ++p;
  if (p * p > r) p = r;
  uint64_t v = r;
  while (v % p == 0) v /= p;
  return v == 1 ? p : 0;
}

uint64_t pow_capped(uint64_t b, uint64_t e, uint64_t cap) {
  uint64_t v = 1;
  for (uint64_t i = 0; i < e; ++i) {
    if (b != 0 && v > cap / b) return cap + 1;
    v *= b;
  }
  return v;
}

uint64_t mod_shift(int64_t j, uint64_t ord) {
  int64_t m = j % static_cast<int64_t>(ord);
  if (m < 0) m += static_cast<int64_t>(ord);
  return static_cast<uint64_t>(m);
}

Vec ser_mul(const Field& F, const Vec& a, const Vec& b, size_t n) {
  Vec c = vec_zeros(F, n);
  for (size_t i = 0; i < n && i < a.size(); ++i) {
    if (F.is_zero(a[i])) continue;
    for (size_t j = 0; j + i < n && j < b.size(); ++j)
      c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  }
  return c;
}

Vec ser_pow(const Field& F, Vec base, uint64_t e, size_t n) {
  Vec r = vec_zeros(F, n);
  r[0] = F.one();
  while (e != 0) {
    if (e & 1) r = ser_mul(F, r, base, n);
    e >>= 1;
    if (e != 0) base = ser_mul(F, base, base, n);
  }
  return r;
}

size_t ser_valuation(const Field& F, const Vec& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (!F.is_zero(s[i])) return i;
  return s.size();
}

// Dense expansions of x_1..x_e to order n.
std::vector<Vec> dense_expansions(const HermitianTower& T, size_t n) {
  std::vector<Vec> out;
  for (const LocalSeries& S : local_expansions(T, n))
    out.push_back(local_series_dense(*T.field, S));
  return out;
}

// Series of sum_t coeffs[t] * monomial_t to order n.
Vec function_series(const HermitianTower& T, const RrBasis& B, const Vec& coeffs,
                    const std::vector<Vec>& vars, size_t n) {
  const Field& F = *T.field;
  Vec acc = vec_zeros(F, n);
  for (size_t t = 0; t < B.monomials.size(); ++t) {
    if (F.is_zero(coeffs[t])) continue;
    Vec mono = vec_zeros(F, n);
    mono[0] = F.one();
    for (size_t i = 0; i < T.e; ++i) {
      uint32_t ji = B.monomials[t][i];
      if (ji != 0) mono = ser_mul(F, mono, ser_pow(F, vars[i], ji, n), n);
    }
    acc = vec_add(F, acc, vec_scale(F, coeffs[t], mono));
  }
  return acc;
}

std::vector<uint64_t> place_key(const Field& F, const Place& P) {
  std::vector<uint64_t> k;
  for (const Elem& x : P.alpha) k.push_back(F.index_of(x));
  return k;
}

// D = floor((N(m-s+1) - k + (s-1)g + 1)/(s+1)).
uint64_t degree_budget(const FoldedSpec& spec) {
  int64_t rows = static_cast<int64_t>(spec.N) * static_cast<int64_t>(spec.m - spec.s + 1);
  int64_t num = rows - static_cast<int64_t>(spec.k) +
                static_cast<int64_t>(spec.s - 1) * static_cast<int64_t>(spec.tower.genus) + 1;
  if (num < 0) fail(Err::BadDims, "the interpolation budget is negative; k is too large for N");
  return static_cast<uint64_t>(num) / (spec.s + 1);
}

FoldedWord encode_function(const FoldedSpec& spec, const RrBasis& B, const Vec& fcoords) {
  const HermitianTower& T = spec.tower;
  FoldedWord word;
  word.reserve(spec.N);
  for (size_t i = 0; i < spec.N; ++i) {
    Vec col;
    col.reserve(spec.m);
    for (size_t j = 0; j < spec.m; ++j)
      col.push_back(rr_eval(T, B, fcoords, sigma_on_place(T, spec.reps[i], static_cast<int64_t>(j))));
    word.push_back(std::move(col));
  }
  return word;
}

std::vector<Vec> enumerate_prefixes(const Field& F, const AffineSubspace& A, size_t k,
                                    uint64_t cap) {
  if (A.is_empty) return {};
  uint64_t q = F.size();
  if (pow_capped(q, A.dim(), cap) > cap)
    fail(Err::EnumerationTooLarge,
         "pruned solution space holds more than " + std::to_string(cap) + " points");
  std::vector<Vec> out;
  for (const Vec& x : affine_enumerate(F, A, cap))
    out.push_back(Vec(x.begin(), x.begin() + static_cast<long>(k)));
  return out;
}

}  // namespace

uint64_t hermitian_genus(uint64_t r, size_t e) {
  if (r < 2 || e < 1) fail(Err::BadDims, "need r >= 2 and e >= 1");
  if (r > 256 || e > 8) fail(Err::TooLarge, "genus parameters out of the supported range");
  unsigned __int128 sum = 0;
  for (size_t i = 1; i < e; ++i) {
    unsigned __int128 term = 1;
    for (size_t t = 0; t < e - i + 1; ++t) term *= r;
    for (size_t t = 0; t + 1 < i; ++t) term *= r + 1;
    sum += term;
  }
  unsigned __int128 rp1 = 1;
  for (size_t t = 0; t + 1 < e; ++t) rp1 *= r + 1;
  if (sum + 1 < rp1) fail(Err::InternalInvariant, "genus numerator went negative");
  unsigned __int128 total = sum + 1 - rp1;
  if ((total & 1) != 0) fail(Err::InternalInvariant, "genus numerator must be even");
  unsigned __int128 g = total / 2;
  unsigned __int128 bound = e;
  for (size_t t = 0; t < e; ++t) bound *= r;
  if (g > bound) fail(Err::InternalInvariant, "genus exceeds e * r^e");
  if (g > std::numeric_limits<uint64_t>::max())
    fail(Err::TooLarge, "genus does not fit in 64 bits");
  return static_cast<uint64_t>(g);
}

HermitianTower hermitian_make(uint64_t r, size_t e) {
  if (e < 2) fail(Err::BadDims, "need at least two levels");
  uint64_t p = prime_power_base(r);
  if (p == 0) fail(Err::BadDims, "r must be a prime power");
  unsigned a = 0;
  for (uint64_t v = r; v > 1; v /= p) ++a;
  HermitianTower T;
  T.r = r;
  T.e = e;
  T.genus = hermitian_genus(r, e);
  T.field = field_make(default_field_spec(p, 2 * a));
  T.gamma = primitive_element(*T.field);
  T.xi = T.field->inv(T.gamma);
  T.r_ge_2e = r >= 2 * e;
  return T;
}

Place place_infinity() {
  Place P;
  P.kind = Place::Kind::Infinity;
  return P;
}

Place place_origin(const HermitianTower& T) {
  Place P;
  P.alpha.assign(T.e, T.field->zero());
  return P;
}

bool place_check(const HermitianTower& T, const Place& P) {
  const Field& F = *T.field;
  if (P.kind == Place::Kind::Infinity) return P.alpha.empty();
  if (P.alpha.size() != T.e) return false;
  for (const Elem& x : P.alpha)
    if (x.fid != F.id()) return false;
  for (size_t i = 0; i + 1 < T.e; ++i) {
    Elem lhs = F.add(F.pow(P.alpha[i + 1], T.r), P.alpha[i + 1]);
    if (lhs != F.pow(P.alpha[i], T.r + 1)) return false;
  }
  return true;
}

std::vector<Place> tower_places(const HermitianTower& T) {
  const Field& F = *T.field;
  uint64_t q = F.size();
  uint64_t want = pow_capped(T.r, T.e + 1, kEnumerationCap);
  if (want > kEnumerationCap) fail(Err::TooLarge, "place count exceeds the enumeration cap");

  // beta with beta^r + beta = c, grouped by the index of c; every c that
  // occurs collects exactly r roots.
  std::vector<std::vector<Elem>> roots(q);
  for (uint64_t i = 0; i < q; ++i) {
    Elem b = F.elem_at(i);
    roots[F.index_of(F.add(F.pow(b, T.r), b))].push_back(b);
  }

  std::vector<Place> out;
  for (uint64_t i = 0; i < q; ++i) {
    Place P;
    P.alpha.push_back(F.elem_at(i));
    out.push_back(std::move(P));
  }
  for (size_t lvl = 1; lvl < T.e; ++lvl) {
    std::vector<Place> next;
    for (const Place& P : out) {
      const std::vector<Elem>& bs = roots[F.index_of(F.pow(P.alpha.back(), T.r + 1))];
      if (bs.size() != T.r)
        fail(Err::InternalInvariant, "each level must contribute exactly r roots");
      for (const Elem& b : bs) {
        Place Q = P;
        Q.alpha.push_back(b);
        next.push_back(std::move(Q));
      }
    }
    out = std::move(next);
  }
  if (out.size() != want) fail(Err::InternalInvariant, "place count is not r^{e+1}");
  return out;
}

RrBasis rr_basis(const HermitianTower& T, uint64_t l) {
  std::vector<uint64_t> w(T.e);
  for (size_t i = 0; i < T.e; ++i) {
    uint64_t wi = 1;
    for (size_t t = 0; t + i + 1 < T.e; ++t) wi *= T.r;
    for (size_t t = 0; t < i; ++t) wi *= T.r + 1;
    w[i] = wi;
  }
  if ((l / w[0] + 1) * pow_capped(T.r, T.e - 1, kEnumerationCap) > kEnumerationCap)
    fail(Err::TooLarge, "monomial count exceeds the enumeration cap");

  std::vector<std::pair<uint64_t, std::vector<uint32_t>>> items;
  std::vector<uint32_t> exps(T.e, 0);
  std::function<void(size_t, uint64_t)> walk = [&](size_t i, uint64_t used) {
    if (i == T.e) {
      items.emplace_back(used, exps);
      return;
    }
    uint64_t hi = (l - used) / w[i];
    if (i > 0) hi = std::min<uint64_t>(hi, T.r - 1);
    for (uint64_t j = 0; j <= hi; ++j) {
      exps[i] = static_cast<uint32_t>(j);
      walk(i + 1, used + j * w[i]);
    }
    exps[i] = 0;
  };
  walk(0, 0);
  std::sort(items.begin(), items.end());

  RrBasis B;
  B.l = l;
  for (auto& it : items) {
    B.weights.push_back(it.first);
    B.monomials.push_back(std::move(it.second));
  }
  for (size_t t = 1; t < B.weights.size(); ++t)
    if (B.weights[t] == B.weights[t - 1])
      fail(Err::InternalInvariant, "pole orders must be pairwise distinct");
  int64_t lower = static_cast<int64_t>(l) - static_cast<int64_t>(T.genus) + 1;
  if (static_cast<int64_t>(B.dim()) < lower)
    fail(Err::InternalInvariant, "basis is smaller than the Riemann-Roch lower bound");
  if (l + 1 >= 2 * T.genus && static_cast<int64_t>(B.dim()) != lower)
    fail(Err::InternalInvariant, "basis must have dimension l-g+1 once l >= 2g-1");
  return B;
}

Elem rr_eval(const HermitianTower& T, const RrBasis& B, const Vec& coeffs, const Place& P) {
  const Field& F = *T.field;
  if (P.kind == Place::Kind::Infinity)
    fail(Err::PoleAtInfinity, "these functions have their pole at infinity");
  if (P.alpha.size() != T.e) fail(Err::LengthMismatch, "place coordinate count is off");
  if (coeffs.size() != B.dim()) fail(Err::DimMismatch, "one coefficient per basis monomial");
  Elem acc = F.zero();
  for (size_t t = 0; t < B.dim(); ++t) {
    if (F.is_zero(coeffs[t])) continue;
    Elem v = coeffs[t];
    for (size_t i = 0; i < T.e; ++i) {
      uint32_t ji = B.monomials[t][i];
      if (ji != 0) v = F.mul(v, F.pow(P.alpha[i], ji));
    }
    acc = F.add(acc, v);
  }
  return acc;
}

Place sigma_on_place(const HermitianTower& T, const Place& P, int64_t j) {
  if (P.kind == Place::Kind::Infinity) return P;
  const Field& F = *T.field;
  if (P.alpha.size() != T.e) throw std::logic_error("place coordinate count is off");
  uint64_t ord = F.size() - 1;
  uint64_t jm = mod_shift(j, ord);
  Place out = P;
  uint64_t pw = 1;
  for (size_t i = 0; i < T.e; ++i) {
    out.alpha[i] = F.mul(F.pow(T.xi, jm * pw % ord), P.alpha[i]);
    pw = pw * ((T.r + 1) % ord) % ord;
  }
  return out;
}

Vec sigma_on_function(const HermitianTower& T, const RrBasis& B, const Vec& coeffs, int64_t j) {
  const Field& F = *T.field;
  if (coeffs.size() != B.dim()) fail(Err::DimMismatch, "one coefficient per basis monomial");
  uint64_t ord = F.size() - 1;
  uint64_t jm = mod_shift(j, ord);
  Vec out = coeffs;
  for (size_t t = 0; t < B.dim(); ++t) {
    uint64_t twist = 0;
    uint64_t pw = 1;
    for (size_t i = 0; i < T.e; ++i) {
      twist = (twist + B.monomials[t][i] % ord * pw) % ord;
      pw = pw * ((T.r + 1) % ord) % ord;
    }
    out[t] = F.mul(F.pow(T.gamma, jm * twist % ord), coeffs[t]);
  }
  return out;
}

std::vector<LocalSeries> local_expansions(const HermitianTower& T, uint64_t order) {
  if (order < 1) fail(Err::BadDims, "need at least one series term");
  if (order > kEnumerationCap) fail(Err::TooLarge, "series order exceeds the enumeration cap");
  const Field& F = *T.field;
  size_t n = order;
  std::vector<Vec> dense;
  Vec x1 = vec_zeros(F, n);
  if (n > 1) x1[1] = F.one();
  dense.push_back(std::move(x1));
  for (size_t i = 1; i < T.e; ++i) {
    Vec rhs = ser_pow(F, dense[i - 1], T.r + 1, n);
    if (!F.is_zero(rhs[0]))
      fail(Err::InternalInvariant, "the branch through the origin must lose its constant term");
    Vec c = vec_zeros(F, n);
    for (size_t jj = 1; jj < n; ++jj) {
      Elem v = rhs[jj];
      if (jj % T.r == 0) v = F.sub(v, F.pow(c[jj / T.r], T.r));
      c[jj] = v;
    }
    dense.push_back(std::move(c));
  }

  std::vector<LocalSeries> out;
  uint64_t expect = 1;
  for (size_t i = 0; i < T.e; ++i) {
    size_t val = ser_valuation(F, dense[i]);
    if (expect < n && val != expect)
      fail(Err::InternalInvariant, "x_i must vanish to order (r+1)^{i-1} exactly");
    LocalSeries S;
    S.order = order;
    S.valuation = val;
    S.coeff.assign(dense[i].begin() + static_cast<long>(val), dense[i].end());
    out.push_back(std::move(S));
    expect *= T.r + 1;
  }
  return out;
}

Vec local_series_dense(const Field& F, const LocalSeries& S) {
  Vec d = vec_zeros(F, S.order);
  for (size_t t = 0; t < S.coeff.size(); ++t) d[S.valuation + t] = S.coeff[t];
  return d;
}

Mat ev_matrix(const HermitianTower& T, size_t k) {
  if (k < 1) fail(Err::BadDims, "need at least one coordinate");
  const Field& F = *T.field;
  RrBasis B = rr_basis(T, k + 2 * T.genus - 1);
  std::vector<Vec> vars = dense_expansions(T, k);
  Mat M = Mat::zeros(F, k, B.dim());
  for (size_t t = 0; t < B.dim(); ++t) {
    Vec e = vec_zeros(F, B.dim());
    e[t] = F.one();
    Vec s = function_series(T, B, e, vars, k);
    for (size_t i = 0; i < k; ++i) M.at(i, t) = s[i];
  }
  return M;
}

Vec ev_P0(const HermitianTower& T, size_t k, const Vec& coeffs) {
  return mat_vec(*T.field, ev_matrix(T, k), coeffs);
}

Mat kappa_P0(const HermitianTower& T, size_t k) {
  const Field& F = *T.field;
  Mat M = ev_matrix(T, k);
  Mat K = Mat::zeros(F, M.cols, k);
  for (size_t i = 0; i < k; ++i) {
    Vec ei = vec_zeros(F, k);
    ei[i] = F.one();
    auto sol = solve(F, M, ei);
    if (!sol) fail(Err::SingularSystem, "the evaluation map must reach every coordinate vector");
    for (size_t j = 0; j < M.cols; ++j) K.at(j, i) = sol->particular[j];
  }
  return K;
}

FoldedSpec folded_make(HermitianTower tower, size_t m, size_t s, size_t N, size_t k) {
  const Field& F = *tower.field;
  uint64_t q = F.size();
  if (m < 1 || m > q - 1) fail(Err::BadDims, "folding must fit within the symmetry order q-1");
  if (s < 1 || s > m) fail(Err::BadS, "need 1 <= s <= m");
  if (k < 1) fail(Err::BadDims, "need at least one message coordinate");
  uint64_t orbits = pow_capped(tower.r, tower.e - 1, kEnumerationCap);
  uint64_t capacity = orbits * ((q - 1) / m);
  if (N < 1 || N > capacity)
    fail(Err::BadDims, "need 1 <= N <= r^{e-1} * floor((q-1)/m) representatives");
  uint64_t l = k + 2 * tower.genus - 1;
  if (l > static_cast<uint64_t>(m) * N)
    fail(Err::BadDims, "the pole budget k+2g-1 must stay within m*N");

  std::vector<Place> leaders;
  std::set<std::vector<uint64_t>> visited;
  size_t away = 0;
  for (const Place& P : tower_places(tower)) {
    if (F.is_zero(P.alpha[0])) continue;
    ++away;
    if (visited.count(place_key(F, P))) continue;
    leaders.push_back(P);
    for (uint64_t j = 0; j < q - 1; ++j)
      visited.insert(place_key(F, sigma_on_place(tower, P, static_cast<int64_t>(j))));
  }
  if (leaders.size() != orbits || visited.size() != away || away != orbits * (q - 1))
    fail(Err::InternalInvariant, "the symmetry must split the points off x_1 = 0 into "
                                 "r^{e-1} orbits of size q-1");

  FoldedSpec spec;
  spec.tower = std::move(tower);
  spec.m = m;
  spec.s = s;
  spec.N = N;
  spec.k = k;
  for (size_t c = 0; spec.reps.size() < N; ++c)
    for (size_t i = 0; i < leaders.size() && spec.reps.size() < N; ++i)
      spec.reps.push_back(
          sigma_on_place(spec.tower, leaders[i], static_cast<int64_t>(c * m)));

  std::set<std::vector<uint64_t>> used;
  for (const Place& P : spec.reps)
    for (size_t j = 0; j < m; ++j)
      used.insert(place_key(F, sigma_on_place(spec.tower, P, static_cast<int64_t>(j))));
  if (used.size() != static_cast<size_t>(N) * m)
    fail(Err::InternalInvariant, "the N*m shifted evaluation points must be distinct");
  return spec;
}

FoldedWord folded_encode(const FoldedSpec& spec, const Vec& msg) {
  const Field& F = *spec.tower.field;
  if (msg.size() != spec.k) fail(Err::LengthMismatch, "message length must be k");
  for (const Elem& x : msg) F.check(x);
  Vec f = mat_vec(F, kappa_P0(spec.tower, spec.k), msg);
  return encode_function(spec, rr_basis(spec.tower, spec.l()), f);
}

FoldedInterpolation folded_interpolate(const FoldedSpec& spec, const FoldedWord& Y) {
  const HermitianTower& T = spec.tower;
  const Field& F = *T.field;
  size_t s = spec.s;
  if (s < 1 || s > spec.m) fail(Err::BadS, "need 1 <= s <= m");
  if (Y.size() != spec.N) fail(Err::LengthMismatch, "need one received column per point");
  for (const Vec& col : Y) {
    if (col.size() != spec.m) fail(Err::LengthMismatch, "every column carries m symbols");
    for (const Elem& x : col) F.check(x);
  }
  uint64_t D = degree_budget(spec);
  RrBasis B0 = rr_basis(T, D + spec.k + 2 * T.genus - 1);
  RrBasis BD = rr_basis(T, D);
  size_t rows = spec.N * (spec.m - s + 1);
  size_t cols = B0.dim() + s * BD.dim();
  if ((s + 1) * (D + 1) + spec.k <= rows + 1 + (s - 1) * T.genus)
    fail(Err::InternalInvariant, "the unknown count must beat the condition count");
  if (cols <= rows) fail(Err::InternalInvariant, "the coefficient space must beat the conditions");

  Mat M = Mat::zeros(F, rows, cols);
  for (size_t i = 0; i < spec.N; ++i) {
    for (size_t j = 0; j + s <= spec.m; ++j) {
      size_t row = i * (spec.m - s + 1) + j;
      Place P = sigma_on_place(T, spec.reps[i], static_cast<int64_t>(j));
      for (size_t t = 0; t < B0.dim(); ++t) {
        Vec e = vec_zeros(F, B0.dim());
        e[t] = F.one();
        M.at(row, t) = rr_eval(T, B0, e, P);
      }
      for (size_t w = 1; w <= s; ++w) {
        size_t off = B0.dim() + (w - 1) * BD.dim();
        for (size_t t = 0; t < BD.dim(); ++t) {
          Vec e = vec_zeros(F, BD.dim());
          e[t] = F.one();
          M.at(row, off + t) = F.mul(rr_eval(T, BD, e, P), Y[i][j + w - 1]);
        }
      }
    }
  }
  std::vector<Vec> ker = nullspace(F, M);
  if (ker.empty()) fail(Err::InternalInvariant, "the interpolation system has full rank");
  // a form supported on A_0 alone also vanishes everywhere but carries no
  // information about the message, so insist on a twisted term
  const Vec* pick = nullptr;
  for (const Vec& w : ker) {
    for (size_t i = B0.dim(); i < cols && !pick; ++i)
      if (!F.is_zero(w[i])) pick = &w;
    if (pick) break;
  }
  if (!pick)
    fail(Err::InternalInvariant, "every interpolation direction dropped the twisted terms");
  const Vec& v = *pick;
  FoldedInterpolation Q;
  Q.s = s;
  Q.D = D;
  Q.A.push_back(Vec(v.begin(), v.begin() + static_cast<long>(B0.dim())));
  for (size_t w = 0; w < s; ++w) {
    size_t off = B0.dim() + w * BD.dim();
    Q.A.push_back(
        Vec(v.begin() + static_cast<long>(off), v.begin() + static_cast<long>(off + BD.dim())));
  }
  return Q;
}

PeriodicSubspace folded_solve(const FoldedSpec& spec, const FoldedInterpolation& Q) {
  const HermitianTower& T = spec.tower;
  const Field& F = *T.field;
  size_t k = spec.k;
  if (Q.s != spec.s) fail(Err::BadS, "the form must use the spec's own s");
  if (Q.A.size() != Q.s + 1) fail(Err::ShapeMismatch, "need coefficient vectors A_0..A_s");
  RrBasis B0 = rr_basis(T, Q.D + k + 2 * T.genus - 1);
  RrBasis BD = rr_basis(T, Q.D);
  if (Q.A[0].size() != B0.dim()) fail(Err::DimMismatch, "A_0 coordinate count is off");
  for (size_t t = 1; t <= Q.s; ++t)
    if (Q.A[t].size() != BD.dim()) fail(Err::DimMismatch, "A_i coordinate count is off");
  bool any = false;
  for (const Vec& A : Q.A) any = any || !vec_is_zero(F, A);
  if (!any) fail(Err::ZeroQ, "the form must be nonzero");

  size_t n = Q.D + k + 2 * T.genus + 1;
  std::vector<Vec> vars = dense_expansions(T, n);
  std::vector<Vec> ser;
  ser.push_back(function_series(T, B0, Q.A[0], vars, n));
  for (size_t t = 1; t <= Q.s; ++t) ser.push_back(function_series(T, BD, Q.A[t], vars, n));

  size_t u = SIZE_MAX;
  for (size_t t = 0; t <= Q.s; ++t) {
    if (vec_is_zero(F, Q.A[t])) continue;
    size_t val = ser_valuation(F, ser[t]);
    if (val == n)
      fail(Err::InternalInvariant, "a nonzero function read as zero to the truncation order");
    if (t >= 1) u = std::min(u, val);
  }
  if (u == SIZE_MAX)
    fail(Err::InternalInvariant, "some A_i with i >= 1 must survive interpolation");
  if (u + k > n) fail(Err::InternalInvariant, "the window escapes the truncation order");

  uint64_t q = F.size();
  size_t delta = q - 1;
  size_t blocks = (k + delta - 1) / delta;
  size_t pad = blocks * delta - k;
  if (blocks >= 2 && pad != 0)
    fail(Err::NotDivisible, "the message must fill whole blocks when more than one is needed");

  std::vector<Elem> xi_pow(delta);
  xi_pow[0] = F.one();
  for (size_t i = 1; i < delta; ++i) xi_pow[i] = F.mul(xi_pow[i - 1], T.xi);
  // B_w(X) = sum_t ser[t][u+w] X^{t-1} evaluated at xi^l.
  auto bval = [&](size_t w, size_t l) {
    Elem acc = F.zero();
    for (size_t t = Q.s; t >= 1; --t) acc = F.add(F.mul(acc, xi_pow[l]), ser[t][u + w]);
    return acc;
  };

  Mat B = Mat::zeros(F, delta, delta);
  for (size_t dp = 0; dp < delta; ++dp) {
    if (blocks == 1 && dp >= k) {
      B.at(dp, dp) = F.one();
      continue;
    }
    for (size_t lp = 0; lp <= dp; ++lp) B.at(dp, lp) = bval(dp - lp, lp);
  }
  size_t singular = 0;
  for (size_t dp = 0; dp < delta && dp < k; ++dp)
    if (F.is_zero(B.at(dp, dp))) ++singular;
  if (singular > Q.s - 1)
    fail(Err::InternalInvariant, "more singular residues than the leading block allows");

  std::vector<Vec> a;
  std::vector<std::vector<Mat>> C(blocks);
  for (size_t i = 0; i < blocks; ++i) {
    Vec ai = vec_zeros(F, delta);
    for (size_t dp = 0; dp < delta; ++dp) {
      size_t d = i * delta + dp;
      if (d < k) ai[dp] = ser[0][u + d];
    }
    a.push_back(std::move(ai));
    for (size_t j = 0; j < i; ++j) {
      Mat Cij = Mat::zeros(F, delta, delta);
      for (size_t dp = 0; dp < delta; ++dp)
        for (size_t lp = 0; lp < delta; ++lp)
          Cij.at(dp, lp) = bval((i - j) * delta + dp - lp, lp);
      C[i].push_back(std::move(Cij));
    }
  }
  return periodic_make(T.field, delta, blocks, Q.s - 1, std::move(B), std::move(a), std::move(C),
                       pad);
}

std::vector<Vec> folded_list_decode(const FoldedSpec& spec, const FoldedWord& Y, size_t t,
                                    const FoldedPrecode& precode, uint64_t cap,
                                    DecodeTrace* trace) {
  const HermitianTower& T = spec.tower;
  const Field& F = *T.field;
  uint64_t D = degree_budget(spec);
  if (t <= (D + spec.k + 2 * T.genus - 1) / (spec.m - spec.s + 1))
    fail(Err::ThresholdTooLow, "agreement must exceed floor((D+k+2g-1)/(m-s+1))");
  size_t delta = F.size() - 1;
  size_t blocks = (spec.k + delta - 1) / delta;
  if (const auto* Dz = std::get_if<SubspaceDesign>(&precode)) {
    if (Dz->field->id() != F.id()) throw std::logic_error("precode field mismatch");
    if (Dz->ambient != delta || Dz->members.size() != blocks)
      fail(Err::ShapeMismatch, "design precode needs one member of size q-1 per block");
  } else if (const auto* S = std::get_if<HseSet>(&precode)) {
    if (S->params.field->id() != F.id()) throw std::logic_error("precode field mismatch");
    if (S->k() != spec.k || S->params.delta % delta != 0)
      fail(Err::ShapeMismatch,
           "hashed precode needs ambient k with block size a multiple of q-1");
  }
  FoldedInterpolation Q = folded_interpolate(spec, Y);
  PeriodicSubspace H = folded_solve(spec, Q);
  if (trace) {
    trace->D = Q.D;
    trace->threshold = t;
    trace->solver_dim = periodic_to_affine(H).dim();
  }

  std::vector<Vec> candidates;
  if (const auto* Dz = std::get_if<SubspaceDesign>(&precode)) {
    AffineSubspace P = design_prune(*Dz, H);
    if (trace) trace->pruned_dim = P.dim();
    candidates = enumerate_prefixes(F, P, spec.k, cap);
  } else if (const auto* S = std::get_if<HseSet>(&precode)) {
    size_t u = S->params.delta / delta;
    candidates = hse_intersect(*S, u == 1 ? H : periodic_regroup(H, u));
    if (trace) trace->pruned_dim = affine_hull(F, spec.k, candidates).dim();
  } else {
    AffineSubspace P = periodic_to_affine(H);
    if (trace) trace->pruned_dim = P.dim();
    candidates = enumerate_prefixes(F, P, spec.k, cap);
  }

  Mat K = kappa_P0(T, spec.k);
  RrBasis B = rr_basis(T, spec.l());
  std::vector<Vec> out;
  for (const Vec& v : candidates) {
    FoldedWord cw = encode_function(spec, B, mat_vec(F, K, v));
    size_t agree = 0;
    for (size_t i = 0; i < spec.N; ++i)
      if (cw[i] == Y[i]) ++agree;
    if (agree >= t) out.push_back(v);
  }
  if (trace) trace->list_size = out.size();
  return out;
}

double folded_error_fraction(const FoldedSpec& spec) {
  double s = static_cast<double>(spec.s);
  double m = static_cast<double>(spec.m);
  double N = static_cast<double>(spec.N);
  double k = static_cast<double>(spec.k);
  double g = static_cast<double>(spec.tower.genus);
  return s / (s + 1) * (1.0 - k / (N * (m - s + 1))) - 3.0 * g / ((m - s + 1) * N);
}

std::string folded_to_string(const FoldedSpec& spec) {
  const Field& F = *spec.tower.field;
  std::ostringstream os;
  os << "folded r=" << spec.tower.r << " e=" << spec.tower.e
     << " gamma=" << F.to_string(spec.tower.gamma) << " m=" << spec.m << " s=" << spec.s
     << " N=" << spec.N << " k=" << spec.k << "\n";
  for (const Place& P : spec.reps) {
    os << "rep";
    for (const Elem& x : P.alpha) os << ' ' << F.to_string(x);
    os << "\n";
  }
  return os.str();
}

FoldedSpec folded_from_string(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  auto to_num = [](const std::string& s) -> uint64_t {
    uint64_t v = 0;
    if (s.empty()) fail(Err::ParseError, "empty number");
    for (char ch : s) {
      if (ch < '0' || ch > '9') fail(Err::ParseError, "bad number: " + s);
      uint64_t nv = v * 10 + static_cast<uint64_t>(ch - '0');
      if (nv < v) fail(Err::ParseError, "number overflow: " + s);
      v = nv;
    }
    return v;
  };
  auto take = [&](const std::string& key) -> std::string {
    if (!(is >> word) || word.rfind(key + "=", 0) != 0)
      fail(Err::ParseError, "expected " + key + "=... in folded header");
    return word.substr(key.size() + 1);
  };
  if (!(is >> word) || word != "folded") fail(Err::ParseError, "missing folded header");
  uint64_t r = to_num(take("r"));
  uint64_t e = to_num(take("e"));
  std::string gamma_tok = take("gamma");
  uint64_t m = to_num(take("m"));
  uint64_t s = to_num(take("s"));
  uint64_t N = to_num(take("N"));
  uint64_t k = to_num(take("k"));
  FoldedSpec spec = [&]() -> FoldedSpec {
    try {
      HermitianTower T = hermitian_make(r, e);
      if (T.field->parse(gamma_tok) != T.gamma)
        fail(Err::ParseError, "stored generator disagrees with the canonical one");
      return folded_make(std::move(T), m, s, N, k);
    } catch (const Error& err) {
      if (err.code() == Err::ParseError) throw;
      fail(Err::ParseError, std::string("stored parameters do not reconstruct: ") + err.what());
    }
  }();
  const Field& F = *spec.tower.field;
  for (size_t i = 0; i < spec.N; ++i) {
    if (!(is >> word) || word != "rep") fail(Err::ParseError, "expected a rep line");
    Place P;
    for (size_t j = 0; j < spec.tower.e; ++j) {
      if (!(is >> word)) fail(Err::ParseError, "rep line is short of coordinates");
      P.alpha.push_back(F.parse(word));
    }
    if (P != spec.reps[i])
      fail(Err::ParseError, "stored representative disagrees with the canonical one");
  }
  if (is >> word) fail(Err::ParseError, "trailing content after the representatives");
  return spec;
}

}  // namespace listdec
