#include "listdec/designs.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace listdec {

namespace {

uint64_t sat_mul(uint64_t a, uint64_t b, uint64_t inf) {
  if (a == 0 || b == 0) return 0;
  if (a > inf / b) return inf;
  return a * b;
}

// Every r-dim subspace of F^n exactly once: pivot-column profiles in
// lexicographic order, free entries as an odometer with the first free
// position most significant.  Rows handed to fn are already in RREF.
template <typename Fn>
void subspace_scan(const Field& F, size_t n, size_t r, Fn&& fn) {
  if (r == 0) {
    std::vector<Vec> none;
    fn(none);
    return;
  }
  if (r > n) return;
  uint64_t q = F.size();
  std::vector<size_t> piv(r);
  for (size_t i = 0; i < r; ++i) piv[i] = i;
  for (;;) {
    std::vector<std::pair<size_t, size_t>> free_pos;
    for (size_t i = 0; i < r; ++i)
      for (size_t c = piv[i] + 1; c < n; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_pos.emplace_back(i, c);
    uint64_t combos = 1;
    for (size_t i = 0; i < free_pos.size(); ++i) combos *= q;
    for (uint64_t t = 0; t < combos; ++t) {
      std::vector<Vec> rows(r);
      for (size_t i = 0; i < r; ++i) {
        rows[i] = vec_zeros(F, n);
        rows[i][piv[i]] = F.one();
      }
      uint64_t rem = t;
      for (size_t idx = free_pos.size(); idx-- > 0;) {
        uint64_t ci = rem % q;
        rem /= q;
        if (ci != 0) rows[free_pos[idx].first][free_pos[idx].second] = F.elem_at(ci);
      }
      fn(rows);
    }
    bool advanced = false;
    for (size_t i = r; i-- > 0;) {
      if (piv[i] < n - r + i) {
        ++piv[i];
        for (size_t j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

// {x in F^N : the window starting at `off` lies in H}.
AffineSubspace window_cylinder(const Field& F, const AffineSubspace& H, size_t off, size_t N) {
  if (H.is_empty) return affine_empty(N);
  AffineConstraints c = affine_constraints(F, H);
  Mat C = Mat::zeros(F, c.C.rows, N);
  for (size_t i = 0; i < c.C.rows; ++i)
    for (size_t j = 0; j < H.ambient; ++j) C.at(i, off + j) = c.C.at(i, j);
  return affine_from_constraints(F, C, c.d);
}

AffineSubspace zero_tail(const Field& F, size_t from, size_t N) {
  Mat C = Mat::zeros(F, N - from, N);
  for (size_t i = 0; from + i < N; ++i) C.at(i, from + i) = F.one();
  return affine_from_constraints(F, C, vec_zeros(F, N - from));
}

void check_cascade(const CascadedDesign& C) {
  size_t l = C.levels.size();
  if (l == 0 || C.lengths.size() != l + 1 || C.ranks.size() != l + 1)
    throw std::logic_error("malformed cascade");
  for (size_t i = 0; i < l; ++i) {
    if (C.lengths[i] == 0 || C.lengths[i + 1] % C.lengths[i] != 0)
      throw std::logic_error("cascade lengths not nested");
    if (C.ranks[i] > C.ranks[i + 1]) throw std::logic_error("cascade ranks decrease");
    if (C.levels[i].ambient != C.lengths[i] ||
        C.levels[i].members.size() != C.lengths[i + 1] / C.lengths[i])
      throw std::logic_error("cascade level shape mismatch");
  }
}

}  // namespace

SubspaceDesign design_sample(FieldPtr field, size_t ambient, size_t dim, size_t count,
                             uint64_t seed) {
  if (ambient == 0 || dim > ambient) fail(Err::BadDims, "need 0 < dim <= ambient");
  const Field& F = *field;
  SubspaceDesign D{std::move(field), ambient, dim, {}, std::nullopt};
  for (size_t mbr = 0; mbr < count; ++mbr) {
    SplitMix64 g = fork_stream(seed, mbr);
    for (int attempt = 0;; ++attempt) {
      if (attempt > 4096) throw std::logic_error("full-rank draw kept failing");
      std::vector<Vec> rows(dim);
      for (size_t i = 0; i < dim; ++i) {
        rows[i].reserve(ambient);
        for (size_t j = 0; j < ambient; ++j) rows[i].push_back(F.sample(g));
      }
      if (mat_rank(F, Mat::from_rows(F, rows, ambient)) < dim) continue;
      D.members.push_back(affine_make(F, vec_zeros(F, ambient), std::move(rows)));
      break;
    }
  }
  return D;
}

uint64_t subspace_count_capped(uint64_t q, size_t n, size_t r, uint64_t cap) {
  if (r > n) return 0;
  if (cap == UINT64_MAX) --cap;
  const uint64_t inf = cap + 1;
  std::vector<uint64_t> dp(r + 1, 0);
  dp[0] = 1;
  for (size_t row = 1; row <= n; ++row) {
    for (size_t k = std::min(r, row); k >= 1; --k) {
      uint64_t pw = 1;
      for (size_t i = 0; i < k && pw < inf; ++i) pw = sat_mul(pw, q, inf);
      uint64_t val = dp[k - 1] + sat_mul(dp[k], pw, inf);
      if (val < dp[k - 1] || val > inf) val = inf;
      dp[k] = val;
    }
  }
  return dp[r];
}

std::vector<std::vector<Vec>> subspace_enumerate(const Field& F, size_t n, size_t r,
                                                 uint64_t cap) {
  if (subspace_count_capped(F.size(), n, r, cap) > cap)
    fail(Err::TooLarge, "subspace family exceeds cap");
  std::vector<std::vector<Vec>> out;
  subspace_scan(F, n, r, [&](const std::vector<Vec>& rows) { out.push_back(rows); });
  return out;
}

size_t design_sum(const SubspaceDesign& D, const std::vector<Vec>& W_rows) {
  const Field& F = *D.field;
  size_t rank_w = W_rows.empty() ? 0 : mat_rank(F, Mat::from_rows(F, W_rows, D.ambient));
  size_t total = 0;
  for (const AffineSubspace& H : D.members) {
    std::vector<Vec> stacked = W_rows;
    stacked.insert(stacked.end(), H.basis.begin(), H.basis.end());
    size_t rank_both = stacked.empty() ? 0 : mat_rank(F, Mat::from_rows(F, stacked, D.ambient));
    total += rank_w + H.dim() - rank_both;
  }
  return total;
}

size_t design_verify(SubspaceDesign& D, size_t r, uint64_t cap) {
  const Field& F = *D.field;
  if (!F.has_size_u64()) fail(Err::TooLarge, "field too large for exhaustive verification");
  if (subspace_count_capped(F.size(), D.ambient, r, cap) > cap)
    fail(Err::TooLarge, "too many subspaces to scan");
  size_t best = 0;
  subspace_scan(F, D.ambient, r,
                [&](const std::vector<Vec>& rows) { best = std::max(best, design_sum(D, rows)); });
  D.certified = DesignCertificate{r, best};
  return best;
}

AffineSubspace design_prune(const SubspaceDesign& D, const PeriodicSubspace& T) {
  if (D.field->id() != T.field->id()) throw std::logic_error("field mismatch");
  if (D.ambient != T.delta || D.members.size() != T.blocks)
    fail(Err::ShapeMismatch, "design does not tile the periodic subspace");
  if (!D.certified || D.certified->r < T.rank)
    fail(Err::Uncertified, "design certificate missing or below the extension rank");
  const Field& F = *D.field;
  AffineSubspace A = periodic_to_affine(T);
  for (size_t j = 0; j < T.blocks && !A.is_empty; ++j)
    A = affine_intersect(F, A, window_cylinder(F, D.members[j], j * T.delta, T.ambient()));
  if (!A.is_empty && A.dim() > D.certified->d)
    fail(Err::InternalInvariant, "pruned dimension exceeds the certificate");
  return A;
}

AffineSubspace precode_subspace(const Field& F, const std::vector<AffineSubspace>& members) {
  if (members.empty()) fail(Err::ShapeMismatch, "empty product");
  size_t lam = members[0].ambient;
  for (const AffineSubspace& H : members)
    if (H.ambient != lam) fail(Err::ShapeMismatch, "mixed ambient dimensions");
  size_t N = lam * members.size();
  for (const AffineSubspace& H : members)
    if (H.is_empty) return affine_empty(N);
  Vec off = vec_zeros(F, N);
  std::vector<Vec> rows;
  for (size_t j = 0; j < members.size(); ++j) {
    for (size_t i = 0; i < lam; ++i) off[j * lam + i] = members[j].offset[i];
    for (const Vec& b : members[j].basis) {
      Vec row = vec_zeros(F, N);
      for (size_t i = 0; i < lam; ++i) row[j * lam + i] = b[i];
      rows.push_back(std::move(row));
    }
  }
  return affine_make(F, std::move(off), std::move(rows));
}

CascadedDesign cascade_build(FieldPtr field, std::vector<size_t> lengths,
                             std::vector<size_t> ranks, std::vector<size_t> dims,
                             uint64_t seed) {
  if (lengths.size() < 2) fail(Err::ShapeMismatch, "need at least one level");
  if (ranks.size() != lengths.size() || dims.size() + 1 != lengths.size())
    fail(Err::ShapeMismatch, "length, rank and dimension vectors disagree");
  if (ranks[0] == 0) fail(Err::ShapeMismatch, "ranks must be positive");
  for (size_t i = 0; i + 1 < lengths.size(); ++i) {
    if (lengths[i] == 0 || lengths[i + 1] % lengths[i] != 0)
      fail(Err::NotDivisible, "each length must divide the next");
    if (ranks[i] > ranks[i + 1]) fail(Err::ShapeMismatch, "ranks must be non-decreasing");
  }
  CascadedDesign C{field, std::move(lengths), std::move(ranks), {}};
  constexpr int kRetryCap = 16;
  for (size_t lvl = 1; lvl < C.lengths.size(); ++lvl) {
    size_t lam = C.lengths[lvl - 1];
    size_t card = C.lengths[lvl] / C.lengths[lvl - 1];
    SplitMix64 lvl_stream = fork_stream(seed, lvl);
    bool ok = false;
    for (int attempt = 0; attempt < kRetryCap; ++attempt) {
      SubspaceDesign D = design_sample(field, lam, dims[lvl - 1], card, lvl_stream.next());
      size_t d_max = design_verify(D, C.ranks[lvl - 1]);
      if (d_max <= C.ranks[lvl]) {
        C.levels.push_back(std::move(D));
        ok = true;
        break;
      }
    }
    if (!ok)
      fail(Err::VerificationFailed,
           "no draw at level " + std::to_string(lvl) + " met the intersection bound");
  }
  return C;
}

AffineSubspace canonical_subspace(const CascadedDesign& C, size_t kappa) {
  check_cascade(C);
  size_t m_last = C.lengths.back();
  if (kappa < m_last) fail(Err::ShapeMismatch, "ambient smaller than the top length");
  const Field& F = *C.field;
  std::vector<Vec> rows;
  Vec rhs;
  for (size_t lvl = 1; lvl < C.lengths.size(); ++lvl) {
    size_t m_lo = C.lengths[lvl - 1], m_hi = C.lengths[lvl];
    const SubspaceDesign& D = C.levels[lvl - 1];
    std::vector<AffineConstraints> member_rows;
    member_rows.reserve(D.members.size());
    for (const AffineSubspace& H : D.members) member_rows.push_back(affine_constraints(F, H));
    for (size_t w = 0; w < m_last / m_hi; ++w) {
      for (size_t i = 0; i < D.members.size(); ++i) {
        size_t off = w * m_hi + i * m_lo;
        const AffineConstraints& c = member_rows[i];
        for (size_t rr = 0; rr < c.C.rows; ++rr) {
          Vec row = vec_zeros(F, kappa);
          for (size_t j = 0; j < m_lo; ++j) row[off + j] = c.C.at(rr, j);
          rows.push_back(std::move(row));
          rhs.push_back(c.d[rr]);
        }
      }
    }
  }
  for (size_t cpos = m_last; cpos < kappa; ++cpos) {
    Vec row = vec_zeros(F, kappa);
    row[cpos] = F.one();
    rows.push_back(std::move(row));
    rhs.push_back(F.zero());
  }
  return affine_from_constraints(F, Mat::from_rows(F, rows, kappa), rhs);
}

AffineSubspace cascade_prune(const CascadedDesign& C, const PeriodicSubspace& T, size_t kappa) {
  check_cascade(C);
  if (C.field->id() != T.field->id()) throw std::logic_error("field mismatch");
  size_t m_last = C.lengths.back();
  if (T.delta != C.lengths[0] || T.ambient() != kappa || kappa < m_last)
    fail(Err::ShapeMismatch, "periodic subspace does not match the cascade lengths");
  if (T.rank > C.ranks[0])
    fail(Err::Uncertified, "extension rank above the cascade's base rank");
  for (size_t lvl = 1; lvl < C.lengths.size(); ++lvl) {
    const auto& cert = C.levels[lvl - 1].certified;
    if (!cert || cert->r < C.ranks[lvl - 1] || cert->d > C.ranks[lvl])
      fail(Err::Uncertified, "level " + std::to_string(lvl) + " lacks a strong enough certificate");
  }
  const Field& F = *C.field;
  AffineSubspace A = periodic_to_affine(T);
  for (size_t lvl = 1; lvl < C.lengths.size() && !A.is_empty; ++lvl) {
    size_t m_lo = C.lengths[lvl - 1], m_hi = C.lengths[lvl];
    const SubspaceDesign& D = C.levels[lvl - 1];
    for (size_t w = 0; w < m_last / m_hi && !A.is_empty; ++w)
      for (size_t i = 0; i < D.members.size() && !A.is_empty; ++i)
        A = affine_intersect(F, A, window_cylinder(F, D.members[i], w * m_hi + i * m_lo, kappa));
  }
  if (!A.is_empty && kappa > m_last) A = affine_intersect(F, A, zero_tail(F, m_last, kappa));
  if (!A.is_empty && A.dim() > C.ranks.back())
    fail(Err::InternalInvariant, "pruned dimension exceeds the top rank");
  return A;
}

std::string design_to_string(const SubspaceDesign& D) {
  const Field& F = *D.field;
  if (!F.has_size_u64()) fail(Err::TooLarge, "field too large for the text form");
  std::ostringstream os;
  os << "design q=" << F.size() << " ambient=" << D.ambient << " dim=" << D.dim
     << " count=" << D.members.size() << " certified=";
  if (D.certified)
    os << D.certified->r << ":" << D.certified->d;
  else
    os << "none";
  os << "\n";
  for (const AffineSubspace& H : D.members) {
    if (H.dim() != D.dim) throw std::logic_error("member dimension drifted");
    for (const Vec& row : H.basis) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) os << ' ';
        os << F.to_string(row[i]);
      }
      os << "\n";
    }
  }
  return os.str();
}

SubspaceDesign design_from_string(const FieldPtr& field, const std::string& text) {
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
      fail(Err::ParseError, "expected " + key + "=... in design header");
    return word.substr(key.size() + 1);
  };
  if (!(is >> word) || word != "design") fail(Err::ParseError, "missing design header");
  uint64_t q = to_num(take("q"));
  if (!field->has_size_u64() || field->size() != q)
    fail(Err::ParseError, "design field size does not match the supplied field");
  size_t ambient = to_num(take("ambient"));
  size_t dim = to_num(take("dim"));
  size_t count = to_num(take("count"));
  std::string cert = take("certified");
  SubspaceDesign D{field, ambient, dim, {}, std::nullopt};
  if (cert != "none") {
    size_t colon = cert.find(':');
    if (colon == std::string::npos) fail(Err::ParseError, "bad certificate: " + cert);
    D.certified =
        DesignCertificate{to_num(cert.substr(0, colon)), to_num(cert.substr(colon + 1))};
  }
  const Field& F = *field;
  for (size_t mbr = 0; mbr < count; ++mbr) {
    std::vector<Vec> rows(dim);
    for (size_t rr = 0; rr < dim; ++rr) {
      rows[rr].reserve(ambient);
      for (size_t j = 0; j < ambient; ++j) {
        if (!(is >> word)) fail(Err::ParseError, "truncated basis row");
        rows[rr].push_back(F.parse(word));
      }
    }
    AffineSubspace H = affine_make(F, vec_zeros(F, ambient), std::move(rows));
    if (H.dim() != dim) fail(Err::ParseError, "dependent basis rows in a member");
    D.members.push_back(std::move(H));
  }
  if (is >> word) fail(Err::ParseError, "trailing data after the last member");
  return D;
}

}  // namespace listdec
