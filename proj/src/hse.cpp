#include "listdec/hse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace listdec {

namespace {

struct HseDims {
  size_t k, k_prime, d_prime, b_prime, zd, zk;
};

HseDims hse_dims(const HseParams& pr) {
  if (!pr.field) throw std::logic_error("missing field");
  if (pr.delta == 0 || pr.blocks == 0) fail(Err::BadDims, "block size and count must be positive");
  if (pr.zeta_num == 0 || pr.zeta_num >= pr.zeta_den)
    fail(Err::BadDims, "zeta must lie strictly between 0 and 1");
  if ((pr.delta * pr.zeta_num) % pr.zeta_den != 0 || (pr.blocks * pr.zeta_num) % pr.zeta_den != 0)
    fail(Err::BadDims, "zeta must scale both the block size and the block count to integers");
  HseDims d;
  d.zd = pr.delta * pr.zeta_num / pr.zeta_den;
  d.d_prime = pr.delta - d.zd;
  size_t zb = pr.blocks * pr.zeta_num / pr.zeta_den;
  d.b_prime = pr.blocks - zb;
  d.k = pr.delta * pr.blocks;
  d.k_prime = d.b_prime * pr.delta;
  d.zk = d.k - d.k_prime;
  if (d.d_prime < d.zd)
    fail(Err::BadDims, "zeta above one half breaks the truncation maps");
  return d;
}

Elem eval_coeffs(const Field& K, const std::vector<Elem>& c, const Elem& x) {
  Elem acc = K.zero();
  for (size_t i = c.size(); i-- > 0;) acc = K.add(K.mul(acc, x), c[i]);
  return acc;
}

FieldPtr make_ext(const FieldPtr& base, size_t deg) {
  try {
    return tower_make(base, static_cast<unsigned>(deg), default_tower_defining(base, static_cast<unsigned>(deg)));
  } catch (const Error& e) {
    if (e.code() == Err::TooLarge)
      fail(Err::MissingFieldSpec,
           "no defining polynomial available for degree " + std::to_string(deg));
    throw;
  }
}

// A degree-1 hash step collapses to the base field, where an element is its
// own coordinate vector; from_coords/coords would reach for the base field's
// representation over its own subfield instead.
Elem pack_hash(const HseSet& S, const Field& K, const std::vector<Elem>& co) {
  if (K.id() == S.params.field->id()) return co[0];
  return K.from_coords(co);
}

std::vector<Elem> unpack_hash(const HseSet& S, const Field& K, const Elem& val) {
  if (K.id() == S.params.field->id()) return {val};
  return K.coords(val);
}

// Truncated hash of the y-prefix: the first S.zd coordinates of
// P_j(rho_j(ypref)).
std::vector<Elem> z_hash(const HseSet& S, size_t j, const std::vector<Elem>& ypref) {
  const Field& K = *S.ext[j];
  Elem val = eval_coeffs(K, S.P[j], pack_hash(S, K, ypref));
  std::vector<Elem> co = unpack_hash(S, K, val);
  co.resize(S.zd);
  return co;
}

std::vector<Elem> w_hash(const HseSet& S, const Vec& prefix) {
  const Field& K = *S.top;
  Elem val = eval_coeffs(K, S.Q, pack_hash(S, K, prefix));
  std::vector<Elem> co = unpack_hash(S, K, val);
  co.resize(S.k() - S.k_prime());
  return co;
}

}  // namespace

HseSet hse_build(const HseParams& params) {
  HseDims d = hse_dims(params);
  HseSet S;
  S.params = params;
  if (S.params.lambda == 0) S.params.lambda = std::min<size_t>(d.k, 64);
  S.d_prime = d.d_prime;
  S.b_prime = d.b_prime;
  S.zd = d.zd;
  for (size_t j = 1; j <= d.b_prime; ++j) S.ext.push_back(make_ext(params.field, j * d.d_prime));
  S.top = make_ext(params.field, d.k_prime);
  for (size_t j = 1; j <= d.b_prime; ++j) {
    SplitMix64 g = fork_stream(params.seed, j);
    std::vector<Elem> cs;
    cs.reserve(S.params.lambda + 1);
    for (size_t i = 0; i <= S.params.lambda; ++i) cs.push_back(S.ext[j - 1]->sample(g));
    S.P.push_back(std::move(cs));
  }
  SplitMix64 g = fork_stream(params.seed, 0);
  for (size_t i = 0; i <= S.params.lambda; ++i) S.Q.push_back(S.top->sample(g));
  return S;
}

bool hse_proven_regime(const HseSet& S, size_t s) {
  const HseParams& pr = S.params;
  if (3 * pr.zeta_num >= pr.zeta_den) return false;
  if (s == 0 || 10 * s >= S.zd) return false;
  const Field& F = *pr.field;
  if (!F.has_size_u64()) return true;  // enormous q satisfies the size condition
  double lq = std::log(static_cast<double>(F.size()));
  double lhs = static_cast<double>(S.zd) * lq;
  double rhs = (10.0 / 9.0) *
               std::log(2.0 * static_cast<double>(F.size()) * static_cast<double>(F.size()) *
                        static_cast<double>(pr.lambda));
  return lhs >= rhs;
}

Vec hse_encode(const HseSet& S, const Vec& x) {
  if (x.size() != S.input_len()) fail(Err::LengthMismatch, "input must have one y-block per level");
  Vec v;
  v.reserve(S.k());
  std::vector<Elem> ypref;
  for (size_t j = 0; j < S.b_prime; ++j) {
    for (size_t i = 0; i < S.d_prime; ++i) {
      v.push_back(x[j * S.d_prime + i]);
      ypref.push_back(x[j * S.d_prime + i]);
    }
    for (const Elem& e : z_hash(S, j, ypref)) v.push_back(e);
  }
  for (const Elem& e : w_hash(S, v)) v.push_back(e);
  return v;
}

bool hse_member(const HseSet& S, const Vec& v) {
  if (v.size() != S.k()) fail(Err::LengthMismatch, "vector length must be the full ambient");
  std::vector<Elem> ypref;
  for (size_t j = 0; j < S.b_prime; ++j) {
    size_t base = j * S.params.delta;
    for (size_t i = 0; i < S.d_prime; ++i) ypref.push_back(v[base + i]);
    std::vector<Elem> co = z_hash(S, j, ypref);
    for (size_t t = 0; t < S.zd; ++t)
      if (v[base + S.d_prime + t] != co[t]) return false;
  }
  Vec prefix(v.begin(), v.begin() + static_cast<long>(S.k_prime()));
  std::vector<Elem> co = w_hash(S, prefix);
  for (size_t t = 0; t < co.size(); ++t)
    if (v[S.k_prime() + t] != co[t]) return false;
  return true;
}

std::vector<Vec> hse_intersect(const HseSet& S, const PeriodicSubspace& W, size_t frontier_cap) {
  if (W.field->id() != S.params.field->id()) throw std::logic_error("field mismatch");
  if (W.delta != S.params.delta || W.blocks != S.params.blocks)
    fail(Err::ShapeMismatch, "periodic shape disagrees with the set parameters");
  if (frontier_cap == 0) frontier_cap = S.params.lambda;
  if (W.is_empty) return {};
  const Field& F = *S.params.field;
  std::vector<Vec> frontier(1);
  for (size_t j = 0; j < S.b_prime; ++j) {
    std::vector<Vec> next;
    for (const Vec& p : frontier) {
      AffineSubspace E = periodic_extend(W, p);
      if (E.is_empty) continue;
      std::vector<Elem> ypref;
      for (size_t jj = 0; jj < j; ++jj)
        for (size_t i = 0; i < S.d_prime; ++i) ypref.push_back(p[jj * S.params.delta + i]);
      for (Vec& e : affine_enumerate(F, E)) {
        std::vector<Elem> yext = ypref;
        for (size_t i = 0; i < S.d_prime; ++i) yext.push_back(e[i]);
        std::vector<Elem> co = z_hash(S, j, yext);
        bool ok = true;
        for (size_t t = 0; t < S.zd && ok; ++t) ok = e[S.d_prime + t] == co[t];
        if (!ok) continue;
        Vec np = p;
        np.insert(np.end(), e.begin(), e.end());
        next.push_back(std::move(np));
        if (next.size() > frontier_cap)
          fail(Err::FrontierOverflow,
               "level " + std::to_string(j + 1) + " frontier exceeded " +
                   std::to_string(frontier_cap));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Vec> out;
  for (const Vec& p : frontier) {
    Vec full = p;
    for (const Elem& e : w_hash(S, p)) full.push_back(e);
    if (periodic_member(W, full)) out.push_back(std::move(full));
  }
  return out;
}

std::string hse_to_string(const HseSet& S) {
  const Field& F = *S.params.field;
  std::ostringstream os;
  os << "hse q=" << F.size() << " delta=" << S.params.delta << " blocks=" << S.params.blocks
     << " zeta=" << S.params.zeta_num << "/" << S.params.zeta_den
     << " lambda=" << S.params.lambda << " seed=" << S.params.seed << "\n";
  // a degree-1 step collapses to the base field, which keeps no defining
  // polynomial of its own; the canonical linear one stands in for it
  auto put_field = [&](const char* tag, const FieldPtr& f, size_t deg) {
    os << tag << ' ' << deg;
    std::vector<Elem> cs =
        f->id() == F.id() ? default_tower_defining(S.params.field, 1) : f->defining();
    for (const Elem& c : cs) os << ' ' << F.to_string(c);
    os << "\n";
  };
  for (size_t j = 0; j < S.b_prime; ++j) put_field("ext", S.ext[j], (j + 1) * S.d_prime);
  put_field("top", S.top, S.b_prime * S.params.delta);
  for (size_t j = 0; j < S.b_prime; ++j) {
    os << "P";
    for (const Elem& c : S.P[j]) os << ' ' << S.ext[j]->to_string(c);
    os << "\n";
  }
  os << "Q";
  for (const Elem& c : S.Q) os << ' ' << S.top->to_string(c);
  os << "\n";
  return os.str();
}

HseSet hse_from_string(const FieldPtr& field, const std::string& text) {
  std::istringstream is(text);
  std::string word;
  auto to_num = [](const std::string& s) -> uint64_t {
    uint64_t v = 0;
    if (s.empty()) fail(Err::ParseError, "empty number");
    for (char ch : s) {
      if (ch < '0' || ch > '9') fail(Err::ParseError, "bad number: " + s);
      v = v * 10 + static_cast<uint64_t>(ch - '0');
    }
    return v;
  };
  auto take = [&](const std::string& key) -> std::string {
    if (!(is >> word) || word.rfind(key + "=", 0) != 0)
      fail(Err::ParseError, "expected " + key + "=... in set header");
    return word.substr(key.size() + 1);
  };
  if (!(is >> word) || word != "hse") fail(Err::ParseError, "missing set header");
  uint64_t q = to_num(take("q"));
  if (!field->has_size_u64() || field->size() != q)
    fail(Err::ParseError, "set field size does not match the supplied field");
  HseParams pr;
  pr.field = field;
  pr.delta = to_num(take("delta"));
  pr.blocks = to_num(take("blocks"));
  std::string zeta = take("zeta");
  size_t slash = zeta.find('/');
  if (slash == std::string::npos) fail(Err::ParseError, "zeta must be a fraction");
  pr.zeta_num = to_num(zeta.substr(0, slash));
  pr.zeta_den = to_num(zeta.substr(slash + 1));
  pr.lambda = to_num(take("lambda"));
  pr.seed = to_num(take("seed"));
  if (pr.lambda == 0) fail(Err::ParseError, "stored degree must be positive");
  HseDims d = hse_dims(pr);

  HseSet S;
  S.params = pr;
  S.d_prime = d.d_prime;
  S.b_prime = d.b_prime;
  S.zd = d.zd;
  auto read_field = [&](const std::string& tag, size_t deg) -> FieldPtr {
    if (!(is >> word) || word != tag) fail(Err::ParseError, "expected " + tag + " line");
    size_t got = to_num((is >> word, word));
    if (got != deg) fail(Err::ParseError, "stored degree disagrees with the parameters");
    std::vector<Elem> cs;
    for (size_t i = 0; i <= deg; ++i) {
      if (!(is >> word)) fail(Err::ParseError, "truncated defining polynomial");
      cs.push_back(field->parse(word));
    }
    return tower_make(field, static_cast<unsigned>(deg), cs);
  };
  for (size_t j = 1; j <= d.b_prime; ++j) S.ext.push_back(read_field("ext", j * d.d_prime));
  S.top = read_field("top", d.k_prime);
  for (size_t j = 0; j < d.b_prime; ++j) {
    if (!(is >> word) || word != "P") fail(Err::ParseError, "expected P line");
    std::vector<Elem> cs;
    for (size_t i = 0; i <= pr.lambda; ++i) {
      if (!(is >> word)) fail(Err::ParseError, "truncated coefficient list");
      cs.push_back(S.ext[j]->parse(word));
    }
    S.P.push_back(std::move(cs));
  }
  if (!(is >> word) || word != "Q") fail(Err::ParseError, "expected Q line");
  for (size_t i = 0; i <= pr.lambda; ++i) {
    if (!(is >> word)) fail(Err::ParseError, "truncated coefficient list");
    S.Q.push_back(S.top->parse(word));
  }
  if (is >> word) fail(Err::ParseError, "trailing data after the coefficients");
  return S;
}

}  // namespace listdec
