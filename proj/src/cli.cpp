#include "listdec/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

namespace listdec {

namespace {

uint64_t parse_u64(const std::string& s, const std::string& what) {
  uint64_t v = 0;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end)
    fail(Err::ParseError, what + ": bad number '" + s + "'");
  return v;
}

struct PrimePower {
  uint64_t p = 0;
  unsigned a = 0;
};

PrimePower factor_prime_power(uint64_t q) {
  if (q >= 2) {
    uint64_t p = q;
    for (uint64_t d = 2; d * d <= q; ++d)
      if (q % d == 0) {
        p = d;
        break;
      }
    PrimePower pp{p, 0};
    uint64_t rest = q;
    while (rest % p == 0) {
      rest /= p;
      ++pp.a;
    }
    if (rest == 1) return pp;
  }
  fail(Err::BadDims, "expected a prime power, got " + std::to_string(q));
}

// GF(q) with the library's first-hit defining polynomial, the only base
// field the tool ever writes into a spec, so files reload unambiguously.
FieldPtr canonical_field(uint64_t q) {
  PrimePower pp = factor_prime_power(q);
  return field_make(default_field_spec(pp.p, pp.a));
}

// ---- files ----

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::IoError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) fail(Err::IoError, "cannot read " + path);
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Err::IoError, "cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) fail(Err::IoError, "cannot write " + path);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

void emit_prefixed(std::ostringstream& os, const char* key, const std::string& payload) {
  for (const std::string& line : split_lines(payload)) os << key << '=' << line << "\n";
}

// ---- element and column files: one symbol (or column) per line ----

Vec read_element_lines(const Field& F, const std::string& text, size_t expect,
                       const std::string& what) {
  Vec out;
  for (const std::string& line : split_lines(text)) {
    std::vector<std::string> toks = split_tokens(line);
    if (toks.empty()) continue;
    if (toks.size() != 1) fail(Err::ParseError, what + ": expected one symbol per line");
    out.push_back(F.parse(toks[0]));
  }
  if (out.size() != expect)
    fail(Err::ParseError, what + ": expected " + std::to_string(expect) + " lines, got " +
                              std::to_string(out.size()));
  return out;
}

FoldedWord read_column_lines(const Field& F, const std::string& text, size_t count, size_t width,
                             const std::string& what) {
  FoldedWord out;
  for (const std::string& line : split_lines(text)) {
    std::vector<std::string> toks = split_tokens(line);
    if (toks.empty()) continue;
    if (toks.size() != width)
      fail(Err::ParseError, what + ": expected " + std::to_string(width) + " symbols per line");
    Vec col;
    for (const std::string& t : toks) col.push_back(F.parse(t));
    out.push_back(std::move(col));
  }
  if (out.size() != count)
    fail(Err::ParseError, what + ": expected " + std::to_string(count) + " lines, got " +
                              std::to_string(out.size()));
  return out;
}

std::string format_element_lines(const Field& F, const Vec& v) {
  std::ostringstream os;
  for (const Elem& x : v) os << F.to_string(x) << "\n";
  return os.str();
}

std::string format_column_lines(const Field& F, const FoldedWord& W) {
  std::ostringstream os;
  for (const Vec& col : W) {
    for (size_t i = 0; i < col.size(); ++i) {
      if (i) os << ' ';
      os << F.to_string(col[i]);
    }
    os << "\n";
  }
  return os.str();
}

void format_vector_line(std::ostringstream& os, const Field& F, const Vec& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << F.to_string(v[i]);
  }
  os << "\n";
}

// ---- transcripts ----

struct Transcript {
  std::ostringstream os;

  void put(const std::string& key, const std::string& v) { os << key << '=' << v << "\n"; }
  void put(const std::string& key, uint64_t v) { os << key << '=' << v << "\n"; }
  void raw(const std::string& line) { os << line << "\n"; }
};

void finish_transcript(const std::string& path, const Transcript& t) {
  if (!path.empty()) write_file(path, t.os.str());
}

// ---- error injection, shared by the corrupt command and experiment trials ----

std::vector<size_t> pick_positions(SplitMix64& g, size_t len, size_t count) {
  std::vector<size_t> pos(len);
  for (size_t i = 0; i < len; ++i) pos[i] = i;
  for (size_t i = 0; i < count; ++i) {
    size_t j = i + static_cast<size_t>(uniform_below(g, len - i));
    std::swap(pos[i], pos[j]);
  }
  pos.resize(count);
  return pos;
}

Elem resample_symbol(const Field& F, SplitMix64& g, const Elem& old) {
  for (;;) {
    Elem x = F.sample(g);
    if (x != old) return x;
  }
}

Vec resample_column(const Field& F, SplitMix64& g, const Vec& old) {
  for (;;) {
    Vec col;
    col.reserve(old.size());
    for (size_t i = 0; i < old.size(); ++i) col.push_back(F.sample(g));
    if (col != old) return col;
  }
}

std::vector<size_t> corrupt_symbols(const Field& F, SplitMix64& g, Vec& word, size_t count) {
  std::vector<size_t> pos = pick_positions(g, word.size(), count);
  for (size_t i : pos) word[i] = resample_symbol(F, g, word[i]);
  return pos;
}

std::vector<size_t> corrupt_columns(const Field& F, SplitMix64& g, FoldedWord& word,
                                    size_t count) {
  std::vector<size_t> pos = pick_positions(g, word.size(), count);
  for (size_t i : pos) word[i] = resample_column(F, g, word[i]);
  return pos;
}

// ---- options ----

struct ConstructOpts {
  std::string kind;
  std::string spec_path;
  std::string transcript;
  uint64_t seed = 0;
  uint64_t budget = kEnumerationCap;
  uint64_t q = 0, r = 0, e = 0, m = 0, n = 0, k = 0, s = 0, N = 0;
  std::string precode = "none";
  uint64_t design_dim = 1;
  uint64_t design_r = 1;
  uint64_t hse_delta = 0;
  std::string hse_zeta = "1/2";
  uint64_t hse_lambda = 0;
};

struct FileOpts {
  std::string spec_path;
  std::string in_path;
  std::string out_path;
  std::string transcript;
  uint64_t seed = 0;
  uint64_t errors = 0;
};

struct DecodeOpts {
  std::string spec_path;
  std::string in_path;
  std::string out_path;
  std::string transcript;
  int64_t s = -1;
  int64_t radius = -1;
  int64_t agreement = -1;
  uint64_t budget = kEnumerationCap;
};

struct VerifyOpts {
  std::string spec_path;
  std::string transcript;
  int64_t r = -1;
  uint64_t budget = kEnumerationCap;
};

struct ExperimentOpts {
  std::string spec_path;
  std::string transcript;
  uint64_t seed = 0;
  uint64_t trials = 0;
  uint64_t jobs = 1;
  int64_t s = -1;
  int64_t radius = -1;
  int64_t agreement = -1;
  uint64_t budget = kEnumerationCap;
};

CodeSpecFile load_spec(const std::string& path) { return spec_from_string(read_file(path)); }

std::pair<size_t, size_t> parse_zeta(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
    fail(Err::BadDims, "zeta must be written num/den, got '" + s + "'");
  uint64_t num = 0, den = 0;
  try {
    num = parse_u64(s.substr(0, slash), "zeta numerator");
    den = parse_u64(s.substr(slash + 1), "zeta denominator");
  } catch (const Error&) {
    fail(Err::BadDims, "zeta must be written num/den, got '" + s + "'");
  }
  if (den == 0) fail(Err::BadDims, "zeta denominator must be positive");
  return {num, den};
}

// One restriction object for either code kind.  `field` carries the symbols
// the restriction constrains: the base field for rs coefficients blocks, the
// tower field for folded messages.
FoldedPrecode build_precode(const ConstructOpts& o, const FieldPtr& field, size_t design_ambient,
                            size_t design_count, size_t hse_ambient) {
  if (o.precode == "none") return {};
  if (o.precode == "design") {
    if (o.design_dim == 0) fail(Err::BadDims, "--design-dim must be positive");
    SubspaceDesign D = design_sample(field, design_ambient, o.design_dim, design_count, o.seed);
    design_verify(D, o.design_r, o.budget);
    return D;
  }
  if (o.precode == "hse") {
    if (o.hse_delta == 0 || hse_ambient % o.hse_delta != 0)
      fail(Err::BadDims,
           "--hse-delta must divide the message ambient " + std::to_string(hse_ambient));
    auto [zn, zd] = parse_zeta(o.hse_zeta);
    HseParams p;
    p.field = field;
    p.delta = o.hse_delta;
    p.blocks = hse_ambient / o.hse_delta;
    p.zeta_num = zn;
    p.zeta_den = zd;
    p.lambda = o.hse_lambda;
    p.seed = o.seed;
    return hse_build(p);
  }
  fail(Err::BadDims, "--precode must be none, design, or hse");
}

RsPrecode to_rs_precode(const FoldedPrecode& p) {
  if (const auto* D = std::get_if<SubspaceDesign>(&p)) return *D;
  if (const auto* S = std::get_if<HseSet>(&p)) return *S;
  return {};
}

int do_construct(const ConstructOpts& o) {
  CodeSpecFile sf;
  sf.kind = o.kind;
  sf.seed = o.seed;
  sf.precode_kind = o.precode;
  if (o.kind == "rs") {
    sf.q = o.q;
    sf.m = o.m;
    sf.n = o.n;
    sf.k = o.k;
    if (sf.m < 2) fail(Err::BadDims, "--m must be at least 2");
    FieldPtr base = canonical_field(sf.q);
    FieldPtr F = tower_make(base, static_cast<unsigned>(sf.m),
                            default_tower_defining(base, static_cast<unsigned>(sf.m)));
    if (sf.n > base->size()) fail(Err::BadDims, "--n exceeds the base field size");
    Vec alphas;
    for (uint64_t i = 0; i < sf.n; ++i) alphas.push_back(base->elem_at(i));
    sf.precode = build_precode(o, base, sf.m, sf.k, sf.k * sf.m);
    sf.rs = rs_make(std::move(F), sf.n, sf.k, std::move(alphas), to_rs_precode(sf.precode));
  } else if (o.kind == "folded-hermitian") {
    sf.r = o.r;
    sf.e = o.e;
    sf.m = o.m;
    sf.s = o.s;
    sf.N = o.N;
    sf.k = o.k;
    HermitianTower T = hermitian_make(sf.r, sf.e);
    size_t delta = T.field->size() - 1;
    size_t blocks = (sf.k + delta - 1) / delta;
    sf.precode = build_precode(o, T.field, delta, blocks, sf.k);
    sf.folded = folded_make(std::move(T), sf.m, sf.s, sf.N, sf.k);
  } else {
    fail(Err::BadDims, "--kind must be rs or folded-hermitian");
  }

  std::string text = spec_to_string(sf);
  CodeSpecFile back = spec_from_string(text);
  if (spec_to_string(back) != text) throw std::logic_error("spec serialization did not round trip");
  write_file(o.spec_path, text);

  Transcript t;
  t.put("command", "construct");
  t.put("kind", sf.kind);
  t.put("seed", sf.seed);
  if (sf.kind == "rs") {
    t.put("q", sf.q);
    t.put("m", sf.m);
    t.put("n", sf.n);
    t.put("k", sf.k);
  } else {
    t.put("r", sf.r);
    t.put("e", sf.e);
    t.put("m", sf.m);
    t.put("s", sf.s);
    t.put("N", sf.N);
    t.put("k", sf.k);
  }
  t.put("precode", sf.precode_kind);
  if (const auto* D = std::get_if<SubspaceDesign>(&sf.precode)) {
    t.put("design-certified",
          std::to_string(D->certified->r) + ":" + std::to_string(D->certified->d));
  }
  finish_transcript(o.transcript, t);
  return 0;
}

int do_encode(const FileOpts& o) {
  CodeSpecFile sf = load_spec(o.spec_path);
  const Field& F = *spec_symbol_field(sf);
  Transcript t;
  t.put("command", "encode");
  t.put("kind", sf.kind);
  if (sf.kind == "rs") {
    Vec coeffs = read_element_lines(F, read_file(o.in_path), sf.k, "message");
    Poly f = poly_make(F, std::move(coeffs));
    write_file(o.out_path, format_element_lines(F, rs_encode(*sf.rs, f)));
    t.put("n", sf.n);
    t.put("k", sf.k);
  } else {
    Vec msg = read_element_lines(F, read_file(o.in_path), sf.k, "message");
    write_file(o.out_path, format_column_lines(F, folded_encode(*sf.folded, msg)));
    t.put("N", sf.N);
    t.put("m", sf.m);
    t.put("k", sf.k);
  }
  finish_transcript(o.transcript, t);
  return 0;
}

int do_corrupt(const FileOpts& o) {
  CodeSpecFile sf = load_spec(o.spec_path);
  const Field& F = *spec_symbol_field(sf);
  size_t len = sf.kind == "rs" ? sf.n : sf.N;
  if (o.errors > len)
    fail(Err::BadDims, "--errors exceeds the codeword length " + std::to_string(len));
  SplitMix64 g{o.seed};
  std::vector<size_t> pos;
  if (sf.kind == "rs") {
    Vec word = read_element_lines(F, read_file(o.in_path), sf.n, "codeword");
    pos = corrupt_symbols(F, g, word, o.errors);
    write_file(o.out_path, format_element_lines(F, word));
  } else {
    FoldedWord word = read_column_lines(F, read_file(o.in_path), sf.N, sf.m, "codeword");
    pos = corrupt_columns(F, g, word, o.errors);
    write_file(o.out_path, format_column_lines(F, word));
  }
  Transcript t;
  t.put("command", "corrupt");
  t.put("kind", sf.kind);
  t.put("seed", o.seed);
  t.put("errors", o.errors);
  for (size_t i : pos) t.put("position", i);
  finish_transcript(o.transcript, t);
  return 0;
}

// The error budget / agreement pair, resolved from whichever flag was given.
// Returns the error count for rs and the agreement threshold for folded.
size_t resolve_radius(const CodeSpecFile& sf, int64_t radius, int64_t agreement) {
  size_t len = sf.kind == "rs" ? sf.n : sf.N;
  if ((radius >= 0) == (agreement >= 0))
    fail(Err::BadDims, "give exactly one of --radius and --agreement");
  if (radius >= 0) {
    if (static_cast<size_t>(radius) > len)
      fail(Err::RadiusTooLarge, "--radius exceeds the codeword length");
    return sf.kind == "rs" ? static_cast<size_t>(radius) : len - static_cast<size_t>(radius);
  }
  if (static_cast<size_t>(agreement) > len)
    fail(Err::RadiusTooLarge, "--agreement exceeds the codeword length");
  return sf.kind == "rs" ? len - static_cast<size_t>(agreement)
                         : static_cast<size_t>(agreement);
}

size_t resolve_rs_order(const CodeSpecFile& sf, int64_t s) {
  if (sf.kind == "rs") {
    if (s < 1) fail(Err::BadS, "--s (at least 1) is required for rs decoding");
    return static_cast<size_t>(s);
  }
  if (s >= 0) fail(Err::BadS, "--s is fixed by the spec for folded codes");
  return sf.s;
}

int do_decode(const DecodeOpts& o, std::ostream& out) {
  CodeSpecFile sf = load_spec(o.spec_path);
  const Field& F = *spec_symbol_field(sf);
  size_t order = resolve_rs_order(sf, o.s);
  size_t level = resolve_radius(sf, o.radius, o.agreement);
  DecodeTrace tr;
  std::ostringstream lines;
  if (sf.kind == "rs") {
    Vec y = read_element_lines(F, read_file(o.in_path), sf.n, "received word");
    std::vector<Poly> list = rs_list_decode(*sf.rs, y, order, level, o.budget, &tr);
    for (const Poly& f : list) {
      Vec coeffs;
      for (size_t i = 0; i < sf.k; ++i) coeffs.push_back(poly_coeff(F, f, i));
      format_vector_line(lines, F, coeffs);
    }
  } else {
    FoldedWord Y = read_column_lines(F, read_file(o.in_path), sf.N, sf.m, "received word");
    std::vector<Vec> list = folded_list_decode(*sf.folded, Y, level, sf.precode, o.budget, &tr);
    for (const Vec& v : list) format_vector_line(lines, F, v);
  }
  write_file(o.out_path, lines.str());
  Transcript t;
  t.put("command", "decode");
  t.put("kind", sf.kind);
  if (sf.kind == "rs") t.put("s", order);
  t.put("D", tr.D);
  t.put("threshold", tr.threshold);
  t.put("solver-dim", tr.solver_dim);
  t.put("pruned-dim", tr.pruned_dim);
  t.put("list-size", tr.list_size);
  finish_transcript(o.transcript, t);
  out << "list-size=" << tr.list_size << "\n";
  return 0;
}

uint64_t design_header_q(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  if (!lines.empty())
    for (const std::string& tok : split_tokens(lines[0]))
      if (tok.rfind("q=", 0) == 0) return parse_u64(tok.substr(2), "design header q");
  fail(Err::ParseError, "design header carries no q= entry");
}

int do_verify_design(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
  std::string text = read_file(o.spec_path);
  SubspaceDesign D;
  if (text.rfind("design ", 0) == 0) {
    D = design_from_string(canonical_field(design_header_q(text)), text);
  } else {
    CodeSpecFile sf = spec_from_string(text);
    const auto* embedded = std::get_if<SubspaceDesign>(&sf.precode);
    if (!embedded) fail(Err::BadDims, "the spec carries no design precode to verify");
    D = *embedded;
  }
  std::optional<DesignCertificate> stored = D.certified;
  size_t r = 0;
  if (o.r >= 0)
    r = static_cast<size_t>(o.r);
  else if (stored)
    r = stored->r;
  else
    fail(Err::BadDims, "the file carries no certificate; give --r");
  size_t d = design_verify(D, r, o.budget);

  std::string match = "new";
  if (stored && stored->r == r) match = stored->d == d ? "yes" : "no";
  Transcript t;
  t.put("command", "verify-design");
  t.put("r", r);
  t.put("d", d);
  t.put("stored", stored ? std::to_string(stored->r) + ":" + std::to_string(stored->d)
                         : std::string("none"));
  t.put("match", match);
  finish_transcript(o.transcript, t);
  out << "r=" << r << " d=" << d << "\n";
  if (match == "no") {
    err << "certificate mismatch: file says d=" << stored->d << ", the scan found d=" << d
        << "\n";
    return 1;
  }
  return 0;
}

// ---- experiment trials ----

// A uniformly random message that respects the precode, so every trial
// transmits something the decoder is allowed to return.
Poly sample_rs_message(const RsCodeSpec& spec, SplitMix64& g) {
  const Field& F = *spec.field;
  const Field& Fq = *spec.base();
  size_t m = spec.m();
  Vec coeffs;
  if (const auto* D = std::get_if<SubspaceDesign>(&spec.precode)) {
    for (size_t j = 0; j < spec.k; ++j) {
      Vec block = vec_zeros(Fq, D->ambient);
      for (const Vec& row : D->members[j].basis)
        block = vec_add(Fq, block, vec_scale(Fq, Fq.sample(g), row));
      coeffs.push_back(F.from_coords(block));
    }
  } else if (const auto* S = std::get_if<HseSet>(&spec.precode)) {
    Vec x;
    for (size_t i = 0; i < S->input_len(); ++i) x.push_back(Fq.sample(g));
    Vec v = hse_encode(*S, x);
    for (size_t j = 0; j < spec.k; ++j)
      coeffs.push_back(F.from_coords(Vec(v.begin() + static_cast<long>(j * m),
                                         v.begin() + static_cast<long>((j + 1) * m))));
  } else {
    for (size_t j = 0; j < spec.k; ++j) coeffs.push_back(F.sample(g));
  }
  return poly_make(F, std::move(coeffs));
}

Vec sample_folded_message(const FoldedSpec& spec, const FoldedPrecode& pre, SplitMix64& g) {
  const Field& F = *spec.tower.field;
  if (const auto* D = std::get_if<SubspaceDesign>(&pre)) {
    // a short message leaves the tail of the last block zero, so the draw
    // must stay inside the members that remain compatible with that tail
    size_t pad = D->members.size() * D->ambient - spec.k;
    Vec full;
    for (size_t j = 0; j < D->members.size(); ++j) {
      AffineSubspace H = D->members[j];
      if (j + 1 == D->members.size() && pad > 0) {
        std::vector<Vec> head;
        for (size_t i = 0; i + pad < D->ambient; ++i) {
          Vec u = vec_zeros(F, D->ambient);
          u[i] = F.one();
          head.push_back(std::move(u));
        }
        H = affine_intersect(F, H, affine_make(F, vec_zeros(F, D->ambient), std::move(head)));
      }
      Vec block = H.offset;
      for (const Vec& row : H.basis)
        block = vec_add(F, block, vec_scale(F, F.sample(g), row));
      full.insert(full.end(), block.begin(), block.end());
    }
    full.erase(full.begin() + static_cast<long>(spec.k), full.end());
    return full;
  }
  if (const auto* S = std::get_if<HseSet>(&pre)) {
    Vec x;
    for (size_t i = 0; i < S->input_len(); ++i) x.push_back(F.sample(g));
    return hse_encode(*S, x);
  }
  Vec msg;
  for (size_t j = 0; j < spec.k; ++j) msg.push_back(F.sample(g));
  return msg;
}

struct TrialResult {
  bool listed = false;
  size_t list_size = 0;
};

TrialResult run_trial(const CodeSpecFile& sf, uint64_t seed, size_t index, size_t order,
                      size_t level, uint64_t budget) {
  SplitMix64 g = fork_stream(seed, index);
  const Field& F = *spec_symbol_field(sf);
  if (sf.kind == "rs") {
    Poly f = sample_rs_message(*sf.rs, g);
    Vec word = rs_encode(*sf.rs, f);
    corrupt_symbols(F, g, word, level);
    std::vector<Poly> list = rs_list_decode(*sf.rs, word, order, level, budget);
    bool hit = std::find(list.begin(), list.end(), f) != list.end();
    return {hit, list.size()};
  }
  Vec msg = sample_folded_message(*sf.folded, sf.precode, g);
  FoldedWord word = folded_encode(*sf.folded, msg);
  corrupt_columns(F, g, word, sf.N - level);
  std::vector<Vec> list = folded_list_decode(*sf.folded, word, level, sf.precode, budget);
  bool hit = std::find(list.begin(), list.end(), msg) != list.end();
  return {hit, list.size()};
}

int do_experiment(const ExperimentOpts& o, std::ostream& out) {
  CodeSpecFile sf = load_spec(o.spec_path);
  if (o.trials == 0) fail(Err::BadDims, "--trials must be positive");
  size_t order = resolve_rs_order(sf, o.s);
  size_t level = resolve_radius(sf, o.radius, o.agreement);

  size_t trials = o.trials;
  std::vector<TrialResult> results(trials);
  std::vector<std::exception_ptr> failures(trials);
  size_t jobs = std::max<uint64_t>(1, std::min<uint64_t>(o.jobs, trials));
  if (jobs == 1) {
    for (size_t i = 0; i < trials; ++i) results[i] = run_trial(sf, o.seed, i, order, level, o.budget);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < jobs; ++w)
      pool.emplace_back([&]() {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= trials) return;
          try {
            results[i] = run_trial(sf, o.seed, i, order, level, o.budget);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    for (std::thread& th : pool) th.join();
    for (size_t i = 0; i < trials; ++i)
      if (failures[i]) std::rethrow_exception(failures[i]);
  }

  size_t recovered = 0;
  Transcript t;
  t.put("command", "experiment");
  t.put("kind", sf.kind);
  t.put("seed", o.seed);
  t.put("trials", trials);
  if (sf.kind == "rs") {
    t.put("s", order);
    t.put("radius", level);
  } else {
    t.put("agreement", level);
  }
  for (size_t i = 0; i < trials; ++i) {
    recovered += results[i].listed ? 1 : 0;
    t.raw("trial=" + std::to_string(i) + " listed=" + (results[i].listed ? "1" : "0") +
          " list-size=" + std::to_string(results[i].list_size));
  }
  t.put("recovered", recovered);
  finish_transcript(o.transcript, t);
  out << "trials=" << trials << " recovered=" << recovered << "\n";
  return 0;
}

int exit_code_for(Err code) {
  switch (code) {
    case Err::IoError:
    case Err::ParseError:
      return 2;
    case Err::TooLarge:
    case Err::EnumerationTooLarge:
    case Err::FrontierOverflow:
      return 3;
    case Err::RadiusTooLarge:
    case Err::ThresholdTooLow:
      return 4;
    default:
      return 1;
  }
}

}  // namespace

const FieldPtr& spec_symbol_field(const CodeSpecFile& spec) {
  if (spec.kind == "rs") return spec.rs->field;
  return spec.folded->tower.field;
}

std::string spec_to_string(const CodeSpecFile& sf) {
  std::ostringstream os;
  os << "kind=" << sf.kind << "\n";
  os << "seed=" << sf.seed << "\n";
  if (sf.kind == "rs") {
    if (!sf.rs) throw std::logic_error("rs spec not populated");
    os << "q=" << sf.q << "\n";
    os << "m=" << sf.m << "\n";
    os << "n=" << sf.n << "\n";
    os << "k=" << sf.k << "\n";
    const Field& Fq = *sf.rs->base();
    for (const Elem& a : sf.rs->alphas) os << "alpha=" << Fq.to_string(a) << "\n";
  } else if (sf.kind == "folded-hermitian") {
    if (!sf.folded) throw std::logic_error("folded spec not populated");
    os << "r=" << sf.r << "\n";
    os << "e=" << sf.e << "\n";
    os << "m=" << sf.m << "\n";
    os << "s=" << sf.s << "\n";
    os << "N=" << sf.N << "\n";
    os << "k=" << sf.k << "\n";
  } else {
    throw std::logic_error("unknown spec kind " + sf.kind);
  }
  os << "precode=" << sf.precode_kind << "\n";
  if (const auto* D = std::get_if<SubspaceDesign>(&sf.precode))
    emit_prefixed(os, "design", design_to_string(*D));
  else if (const auto* S = std::get_if<HseSet>(&sf.precode))
    emit_prefixed(os, "hse", hse_to_string(*S));
  return os.str();
}

CodeSpecFile spec_from_string(const std::string& text) {
  std::map<std::string, std::string> single;
  std::vector<std::string> alpha_toks, design_lines, hse_lines;
  static const char* known[] = {"kind", "seed", "q", "r", "e", "m", "s", "N", "n", "k",
                                "precode"};
  for (const std::string& line : split_lines(text)) {
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail(Err::ParseError, "expected key=value, got '" + line + "'");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (key == "alpha") {
      alpha_toks.push_back(value);
    } else if (key == "design") {
      design_lines.push_back(value);
    } else if (key == "hse") {
      hse_lines.push_back(value);
    } else if (std::find_if(std::begin(known), std::end(known),
                            [&](const char* kk) { return key == kk; }) != std::end(known)) {
      if (!single.emplace(key, value).second) fail(Err::ParseError, "duplicate key " + key);
    } else {
      fail(Err::ParseError, "unknown key " + key);
    }
  }
  auto need = [&](const char* key) -> const std::string& {
    auto it = single.find(key);
    if (it == single.end()) fail(Err::ParseError, std::string("missing key ") + key);
    return it->second;
  };
  auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* key : keys)
      if (single.count(key))
        fail(Err::ParseError, std::string("key ") + key + " does not belong to this kind");
  };

  CodeSpecFile sf;
  sf.kind = need("kind");
  sf.seed = parse_u64(need("seed"), "seed");
  sf.precode_kind = need("precode");
  if (sf.precode_kind != "none" && sf.precode_kind != "design" && sf.precode_kind != "hse")
    fail(Err::ParseError, "precode must be none, design, or hse");
  if ((sf.precode_kind == "design") != !design_lines.empty())
    fail(Err::ParseError, "design section does not match the precode key");
  if ((sf.precode_kind == "hse") != !hse_lines.empty())
    fail(Err::ParseError, "hse section does not match the precode key");

  try {
    if (sf.kind == "rs") {
      forbid({"r", "e", "s", "N"});
      sf.q = parse_u64(need("q"), "q");
      sf.m = parse_u64(need("m"), "m");
      sf.n = parse_u64(need("n"), "n");
      sf.k = parse_u64(need("k"), "k");
      if (sf.m < 2) fail(Err::ParseError, "m must be at least 2");
      FieldPtr base = canonical_field(sf.q);
      if (base->size() != sf.q) throw std::logic_error("base field size drifted");
      FieldPtr F = tower_make(base, static_cast<unsigned>(sf.m),
                              default_tower_defining(base, static_cast<unsigned>(sf.m)));
      Vec alphas;
      for (const std::string& tok : alpha_toks) alphas.push_back(base->parse(tok));
      if (sf.precode_kind == "design") {
        SubspaceDesign D = design_from_string(base, join_lines(design_lines));
        sf.precode = D;
        sf.rs = rs_make(std::move(F), sf.n, sf.k, std::move(alphas), std::move(D));
      } else if (sf.precode_kind == "hse") {
        HseSet S = hse_from_string(base, join_lines(hse_lines));
        sf.precode = S;
        sf.rs = rs_make(std::move(F), sf.n, sf.k, std::move(alphas), std::move(S));
      } else {
        sf.rs = rs_make(std::move(F), sf.n, sf.k, std::move(alphas));
      }
    } else if (sf.kind == "folded-hermitian") {
      forbid({"q", "n"});
      if (!alpha_toks.empty()) fail(Err::ParseError, "alpha lines do not belong to this kind");
      sf.r = parse_u64(need("r"), "r");
      sf.e = parse_u64(need("e"), "e");
      sf.m = parse_u64(need("m"), "m");
      sf.s = parse_u64(need("s"), "s");
      sf.N = parse_u64(need("N"), "N");
      sf.k = parse_u64(need("k"), "k");
      HermitianTower T = hermitian_make(sf.r, sf.e);
      FieldPtr tower_field = T.field;
      sf.folded = folded_make(std::move(T), sf.m, sf.s, sf.N, sf.k);
      if (sf.precode_kind == "design")
        sf.precode = design_from_string(tower_field, join_lines(design_lines));
      else if (sf.precode_kind == "hse")
        sf.precode = hse_from_string(tower_field, join_lines(hse_lines));
    } else {
      fail(Err::ParseError, "kind must be rs or folded-hermitian");
    }
  } catch (const Error& err) {
    if (err.code() == Err::ParseError) throw;
    fail(Err::ParseError, std::string("spec does not reconstruct: ") + err.what());
  }
  return sf;
}

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"list decoding workbench for evaluation codes"};
  app.require_subcommand(1);

  ConstructOpts co;
  CLI::App* construct = app.add_subcommand("construct", "build a code spec file");
  construct->add_option("--kind", co.kind, "rs or folded-hermitian")->required();
  construct->add_option("--spec", co.spec_path, "output spec path")->required();
  construct->add_option("--seed", co.seed, "creation seed");
  construct->add_option("--q", co.q, "rs: base field size");
  construct->add_option("--r", co.r, "folded: tower parameter");
  construct->add_option("--e", co.e, "folded: tower height");
  construct->add_option("--m", co.m, "folding degree");
  construct->add_option("--n", co.n, "rs: code length");
  construct->add_option("--N", co.N, "folded: column count");
  construct->add_option("--s", co.s, "folded: decoding order");
  construct->add_option("--k", co.k, "message length");
  construct->add_option("--precode", co.precode, "none, design, or hse");
  construct->add_option("--design-dim", co.design_dim, "design member dimension");
  construct->add_option("--design-r", co.design_r, "certificate rank bound");
  construct->add_option("--hse-delta", co.hse_delta, "hashed set block size");
  construct->add_option("--hse-zeta", co.hse_zeta, "hashed set truncation ratio num/den");
  construct->add_option("--hse-lambda", co.hse_lambda, "hash degree (0 picks a default)");
  construct->add_option("--budget", co.budget, "verification enumeration budget");
  construct->add_option("--transcript", co.transcript, "transcript output path");

  FileOpts eo;
  CLI::App* encode = app.add_subcommand("encode", "message file to codeword file");
  encode->add_option("--spec", eo.spec_path, "spec path")->required();
  encode->add_option("--in", eo.in_path, "message file")->required();
  encode->add_option("--out", eo.out_path, "codeword file")->required();
  encode->add_option("--transcript", eo.transcript, "transcript output path");

  FileOpts xo;
  CLI::App* corrupt = app.add_subcommand("corrupt", "inject seeded symbol errors");
  corrupt->add_option("--spec", xo.spec_path, "spec path")->required();
  corrupt->add_option("--in", xo.in_path, "codeword file")->required();
  corrupt->add_option("--out", xo.out_path, "received file")->required();
  corrupt->add_option("--errors", xo.errors, "number of positions to corrupt")->required();
  corrupt->add_option("--seed", xo.seed, "corruption seed");
  corrupt->add_option("--transcript", xo.transcript, "transcript output path");

  DecodeOpts dopts;
  CLI::App* decode = app.add_subcommand("decode", "list-decode a received file");
  decode->add_option("--spec", dopts.spec_path, "spec path")->required();
  decode->add_option("--in", dopts.in_path, "received file")->required();
  decode->add_option("--out", dopts.out_path, "candidate list file")->required();
  decode->add_option("--s", dopts.s, "rs decoding order");
  decode->add_option("--radius", dopts.radius, "error budget");
  decode->add_option("--agreement", dopts.agreement, "agreement threshold");
  decode->add_option("--budget", dopts.budget, "candidate enumeration budget");
  decode->add_option("--transcript", dopts.transcript, "transcript output path");

  VerifyOpts vo;
  CLI::App* verify = app.add_subcommand("verify-design", "re-run a design certificate scan");
  verify->add_option("--spec", vo.spec_path, "spec file or bare design file")->required();
  verify->add_option("--r", vo.r, "rank bound (default: the stored certificate's)");
  verify->add_option("--budget", vo.budget, "subspace enumeration budget");
  verify->add_option("--transcript", vo.transcript, "transcript output path");

  ExperimentOpts po;
  CLI::App* experiment =
      app.add_subcommand("experiment", "seeded encode-corrupt-decode round trips");
  experiment->add_option("--spec", po.spec_path, "spec path")->required();
  experiment->add_option("--seed", po.seed, "master seed; trial i uses fork_stream(seed, i)");
  experiment->add_option("--trials", po.trials, "number of round trips")->required();
  experiment->add_option("--jobs", po.jobs, "worker threads (never changes output bytes)");
  experiment->add_option("--s", po.s, "rs decoding order");
  experiment->add_option("--radius", po.radius, "errors injected per trial");
  experiment->add_option("--agreement", po.agreement, "agreement threshold per trial");
  experiment->add_option("--budget", po.budget, "candidate enumeration budget");
  experiment->add_option("--transcript", po.transcript, "transcript output path");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& pe) {
    return app.exit(pe, out, err);
  }

  try {
    if (construct->parsed()) return do_construct(co);
    if (encode->parsed()) return do_encode(eo);
    if (corrupt->parsed()) return do_corrupt(xo);
    if (decode->parsed()) return do_decode(dopts, out);
    if (verify->parsed()) return do_verify_design(vo, out, err);
    if (experiment->parsed()) return do_experiment(po, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace listdec
