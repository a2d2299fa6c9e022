#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "listdec/hermitian.hpp"
#include "listdec/rs.hpp"

namespace listdec {

// One code description as it travels through spec files: the raw parameters
// plus the objects rebuilt from them.  `kind` selects which optional is
// engaged; `precode` always mirrors the restriction (for the rs kind the
// same object also sits inside rs->precode, installed by rs_make).
//
// The text form is line-oriented key=value.  Keys in canonical order:
//   kind, seed, the kind's parameters (rs: q m n k, then one alpha= line
//   per evaluation point; folded-hermitian: r e m s N k), precode, then the
//   embedded precode serialization one line at a time under design= or
//   hse= keys.  spec_to_string always writes this order, so parsing a file
//   the tool wrote and re-serializing it reproduces the bytes exactly.
struct CodeSpecFile {
  std::string kind;  // "rs" | "folded-hermitian"
  uint64_t seed = 0;

  uint64_t q = 0;  // rs: base field size (prime power)
  uint64_t r = 0;  // folded-hermitian: tower parameter, q = r^2
  size_t e = 0;    // folded-hermitian: tower height
  size_t m = 0, n = 0, k = 0, s = 0, N = 0;

  std::string precode_kind = "none";  // none | design | hse

  std::optional<RsCodeSpec> rs;
  std::optional<FoldedSpec> folded;
  FoldedPrecode precode;
};

std::string spec_to_string(const CodeSpecFile& spec);

// Rebuilds the in-memory objects from the text.  Any reconstruction failure
// (unknown key, bad number, parameters the constructors reject, an embedded
// precode that does not parse) is reported as ParseError.
CodeSpecFile spec_from_string(const std::string& text);

// The field whose elements appear in message and codeword files: the
// evaluation field for the rs kind, the tower field for folded codes.
const FieldPtr& spec_symbol_field(const CodeSpecFile& spec);

// Entry point of the `listdec` tool, callable in process so tests can drive
// the exact command surface.  `args` is argv without the program name.
//
// Commands: construct, encode, corrupt, decode, verify-design, experiment.
// Exit codes: 0 success, 2 unreadable or unparseable files, 3 exhausted
// enumeration or verification budget, 4 radius/agreement outside the
// guaranteed window, 1 any other rejected input.  All randomness comes from
// --seed through the splitmix64 contract; experiment trials draw from
// fork_stream(seed, trial), so --jobs changes scheduling but never bytes.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace listdec
