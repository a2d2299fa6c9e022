#pragma once

#include <stdexcept>
#include <string>

namespace listdec {

// Every failure mode the library reports deliberately.  Anything not listed
// here (out-of-range index, malformed internal state) is a plain logic_error
// and means a bug, not bad input.
enum class Err {
  NotPrime,
  NotMonic,
  NotIrreducible,
  DivideByZero,
  DegreeTooHigh,
  LengthMismatch,
  DimMismatch,
  NoSolution,
  TooLarge,
  NotDivisible,
  ZeroMap,
  BadS,
  BadDims,
  InternalInvariant,
  ZeroQ,
  RadiusTooLarge,
  EnumerationTooLarge,
  ThresholdTooLow,
  FrontierOverflow,
  MissingFieldSpec,
  Uncertified,
  ShapeMismatch,
  VerificationFailed,
  SingularSystem,
  PoleAtInfinity,
  ParseError,
  IoError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace listdec
