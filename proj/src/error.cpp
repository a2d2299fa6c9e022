#include "listdec/error.hpp"

namespace listdec {

const char* err_name(Err e) {
  switch (e) {
    case Err::NotPrime: return "NotPrime";
    case Err::NotMonic: return "NotMonic";
    case Err::NotIrreducible: return "NotIrreducible";
    case Err::DivideByZero: return "DivideByZero";
    case Err::DegreeTooHigh: return "DegreeTooHigh";
    case Err::LengthMismatch: return "LengthMismatch";
    case Err::DimMismatch: return "DimMismatch";
    case Err::NoSolution: return "NoSolution";
    case Err::TooLarge: return "TooLarge";
    case Err::NotDivisible: return "NotDivisible";
    case Err::ZeroMap: return "ZeroMap";
    case Err::BadS: return "BadS";
    case Err::BadDims: return "BadDims";
    case Err::InternalInvariant: return "InternalInvariant";
    case Err::ZeroQ: return "ZeroQ";
    case Err::RadiusTooLarge: return "RadiusTooLarge";
    case Err::EnumerationTooLarge: return "EnumerationTooLarge";
    case Err::ThresholdTooLow: return "ThresholdTooLow";
    case Err::FrontierOverflow: return "FrontierOverflow";
    case Err::MissingFieldSpec: return "MissingFieldSpec";
    case Err::Uncertified: return "Uncertified";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::VerificationFailed: return "VerificationFailed";
    case Err::SingularSystem: return "SingularSystem";
    case Err::PoleAtInfinity: return "PoleAtInfinity";
    case Err::ParseError: return "ParseError";
    case Err::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace listdec
