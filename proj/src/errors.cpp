#include "flatcusp/errors.hpp"

namespace flatcusp {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::ZeroEntry: return "ZeroEntry";
    case ErrorKind::NonPositiveScalar: return "NonPositiveScalar";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::WrongSignature: return "WrongSignature";
    case ErrorKind::NotIsotropic: return "NotIsotropic";
    case ErrorKind::WrongDimension: return "WrongDimension";
    case ErrorKind::NotIsometry: return "NotIsometry";
    case ErrorKind::InvalidTarget: return "InvalidTarget";
    case ErrorKind::ClosureBudgetExceeded: return "ClosureBudgetExceeded";
    case ErrorKind::NotOddPrime: return "NotOddPrime";
    case ErrorKind::GeneratorCountMismatch: return "GeneratorCountMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::InvalidRepresentation: return "InvalidRepresentation";
    case ErrorKind::UnknownRecord: return "UnknownRecord";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::EmptyList: return "EmptyList";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace flatcusp
