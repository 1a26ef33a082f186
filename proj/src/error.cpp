#include "bsrep/error.hpp"

namespace bsrep {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::FactorizationBudgetExceeded: return "FactorizationBudgetExceeded";
    case ErrorKind::DivisorBudgetExceeded: return "DivisorBudgetExceeded";
    case ErrorKind::ZeroParameter: return "ZeroParameter";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::IncompatibleOrders: return "IncompatibleOrders";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::IncompatibleSpecs: return "IncompatibleSpecs";
    case ErrorKind::WitnessVerificationFailed: return "WitnessVerificationFailed";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace bsrep
