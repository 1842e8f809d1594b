#include "khcube/errors.hpp"

namespace khcube {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedPD: return "MalformedPD";
    case ErrorCode::InconsistentArcs: return "InconsistentArcs";
    case ErrorCode::UnknownCrossingId: return "UnknownCrossingId";
    case ErrorCode::UnorientedDiagram: return "UnorientedDiagram";
    case ErrorCode::OrientationDependentWrithe: return "OrientationDependentWrithe";
    case ErrorCode::NotAPseudoDiagram: return "NotAPseudoDiagram";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotADifferential: return "NotADifferential";
    case ErrorCode::SignInconsistency: return "SignInconsistency";
    case ErrorCode::NotFiltered: return "NotFiltered";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::OddSelfIntersection: return "OddSelfIntersection";
    case ErrorCode::MultiComponent: return "MultiComponent";
    case ErrorCode::InfeasibleParity: return "InfeasibleParity";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

bool is_internal(ErrorCode code) {
  return code == ErrorCode::SignInconsistency || code == ErrorCode::InternalInvariant;
}

}  // namespace khcube
