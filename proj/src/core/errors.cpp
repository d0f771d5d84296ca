#include "sigmapi/errors.hpp"

namespace sigmapi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateEquation: return "DuplicateEquation";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::ContradictoryDomain: return "ContradictoryDomain";
    case ErrorCode::InvalidProjection: return "InvalidProjection";
    case ErrorCode::EmptySystem: return "EmptySystem";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::ZeroComponent: return "ZeroComponent";
    case ErrorCode::DomainExit: return "DomainExit";
    case ErrorCode::OrderBudget: return "OrderBudget";
    case ErrorCode::NotStationary: return "NotStationary";
    case ErrorCode::NotQuadratic: return "NotQuadratic";
    case ErrorCode::OutOfRadius: return "OutOfRadius";
    case ErrorCode::StepLimit: return "StepLimit";
    case ErrorCode::Divergence: return "Divergence";
    case ErrorCode::Blowup: return "Blowup";
    case ErrorCode::MixedCenters: return "MixedCenters";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace sigmapi
