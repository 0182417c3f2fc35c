#include "effres/error.hpp"

namespace effres {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::SameVertex: return "SameVertex";
    case ErrorCode::NoSuchEdge: return "NoSuchEdge";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotAWalk: return "NotAWalk";
    case ErrorCode::NotTerminalFree: return "NotTerminalFree";
    case ErrorCode::Budget: return "Budget";
    case ErrorCode::SharedNonTerminal: return "SharedNonTerminal";
    case ErrorCode::NoBalancedSeparator: return "NoBalancedSeparator";
    case ErrorCode::TooManyTerminals: return "TooManyTerminals";
    case ErrorCode::WeightUnderflow: return "WeightUnderflow";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace effres
