#include "ahp/error.hpp"

namespace ahp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::DiagonalNotOne: return "DiagonalNotOne";
    case ErrorCode::ReciprocityViolation: return "ReciprocityViolation";
    case ErrorCode::ScaleOutOfRange: return "ScaleOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OrderNotInRiTable: return "OrderNotInRiTable";
    case ErrorCode::InvalidRiTable: return "InvalidRiTable";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::OrderTooSmall: return "OrderTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidHierarchy: return "InvalidHierarchy";
    case ErrorCode::DuplicateNodeId: return "DuplicateNodeId";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::LeafNode: return "LeafNode";
    case ErrorCode::RootNode: return "RootNode";
    case ErrorCode::MissingMatrix: return "MissingMatrix";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownNodeReference: return "UnknownNodeReference";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::BadPair: return "BadPair";
    case ErrorCode::StaleRevision: return "StaleRevision";
    case ErrorCode::IncompleteNode: return "IncompleteNode";
    case ErrorCode::NoEvaluation: return "NoEvaluation";
    case ErrorCode::InvalidProject: return "InvalidProject";
    case ErrorCode::BadRequest: return "BadRequest";
  }
  return "Unknown";
}

}  // namespace ahp
