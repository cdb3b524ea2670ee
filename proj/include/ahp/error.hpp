#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ahp {

enum class ErrorCode {
  // Judgment matrix validation.
  NotSquare,
  NonPositiveEntry,
  DiagonalNotOne,
  ReciprocityViolation,
  ScaleOutOfRange,
  // Kernel operations.
  DimensionMismatch,
  OrderNotInRiTable,
  InvalidRiTable,
  EmptyInput,
  OrderMismatch,
  OrderTooSmall,
  InvalidArgument,
  // Hierarchy and composition.
  InvalidHierarchy,
  DuplicateNodeId,
  UnknownNode,
  LeafNode,
  RootNode,
  MissingMatrix,
  WeightOutOfRange,
  // Project documents.
  SyntaxError,
  UnknownNodeReference,
  VersionUnsupported,
  // Elicitation service.
  UnknownSession,
  BadPair,
  StaleRevision,
  IncompleteNode,
  NoEvaluation,
  InvalidProject,
  BadRequest,
};

std::string_view to_string(ErrorCode code) noexcept;

struct TextPosition {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, in bytes
};

/// Every failure in the library surfaces as an ahp::Error. Optional context
/// fields name the node, the offending matrix entry or the source position.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  const std::string& subject() const noexcept { return subject_; }
  const std::optional<std::pair<std::size_t, std::size_t>>& entry() const noexcept {
    return entry_;
  }
  const std::optional<TextPosition>& position() const noexcept { return position_; }

  Error& with_subject(std::string subject) {
    subject_ = std::move(subject);
    return *this;
  }
  Error& with_entry(std::size_t row, std::size_t col) {
    entry_ = std::make_pair(row, col);
    return *this;
  }
  Error& with_position(TextPosition pos) {
    position_ = pos;
    return *this;
  }

 private:
  ErrorCode code_;
  std::string subject_;
  std::optional<std::pair<std::size_t, std::size_t>> entry_;
  std::optional<TextPosition> position_;
};

}  // namespace ahp
