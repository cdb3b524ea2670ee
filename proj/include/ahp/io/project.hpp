#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ahp/core/aggregation.hpp"
#include "ahp/core/judgment_matrix.hpp"
#include "ahp/error.hpp"
#include "ahp/model/hierarchy.hpp"

namespace ahp::io {

inline constexpr std::string_view kFormatVersion = "1.0";

/// `published` relaxes reciprocity to 5e-4 for 4-decimal transcriptions.
enum class ToleranceMode { exact, published };

std::string_view to_string(ToleranceMode mode) noexcept;
double reciprocity_tolerance(ToleranceMode mode) noexcept;

/// In-memory form of an `*.ahp.json` project. Matrices are kept raw;
/// numeric validation happens when a Hierarchy is built from them.
struct ProjectDocument {
  std::string format_version{kFormatVersion};
  ToleranceMode tolerance = ToleranceMode::exact;
  NodeSpec hierarchy;
  std::map<std::string, MatrixRows> matrices;
  /// expert id -> node id -> matrix, for aggregation.
  std::map<std::string, std::map<std::string, MatrixRows>> experts;
  std::map<std::string, std::string> metadata;

  friend bool operator==(const ProjectDocument&, const ProjectDocument&) = default;
};

/// Structural parse. Errors: SyntaxError (with line/column),
/// UnknownNodeReference, DuplicateNodeId, VersionUnsupported.
ProjectDocument parse_project(std::string_view text);

/// Canonical form: sorted keys, 2-space indent, matrix rows on one line,
/// numbers in plain decimal with up to 10 significant digits, trailing LF.
std::string serialize_project(const ProjectDocument& project);

/// Builds the hierarchy and attaches every matrix (reciprocal_only mode,
/// tolerance from the document). Nodes without a matrix of their own but
/// with expert matrices get the aggregate of those.
Hierarchy build_hierarchy(const ProjectDocument& project,
                          AggregationMethod method = AggregationMethod::geometric_mean,
                          ScaleMode mode = ScaleMode::reciprocal_only);

struct MatrixCheck {
  std::string node_id;
  std::string expert;  // empty for the consensus `matrices` section
  std::size_t order = 0;
  std::optional<Error> error;
};

/// Validates every matrix in the document independently and reports
/// internal nodes that lack one. Never throws for numeric problems.
std::vector<MatrixCheck> check_matrices(const ProjectDocument& project,
                                        ScaleMode mode = ScaleMode::reciprocal_only);

}  // namespace ahp::io
