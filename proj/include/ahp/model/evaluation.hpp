#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ahp/core/consistency.hpp"
#include "ahp/core/weights.hpp"
#include "ahp/model/hierarchy.hpp"

namespace ahp {

struct CompositeRow {
  std::string leaf_id;
  std::string label;
  std::string parent_id;
  double local_weight = 0;
  double global_weight = 0;
};

/// Leaf indicators ordered by descending global weight, ties by id.
struct CompositeWeightTable {
  std::vector<CompositeRow> rows;

  const CompositeRow* find(std::string_view leaf_id) const;
  double total() const;
};

/// Local weights and consistency of one internal node.
struct NodeEvaluation {
  std::string node_id;
  WeightVector weights;
  ConsistencyReport report;
  /// False for single-child nodes evaluated without a matrix.
  bool has_matrix = true;
};

struct EvaluationResult {
  Hierarchy hierarchy;
  /// Internal nodes in hierarchy pre-order.
  std::vector<NodeEvaluation> nodes;
  CompositeWeightTable composite;
  bool all_passed = true;

  /// Throws UnknownNode if `node_id` is not an internal node.
  const NodeEvaluation& node(std::string_view node_id) const;
};

/// Local weights and consistency report for every internal node, then the
/// composite ranking. Consistency failures are flagged, not fatal.
/// Single-child nodes without a matrix get the local weight vector [1].
EvaluationResult evaluate(const Hierarchy& hierarchy, const RiTable& ri_table);

/// Global weight of every leaf (product of local weights along the path),
/// sorted descending with ties broken by leaf id.
CompositeWeightTable rank(const EvaluationResult& result);

/// What-if: pin one node's local weight and rescale its siblings
/// proportionally, then recompose. `result` is not modified.
CompositeWeightTable sensitivity(const EvaluationResult& result, std::string_view node_id,
                                 double new_local_weight);

struct Hotspot {
  std::size_t i = 0;  // 0-based, i < j
  std::size_t j = 0;
  /// a_ij * w_j / w_i; 1 for a perfectly consistent judgment.
  double ratio = 1;

  double log_error() const;
};

/// Pairs whose judgment departs most from the ratio implied by `weights`,
/// by |ln ratio| descending (ties by (i, j)).
std::vector<Hotspot> inconsistency_hotspots(const JudgmentMatrix& matrix,
                                            const WeightVector& weights, std::size_t top_k);

}  // namespace ahp
