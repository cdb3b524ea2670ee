#include "ahp/model/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "ahp/error.hpp"

namespace ahp {

namespace {

using LocalWeights = std::vector<std::vector<double>>;  // indexed by node

CompositeWeightTable compose(const Hierarchy& hierarchy, const LocalWeights& local) {
  const auto nodes = hierarchy.nodes();
  std::vector<double> global(nodes.size(), 0.0);
  std::vector<double> own_local(nodes.size(), 1.0);
  global[0] = 1.0;
  // Pre-order guarantees a parent is visited before its children.
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    const auto& children = nodes[idx].children;
    for (std::size_t k = 0; k < children.size(); ++k) {
      own_local[children[k]] = local[idx][k];
      global[children[k]] = global[idx] * local[idx][k];
    }
  }

  CompositeWeightTable table;
  for (std::size_t leaf : hierarchy.leaves()) {
    const auto& n = nodes[leaf];
    table.rows.push_back(
        {n.id, n.label, nodes[*n.parent].id, own_local[leaf], global[leaf]});
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const auto& a, const auto& b) {
    if (a.global_weight != b.global_weight) return a.global_weight > b.global_weight;
    return a.leaf_id < b.leaf_id;
  });
  return table;
}

LocalWeights local_weights_of(const EvaluationResult& result) {
  LocalWeights local(result.hierarchy.nodes().size());
  for (const auto& ev : result.nodes) {
    const auto w = ev.weights.weights();
    local[result.hierarchy.index_of(ev.node_id)].assign(w.begin(), w.end());
  }
  return local;
}

}  // namespace

const CompositeRow* CompositeWeightTable::find(std::string_view leaf_id) const {
  for (const auto& row : rows)
    if (row.leaf_id == leaf_id) return &row;
  return nullptr;
}

double CompositeWeightTable::total() const {
  double sum = 0;
  for (const auto& row : rows) sum += row.global_weight;
  return sum;
}

const NodeEvaluation& EvaluationResult::node(std::string_view node_id) const {
  for (const auto& ev : nodes)
    if (ev.node_id == node_id) return ev;
  throw Error(ErrorCode::UnknownNode,
              "no evaluation for node '" + std::string(node_id) + "'")
      .with_subject(std::string(node_id));
}

EvaluationResult evaluate(const Hierarchy& hierarchy, const RiTable& ri_table) {
  EvaluationResult result{hierarchy, {}, {}, true};
  for (std::size_t idx : hierarchy.internal_nodes()) {
    const auto& node = hierarchy.at(idx);
    std::optional<JudgmentMatrix> matrix = node.matrix;
    bool has_matrix = matrix.has_value();
    if (!matrix) {
      if (node.children.size() != 1)
        throw Error(ErrorCode::MissingMatrix,
                    "node '" + node.id + "' has no judgment matrix")
            .with_subject(node.id);
      matrix = JudgmentMatrix::unit();
    }
    auto weights = geometric_mean_weights(*matrix);
    auto report = consistency_report(*matrix, weights, ri_table);
    result.all_passed = result.all_passed && report.passed;
    result.nodes.push_back({node.id, std::move(weights), report, has_matrix});
  }
  result.composite = rank(result);
  return result;
}

CompositeWeightTable rank(const EvaluationResult& result) {
  return compose(result.hierarchy, local_weights_of(result));
}

CompositeWeightTable sensitivity(const EvaluationResult& result, std::string_view node_id,
                                 double new_local_weight) {
  const auto& hierarchy = result.hierarchy;
  const std::size_t idx = hierarchy.index_of(node_id);
  const auto& node = hierarchy.at(idx);
  if (!node.parent)
    throw Error(ErrorCode::RootNode, "the goal has no local weight to change")
        .with_subject(node.id);
  if (!(new_local_weight > 0 && new_local_weight < 1))
    throw Error(ErrorCode::WeightOutOfRange, "local weight must lie strictly between 0 and 1")
        .with_subject(node.id);

  auto local = local_weights_of(result);
  const auto& siblings = hierarchy.at(*node.parent).children;
  auto& weights = local[*node.parent];
  const std::size_t pos =
      static_cast<std::size_t>(std::find(siblings.begin(), siblings.end(), idx) - siblings.begin());
  const double current = weights[pos];
  if (siblings.size() == 1)
    throw Error(ErrorCode::WeightOutOfRange,
                "node '" + node.id + "' is an only child; its local weight is fixed at 1")
        .with_subject(node.id);

  const double scale = (1.0 - new_local_weight) / (1.0 - current);
  for (std::size_t k = 0; k < weights.size(); ++k)
    weights[k] = k == pos ? new_local_weight : weights[k] * scale;
  return compose(hierarchy, local);
}

double Hotspot::log_error() const { return std::abs(std::log(ratio)); }

std::vector<Hotspot> inconsistency_hotspots(const JudgmentMatrix& matrix,
                                            const WeightVector& weights, std::size_t top_k) {
  const std::size_t m = matrix.order();
  if (weights.size() != m)
    throw Error(ErrorCode::DimensionMismatch, "weight vector does not match matrix order");
  std::vector<Hotspot> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      pairs.push_back({i, j, matrix(i, j) * weights[j] / weights[i]});
  std::stable_sort(pairs.begin(), pairs.end(), [](const Hotspot& a, const Hotspot& b) {
    return a.log_error() > b.log_error();
  });
  if (pairs.size() > top_k) pairs.resize(top_k);
  return pairs;
}

}  // namespace ahp
