#include "ahp/model/hierarchy.hpp"

#include "ahp/error.hpp"

namespace ahp {

namespace {

void flatten(const NodeSpec& spec, std::optional<std::size_t> parent, std::size_t depth,
             std::vector<Hierarchy::Node>& out) {
  if (spec.id.empty()) throw Error(ErrorCode::InvalidHierarchy, "node id must not be empty");
  const std::size_t self = out.size();
  out.push_back({spec.id, spec.label, parent, {}, depth, std::nullopt});
  for (const auto& child : spec.children) {
    out[self].children.push_back(out.size());
    flatten(child, self, depth + 1, out);
  }
}

}  // namespace

Hierarchy Hierarchy::build(const NodeSpec& root) {
  if (root.children.empty())
    throw Error(ErrorCode::InvalidHierarchy,
                "hierarchy needs a goal with at least one child").with_subject(root.id);
  Hierarchy h;
  flatten(root, std::nullopt, 0, h.nodes_);
  for (std::size_t i = 0; i < h.nodes_.size(); ++i) {
    auto [it, inserted] = h.index_.emplace(h.nodes_[i].id, i);
    if (!inserted)
      throw Error(ErrorCode::DuplicateNodeId, "duplicate node id '" + h.nodes_[i].id + "'")
          .with_subject(h.nodes_[i].id);
  }
  return h;
}

std::optional<std::size_t> Hierarchy::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Hierarchy::index_of(std::string_view id) const {
  auto idx = find(id);
  if (!idx)
    throw Error(ErrorCode::UnknownNode, "unknown node '" + std::string(id) + "'")
        .with_subject(std::string(id));
  return *idx;
}

std::vector<std::size_t> Hierarchy::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].is_leaf()) out.push_back(i);
  return out;
}

std::vector<std::size_t> Hierarchy::internal_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (!nodes_[i].is_leaf()) out.push_back(i);
  return out;
}

NodeSpec Hierarchy::spec() const {
  auto build_spec = [this](auto&& self, std::size_t idx) -> NodeSpec {
    const Node& n = nodes_[idx];
    NodeSpec s{n.id, n.label, {}};
    for (std::size_t c : n.children) s.children.push_back(self(self, c));
    return s;
  };
  return build_spec(build_spec, 0);
}

Hierarchy attach_matrix(const Hierarchy& hierarchy, std::string_view node_id,
                        JudgmentMatrix matrix) {
  const std::size_t idx = hierarchy.index_of(node_id);
  const auto& node = hierarchy.nodes_[idx];
  if (node.is_leaf())
    throw Error(ErrorCode::LeafNode,
                "node '" + node.id + "' is an indicator and takes no judgment matrix")
        .with_subject(node.id);
  if (matrix.order() != node.children.size())
    throw Error(ErrorCode::OrderMismatch, "node '" + node.id + "' has " +
                                              std::to_string(node.children.size()) +
                                              " children but the matrix has order " +
                                              std::to_string(matrix.order()))
        .with_subject(node.id);
  Hierarchy out = hierarchy;
  out.nodes_[idx].matrix = std::move(matrix);
  return out;
}

}  // namespace ahp
