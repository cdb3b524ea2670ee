#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ahp/core/judgment_matrix.hpp"

namespace ahp {

/// Plain tree description used to build a Hierarchy and to serialize one.
struct NodeSpec {
  std::string id;
  std::string label;
  std::vector<NodeSpec> children;

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

/// Goal -> criteria -> ... -> indicators. Nodes are stored in pre-order;
/// child order matches the row/column order of the node's matrix.
class Hierarchy {
 public:
  struct Node {
    std::string id;
    std::string label;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
    std::size_t depth = 0;
    std::optional<JudgmentMatrix> matrix;

    bool is_leaf() const noexcept { return children.empty(); }
  };

  /// Requires at least two levels and unique ids.
  static Hierarchy build(const NodeSpec& root);

  std::span<const Node> nodes() const noexcept { return nodes_; }
  const Node& at(std::size_t index) const { return nodes_.at(index); }
  const Node& root() const noexcept { return nodes_.front(); }

  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws UnknownNode.
  std::size_t index_of(std::string_view id) const;
  const Node& node(std::string_view id) const { return nodes_[index_of(id)]; }

  std::vector<std::size_t> leaves() const;
  std::vector<std::size_t> internal_nodes() const;

  NodeSpec spec() const;

 private:
  friend Hierarchy attach_matrix(const Hierarchy&, std::string_view, JudgmentMatrix);

  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Value-semantics update. Errors: UnknownNode, LeafNode, OrderMismatch.
Hierarchy attach_matrix(const Hierarchy& hierarchy, std::string_view node_id,
                        JudgmentMatrix matrix);

}  // namespace ahp
