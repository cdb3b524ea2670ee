#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ahp/core/aggregation.hpp"
#include "ahp/core/consistency.hpp"
#include "ahp/error.hpp"
#include "ahp/io/project.hpp"
#include "ahp/model/evaluation.hpp"

namespace ahp::service {

/// ahp::Error plus a structured payload for the HTTP `details` field.
class ServiceError : public Error {
 public:
  ServiceError(ErrorCode code, const std::string& message, nlohmann::json details)
      : Error(code, message), details_(std::move(details)) {}
  const nlohmann::json& details() const noexcept { return details_; }

 private:
  nlohmann::json details_;
};

enum class NodeStatus { incomplete, complete, consistent, inconsistent };
std::string_view to_string(NodeStatus status) noexcept;

/// One upper-triangle judgment; reciprocals and the diagonal are implied.
struct JudgmentKey {
  std::string expert;
  std::string node;
  std::size_t i = 0;
  std::size_t j = 0;

  auto operator<=>(const JudgmentKey&) const = default;
};

struct NodeProgress {
  std::string node_id;
  std::string expert;
  std::size_t order = 0;
  std::size_t pairs_present = 0;
  std::size_t pairs_required = 0;
  NodeStatus status = NodeStatus::incomplete;
  /// Only for complete nodes; partial matrices never get a CR.
  std::optional<ConsistencyReport> report;
  std::vector<double> weights;
  std::vector<Hotspot> hotspots;
};

struct JudgmentFeedback {
  NodeProgress progress;
  std::uint64_t revision = 0;
};

struct CachedEvaluation {
  std::uint64_t revision = 0;
  AggregationMethod method = AggregationMethod::geometric_mean;
  EvaluationResult result;
};

inline constexpr std::size_t kFeedbackHotspots = 3;

/// Pairwise elicitation over one project. A plain value: the manager
/// serializes access and commits copies.
class ElicitationSession {
 public:
  /// Throws ServiceError(InvalidProject) if the project does not build.
  ElicitationSession(std::string id, io::ProjectDocument project, RiTable ri_table);

  const std::string& id() const noexcept { return id_; }
  std::uint64_t revision() const noexcept { return revision_; }
  const io::ProjectDocument& project() const noexcept { return project_; }
  const Hierarchy& hierarchy() const noexcept { return hierarchy_; }
  const std::map<JudgmentKey, double>& judgments() const noexcept { return judgments_; }
  std::set<std::string> experts() const;

  /// Live judgments must be Saaty-scale values unless the project declares
  /// `published` tolerance, in which case any positive ratio is accepted.
  bool strict_scale() const noexcept {
    return project_.tolerance != io::ToleranceMode::published;
  }

  NodeProgress progress(const std::string& expert, const std::string& node_id) const;

  /// Stores or overwrites a judgment and bumps the revision.
  JudgmentFeedback submit(const std::string& expert, const std::string& node_id, std::size_t i,
                          std::size_t j, double value,
                          std::optional<std::uint64_t> expected_revision = std::nullopt);

  /// Aggregates every participating expert per node and evaluates. Without
  /// any elicited judgments the project's own matrices are used.
  const CachedEvaluation& aggregate_and_evaluate(AggregationMethod method);

  /// The cached evaluation if it was computed at the current revision.
  const CachedEvaluation& current_evaluation() const;
  const std::optional<CachedEvaluation>& cached_evaluation() const noexcept { return cache_; }

  CompositeWeightTable what_if(const std::string& node_id, double new_local_weight) const;

  nlohmann::json state() const;

  nlohmann::json snapshot() const;
  static ElicitationSession restore(const nlohmann::json& snapshot, RiTable ri_table);

 private:
  const Hierarchy::Node& internal_node(const std::string& node_id) const;
  std::optional<JudgmentMatrix> expert_matrix(const std::string& expert,
                                              const Hierarchy::Node& node) const;
  double checked_value(double value) const;

  std::string id_;
  io::ProjectDocument project_;
  RiTable ri_table_;
  Hierarchy hierarchy_;
  std::map<JudgmentKey, double> judgments_;
  std::uint64_t revision_ = 0;
  std::optional<CachedEvaluation> cache_;
};

}  // namespace ahp::service
