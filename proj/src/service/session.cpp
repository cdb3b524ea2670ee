#include "ahp/service/session.hpp"

#include <cmath>

#include "ahp/io/json_codec.hpp"

namespace ahp::service {

using nlohmann::json;

namespace {

std::size_t pair_count(std::size_t order) { return order * (order - (order > 0 ? 1 : 0)) / 2; }

}  // namespace

std::string_view to_string(NodeStatus status) noexcept {
  switch (status) {
    case NodeStatus::incomplete: return "incomplete";
    case NodeStatus::complete: return "complete";
    case NodeStatus::consistent: return "consistent";
    case NodeStatus::inconsistent: return "inconsistent";
  }
  return "incomplete";
}

ElicitationSession::ElicitationSession(std::string id, io::ProjectDocument project,
                                       RiTable ri_table)
    : id_(std::move(id)),
      project_(std::move(project)),
      ri_table_(std::move(ri_table)),
      hierarchy_([this] {
        try {
          // Builds structure and checks any matrices the project carries.
          return io::build_hierarchy(project_);
        } catch (const Error& e) {
          throw ServiceError(ErrorCode::InvalidProject, e.what(),
                             {{"cause", to_string(e.code())}, {"node", e.subject()}});
        }
      }()) {
  // Expert matrices shipped with the project seed the judgment table.
  for (const auto& [expert, per_node] : project_.experts) {
    for (const auto& [node_id, rows] : per_node) {
      const auto& node = hierarchy_.node(node_id);
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        for (std::size_t j = i + 1; j < node.children.size(); ++j) {
          try {
            judgments_[{expert, node_id, i, j}] = checked_value(rows[i][j]);
          } catch (const Error& e) {
            throw ServiceError(ErrorCode::InvalidProject,
                               "expert '" + expert + "', node '" + node_id + "': " + e.what(),
                               {{"cause", to_string(e.code())}, {"node", node_id},
                                {"expert", expert}});
          }
        }
      }
    }
  }
}

std::set<std::string> ElicitationSession::experts() const {
  std::set<std::string> out;
  for (const auto& [key, _] : judgments_) out.insert(key.expert);
  return out;
}

const Hierarchy::Node& ElicitationSession::internal_node(const std::string& node_id) const {
  const auto& node = hierarchy_.node(node_id);
  if (node.is_leaf())
    throw Error(ErrorCode::UnknownNode,
                "node '" + node_id + "' is an indicator and takes no judgments")
        .with_subject(node_id);
  return node;
}

double ElicitationSession::checked_value(double value) const {
  if (!std::isfinite(value) || value <= 0)
    throw Error(ErrorCode::ScaleOutOfRange, "judgment must be a positive ratio");
  if (!strict_scale()) return value;
  const double snapped = snap_to_saaty_scale(value);
  if (snapped == 0)
    throw Error(ErrorCode::ScaleOutOfRange,
                "judgment must be one of 1/9 ... 1/2, 1, 2 ... 9");
  return snapped;
}

std::optional<JudgmentMatrix> ElicitationSession::expert_matrix(
    const std::string& expert, const Hierarchy::Node& node) const {
  const std::size_t m = node.children.size();
  std::vector<double> entries(m * m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      auto it = judgments_.find({expert, node.id, i, j});
      if (it == judgments_.end()) return std::nullopt;
      entries[i * m + j] = it->second;
      entries[j * m + i] = 1.0 / it->second;
    }
  }
  return validate_matrix(m, entries,
                         strict_scale() ? ScaleMode::strict_scale : ScaleMode::reciprocal_only);
}

NodeProgress ElicitationSession::progress(const std::string& expert,
                                          const std::string& node_id) const {
  const auto& node = internal_node(node_id);
  NodeProgress p;
  p.node_id = node_id;
  p.expert = expert;
  p.order = node.children.size();
  p.pairs_required = pair_count(p.order);
  for (auto it = judgments_.lower_bound({expert, node_id, 0, 0});
       it != judgments_.end() && it->first.expert == expert && it->first.node == node_id; ++it)
    ++p.pairs_present;

  if (p.pairs_required == 0) {
    p.status = NodeStatus::complete;
    p.weights = {1.0};
    return p;
  }
  if (p.pairs_present < p.pairs_required) return p;

  const auto matrix = expert_matrix(expert, node);
  const auto weights = geometric_mean_weights(*matrix);
  p.report = consistency_report(*matrix, weights, ri_table_);
  p.status = p.report->passed ? NodeStatus::consistent : NodeStatus::inconsistent;
  p.weights.assign(weights.weights().begin(), weights.weights().end());
  p.hotspots = inconsistency_hotspots(*matrix, weights, kFeedbackHotspots);
  return p;
}

JudgmentFeedback ElicitationSession::submit(const std::string& expert,
                                            const std::string& node_id, std::size_t i,
                                            std::size_t j, double value,
                                            std::optional<std::uint64_t> expected_revision) {
  if (expert.empty()) throw Error(ErrorCode::BadRequest, "expert id must not be empty");
  if (expected_revision && *expected_revision != revision_)
    throw ServiceError(ErrorCode::StaleRevision,
                       "revision " + std::to_string(*expected_revision) +
                           " is outdated; current revision is " + std::to_string(revision_),
                       {{"current_revision", revision_}});
  const auto& node = internal_node(node_id);
  const std::size_t m = node.children.size();
  if (i >= j || j >= m)
    throw Error(ErrorCode::BadPair, "pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                        ") is not an upper-triangle pair of a " +
                                        std::to_string(m) + "-child node");
  judgments_[{expert, node_id, i, j}] = checked_value(value);
  ++revision_;
  return {progress(expert, node_id), revision_};
}

const CachedEvaluation& ElicitationSession::aggregate_and_evaluate(AggregationMethod method) {
  const auto panel = experts();
  Hierarchy hierarchy = hierarchy_;

  if (panel.empty()) {
    json missing = json::array();
    for (std::size_t idx : hierarchy_.internal_nodes()) {
      const auto& node = hierarchy_.at(idx);
      if (node.children.size() > 1 && !node.matrix) missing.push_back({{"node", node.id}});
    }
    if (!missing.empty())
      throw ServiceError(ErrorCode::IncompleteNode,
                         "no judgments have been entered and the project carries no matrices",
                         {{"missing", missing}});
  } else {
    json missing = json::array();
    for (std::size_t idx : hierarchy_.internal_nodes()) {
      const auto& node = hierarchy_.at(idx);
      for (const auto& expert : panel)
        for (std::size_t i = 0; i < node.children.size(); ++i)
          for (std::size_t j = i + 1; j < node.children.size(); ++j)
            if (!judgments_.contains({expert, node.id, i, j}))
              missing.push_back({{"expert", expert}, {"node", node.id}, {"i", i}, {"j", j}});
    }
    if (!missing.empty())
      throw ServiceError(ErrorCode::IncompleteNode,
                         std::to_string(missing.size()) + " pairwise judgments are missing",
                         {{"missing", missing}});

    const double tol = io::reciprocity_tolerance(project_.tolerance);
    for (std::size_t idx : hierarchy_.internal_nodes()) {
      const auto& node = hierarchy_.at(idx);
      if (node.children.size() == 1) continue;
      std::vector<JudgmentMatrix> opinions;
      for (const auto& expert : panel) opinions.push_back(*expert_matrix(expert, node));
      try {
        hierarchy = attach_matrix(hierarchy, node.id, aggregate_judgments(opinions, method, tol));
      } catch (const Error& e) {
        throw ServiceError(e.code(), "node '" + node.id + "': " + e.what(),
                           {{"node", node.id}, {"method", to_string(method)}});
      }
    }
  }

  cache_ = CachedEvaluation{revision_, method, evaluate(hierarchy, ri_table_)};
  return *cache_;
}

const CachedEvaluation& ElicitationSession::current_evaluation() const {
  if (!cache_ || cache_->revision != revision_)
    throw ServiceError(ErrorCode::NoEvaluation,
                       "no evaluation at the current revision; evaluate first",
                       {{"revision", revision_}});
  return *cache_;
}

CompositeWeightTable ElicitationSession::what_if(const std::string& node_id,
                                                 double new_local_weight) const {
  return sensitivity(current_evaluation().result, node_id, new_local_weight);
}

json ElicitationSession::state() const {
  const auto panel = experts();
  json nodes = json::array();
  for (std::size_t idx : hierarchy_.internal_nodes()) {
    const auto& node = hierarchy_.at(idx);
    json children = json::array();
    for (std::size_t c : node.children) children.push_back(hierarchy_.at(c).id);
    json per_expert = json::object();
    NodeStatus overall = NodeStatus::consistent;
    for (const auto& expert : panel) {
      const auto p = progress(expert, node.id);
      json e = {{"pairs_present", p.pairs_present}, {"status", to_string(p.status)}};
      if (p.report) e["consistency"] = io::to_json(*p.report);
      per_expert[expert] = e;
      if (p.status == NodeStatus::incomplete) overall = NodeStatus::incomplete;
      else if (p.status == NodeStatus::inconsistent && overall != NodeStatus::incomplete)
        overall = NodeStatus::inconsistent;
    }
    const std::size_t required = pair_count(node.children.size());
    json entry = {{"id", node.id},
                  {"label", node.label},
                  {"children", children},
                  {"order", node.children.size()},
                  {"pairs_required", required},
                  {"experts", per_expert}};
    if (required == 0) {
      overall = NodeStatus::complete;
    } else if (panel.empty()) {
      overall = NodeStatus::incomplete;
      if (node.matrix) {
        const auto report = consistency_report(*node.matrix, ri_table_);
        overall = report.passed ? NodeStatus::consistent : NodeStatus::inconsistent;
        entry["consistency"] = io::to_json(report);
      }
    }
    entry["status"] = to_string(overall);
    nodes.push_back(entry);
  }

  json judgments = json::array();
  for (const auto& [key, value] : judgments_)
    judgments.push_back(
        {{"expert", key.expert}, {"node", key.node}, {"i", key.i}, {"j", key.j}, {"value", value}});

  json evaluation = nullptr;
  if (cache_)
    evaluation = {{"revision", cache_->revision},
                  {"method", to_string(cache_->method)},
                  {"current", cache_->revision == revision_}};

  return {{"session_id", id_},
          {"revision", revision_},
          {"tolerance", io::to_string(project_.tolerance)},
          {"scale", strict_scale() ? "saaty" : "positive"},
          {"hierarchy", io::to_json(project_.hierarchy)},
          {"experts", json(panel)},
          {"nodes", nodes},
          {"judgments", judgments},
          {"evaluation", evaluation}};
}

json ElicitationSession::snapshot() const {
  json judgments = json::array();
  for (const auto& [key, value] : judgments_)
    judgments.push_back({key.expert, key.node, key.i, key.j, value});
  json evaluation = nullptr;
  if (cache_) evaluation = {{"revision", cache_->revision}, {"method", to_string(cache_->method)}};
  return {{"id", id_},
          {"revision", revision_},
          {"project", io::to_json(project_)},
          {"judgments", judgments},
          {"evaluation", evaluation}};
}

ElicitationSession ElicitationSession::restore(const json& snapshot, RiTable ri_table) {
  ElicitationSession session(snapshot.at("id").get<std::string>(),
                             io::parse_project(snapshot.at("project").dump()),
                             std::move(ri_table));
  session.judgments_.clear();
  for (const auto& j : snapshot.at("judgments"))
    session.judgments_[{j[0].get<std::string>(), j[1].get<std::string>(),
                        j[2].get<std::size_t>(), j[3].get<std::size_t>()}] = j[4].get<double>();
  session.revision_ = snapshot.at("revision").get<std::uint64_t>();
  const auto& evaluation = snapshot.at("evaluation");
  if (!evaluation.is_null() && evaluation.at("revision").get<std::uint64_t>() == session.revision_)
    session.aggregate_and_evaluate(
        parse_aggregation_method(evaluation.at("method").get<std::string>()));
  return session;
}

}  // namespace ahp::service
