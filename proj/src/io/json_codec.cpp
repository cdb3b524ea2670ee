#include "ahp/io/json_codec.hpp"

#include <string>

#include "ahp/error.hpp"

namespace ahp::io {

using nlohmann::json;

json to_json(const ConsistencyReport& r) {
  return {{"order", r.order}, {"mu_max", r.mu_max}, {"ci", r.ci},
          {"ri", r.ri},       {"cr", r.cr},         {"passed", r.passed}};
}

json to_json(const CompositeWeightTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows)
    rows.push_back({{"leaf", row.leaf_id},
                    {"label", row.label},
                    {"parent", row.parent_id},
                    {"local_weight", row.local_weight},
                    {"global_weight", row.global_weight}});
  return rows;
}

json to_json(const EvaluationResult& result) {
  json nodes = json::array();
  for (const auto& ev : result.nodes) {
    const auto w = ev.weights.weights();
    const auto& node = result.hierarchy.node(ev.node_id);
    json children = json::array();
    for (std::size_t c : node.children) children.push_back(result.hierarchy.at(c).id);
    nodes.push_back({{"node", ev.node_id},
                     {"children", children},
                     {"weights", std::vector<double>(w.begin(), w.end())},
                     {"has_matrix", ev.has_matrix},
                     {"consistency", to_json(ev.report)}});
  }
  return {{"nodes", nodes}, {"ranking", to_json(result.composite)},
          {"all_passed", result.all_passed}};
}

json to_json(const std::vector<Hotspot>& hotspots) {
  json out = json::array();
  for (const auto& h : hotspots)
    out.push_back({{"i", h.i}, {"j", h.j}, {"ratio", h.ratio}, {"log_error", h.log_error()}});
  return out;
}

json to_json(const NodeSpec& node) {
  json j = {{"id", node.id}, {"label", node.label}};
  if (!node.children.empty()) {
    j["children"] = json::array();
    for (const auto& c : node.children) j["children"].push_back(to_json(c));
  }
  return j;
}

json to_json(const ProjectDocument& project) {
  json root = json::object();
  root["version"] = project.format_version;
  root["tolerance"] = std::string(to_string(project.tolerance));
  root["hierarchy"] = to_json(project.hierarchy);
  root["matrices"] = json::object();
  for (const auto& [id, rows] : project.matrices) root["matrices"][id] = rows;
  root["experts"] = json::object();
  for (const auto& [expert, per_node] : project.experts) {
    root["experts"][expert] = json::object();
    for (const auto& [id, rows] : per_node) root["experts"][expert][id] = rows;
  }
  root["metadata"] = project.metadata;
  return root;
}

RiTable parse_ri_table(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, std::string("RI table: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("ri"))
    throw Error(ErrorCode::SyntaxError, "RI table must be an object with key 'ri'");
  std::map<std::size_t, double> values;
  const auto& ri = doc["ri"];
  try {
    if (ri.is_array()) {
      for (std::size_t k = 0; k < ri.size(); ++k) values[k + 1] = ri[k].get<double>();
    } else if (ri.is_object()) {
      for (const auto& [order, v] : ri.items()) values[std::stoul(order)] = v.get<double>();
    } else {
      throw Error(ErrorCode::SyntaxError, "'ri' must be an array or an object");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("RI table: ") + e.what());
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::SyntaxError, "RI table orders must be integers");
  }
  values.try_emplace(1, 0.0);
  values.try_emplace(2, 0.0);
  return RiTable(std::move(values));
}

}  // namespace ahp::io
