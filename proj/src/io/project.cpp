#include "ahp/io/project.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ahp/io/json_codec.hpp"
#include "ahp/io/number_format.hpp"

namespace ahp::io {

using nlohmann::json;

namespace {

TextPosition position_at(std::string_view text, std::size_t offset) {
  TextPosition pos;
  offset = std::min(offset, text.size());
  for (std::size_t k = 0; k < offset; ++k) {
    if (text[k] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

// Position of the `nth` (0-based) occurrence of the JSON string `token`,
// either as an object key (followed by ':') or as a value.
TextPosition locate(std::string_view text, const std::string& token, bool as_key,
                    std::size_t nth = 0) {
  const std::string quoted = json(token).dump();
  std::size_t from = 0;
  std::size_t seen = 0;
  while (true) {
    const auto at = text.find(quoted, from);
    if (at == std::string_view::npos) return {};
    std::size_t k = at + quoted.size();
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    const bool is_key = k < text.size() && text[k] == ':';
    if (is_key == as_key && seen++ == nth) return position_at(text, at);
    from = at + 1;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ProjectDocument run() {
    if (text_.find_first_not_of(" \t\r\n") == std::string_view::npos)
      throw Error(ErrorCode::SyntaxError, "project file is empty").with_position({1, 1});
    json root;
    try {
      root = json::parse(text_.begin(), text_.end());
    } catch (const json::parse_error& e) {
      const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
      const auto pos = position_at(text_, offset);
      std::ostringstream os;
      os << "invalid JSON at line " << pos.line << ", column " << pos.column;
      throw Error(ErrorCode::SyntaxError, os.str()).with_position(pos);
    }
    if (!root.is_object()) fail("project must be a JSON object", {1, 1});

    for (const auto& [key, _] : root.items()) {
      static const std::set<std::string> kKeys = {"version",  "hierarchy", "matrices",
                                                  "experts",  "metadata",  "tolerance"};
      if (!kKeys.contains(key)) fail("unknown top-level key '" + key + "'", key_pos(key));
    }

    ProjectDocument doc;
    if (!root.contains("version")) fail("missing 'version'", {1, 1});
    if (!root["version"].is_string()) fail("'version' must be a string", key_pos("version"));
    doc.format_version = root["version"].get<std::string>();
    if (doc.format_version != kFormatVersion)
      throw Error(ErrorCode::VersionUnsupported,
                  "unsupported format version '" + doc.format_version + "'")
          .with_position(key_pos("version"));

    if (root.contains("tolerance")) {
      const auto& t = root["tolerance"];
      if (t == "exact") {
        doc.tolerance = ToleranceMode::exact;
      } else if (t == "published") {
        doc.tolerance = ToleranceMode::published;
      } else {
        fail("'tolerance' must be \"exact\" or \"published\"", key_pos("tolerance"));
      }
    }

    if (!root.contains("hierarchy")) fail("missing 'hierarchy'", {1, 1});
    doc.hierarchy = parse_node(root["hierarchy"], "hierarchy");

    if (root.contains("matrices")) {
      const auto& ms = root["matrices"];
      if (!ms.is_object()) fail("'matrices' must be an object", key_pos("matrices"));
      for (const auto& [node, value] : ms.items()) {
        check_reference(node);
        doc.matrices[node] = parse_matrix(value, node);
      }
    }
    if (root.contains("experts")) {
      const auto& ex = root["experts"];
      if (!ex.is_object()) fail("'experts' must be an object", key_pos("experts"));
      for (const auto& [expert, per_node] : ex.items()) {
        if (!per_node.is_object())
          fail("expert '" + expert + "' must map node ids to matrices", key_pos(expert));
        auto& dst = doc.experts[expert];
        for (const auto& [node, value] : per_node.items()) {
          check_reference(node);
          dst[node] = parse_matrix(value, node);
        }
      }
    }
    if (root.contains("metadata")) {
      const auto& md = root["metadata"];
      if (!md.is_object()) fail("'metadata' must be an object", key_pos("metadata"));
      for (const auto& [k, v] : md.items()) {
        if (!v.is_string()) fail("metadata value '" + k + "' must be a string", key_pos(k));
        doc.metadata[k] = v.get<std::string>();
      }
    }
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& message, TextPosition pos) const {
    std::ostringstream os;
    os << message << " (line " << pos.line << ", column " << pos.column << ")";
    throw Error(ErrorCode::SyntaxError, os.str()).with_position(pos);
  }

  TextPosition key_pos(const std::string& key) const { return locate(text_, key, true); }

  NodeSpec parse_node(const json& j, const std::string& where) {
    if (!j.is_object()) fail("'" + where + "' must be a node object", key_pos(where));
    for (const auto& [key, _] : j.items())
      if (key != "id" && key != "label" && key != "children")
        fail("unknown node key '" + key + "'", key_pos(key));
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty())
      fail("node in '" + where + "' needs a non-empty string 'id'", key_pos(where));

    NodeSpec node;
    node.id = j["id"].get<std::string>();
    const std::size_t occurrence = id_counts_[node.id]++;
    if (occurrence > 0)
      throw Error(ErrorCode::DuplicateNodeId, "duplicate node id '" + node.id + "'")
          .with_subject(node.id)
          .with_position(locate(text_, node.id, false, occurrence));
    if (j.contains("label")) {
      if (!j["label"].is_string()) fail("label of '" + node.id + "' must be a string",
                                        locate(text_, node.id, false));
      node.label = j["label"].get<std::string>();
    }
    if (j.contains("children")) {
      if (!j["children"].is_array())
        fail("children of '" + node.id + "' must be an array", locate(text_, node.id, false));
      for (const auto& child : j["children"]) node.children.push_back(parse_node(child, node.id));
    }
    return node;
  }

  MatrixRows parse_matrix(const json& j, const std::string& node) {
    const auto bad = [&] {
      fail("matrix for '" + node + "' must be an array of numeric rows", key_pos(node));
    };
    if (!j.is_array()) bad();
    MatrixRows rows;
    for (const auto& r : j) {
      if (!r.is_array()) bad();
      std::vector<double> row;
      for (const auto& v : r) {
        if (!v.is_number()) bad();
        row.push_back(v.get<double>());
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

  void check_reference(const std::string& node) {
    if (!id_counts_.contains(node))
      throw Error(ErrorCode::UnknownNodeReference,
                  "matrix refers to unknown node '" + node + "'")
          .with_subject(node)
          .with_position(key_pos(node));
  }

  std::string_view text_;
  std::map<std::string, std::size_t> id_counts_;
};

// Canonical JSON writer: nlohmann objects are key-sorted already; numbers go
// through format_decimal so the output never uses exponents.
void write(std::ostream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << inner << json(key).dump() << ": ";
        write(os, value, indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_number(); });
      if (flat) {
        os << "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) os << ", ";
          write(os, j[k], indent + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ",\n";
        os << inner;
        write(os, j[k], indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float:
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
      os << format_decimal(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

Error with_node(const Error& e, const std::string& node) {
  Error out(e.code(), "node '" + node + "': " + e.what());
  out.with_subject(node);
  if (e.entry()) out.with_entry(e.entry()->first, e.entry()->second);
  return out;
}

}  // namespace

std::string_view to_string(ToleranceMode mode) noexcept {
  return mode == ToleranceMode::published ? "published" : "exact";
}

double reciprocity_tolerance(ToleranceMode mode) noexcept {
  return mode == ToleranceMode::published ? kPublishedReciprocityTolerance
                                          : kExactReciprocityTolerance;
}

ProjectDocument parse_project(std::string_view text) { return Parser(text).run(); }

std::string serialize_project(const ProjectDocument& project) {
  std::ostringstream os;
  write(os, to_json(project), 0);
  os << "\n";
  return os.str();
}

Hierarchy build_hierarchy(const ProjectDocument& project, AggregationMethod method,
                          ScaleMode mode) {
  auto hierarchy = Hierarchy::build(project.hierarchy);
  const double tol = reciprocity_tolerance(project.tolerance);

  auto validated = [&](const std::string& node, const MatrixRows& rows) {
    try {
      return validate_matrix(rows, mode, tol);
    } catch (const Error& e) {
      throw with_node(e, node);
    }
  };

  for (std::size_t idx : hierarchy.internal_nodes()) {
    const std::string id = hierarchy.at(idx).id;
    if (auto it = project.matrices.find(id); it != project.matrices.end()) {
      hierarchy = attach_matrix(hierarchy, id, validated(id, it->second));
      continue;
    }
    std::vector<JudgmentMatrix> opinions;
    for (const auto& [expert, per_node] : project.experts)
      if (auto it = per_node.find(id); it != per_node.end())
        opinions.push_back(validated(id, it->second));
    if (opinions.empty()) continue;
    try {
      hierarchy = attach_matrix(hierarchy, id, aggregate_judgments(opinions, method, tol));
    } catch (const Error& e) {
      throw with_node(e, id);
    }
  }
  for (const auto& [id, _] : project.matrices)
    if (hierarchy.node(id).is_leaf())
      throw Error(ErrorCode::LeafNode, "node '" + id + "' is an indicator and takes no matrix")
          .with_subject(id);
  return hierarchy;
}

std::vector<MatrixCheck> check_matrices(const ProjectDocument& project, ScaleMode mode) {
  const auto hierarchy = Hierarchy::build(project.hierarchy);
  const double tol = reciprocity_tolerance(project.tolerance);
  std::vector<MatrixCheck> out;

  auto check = [&](const std::string& node, const std::string& expert, const MatrixRows& rows) {
    MatrixCheck c{node, expert, rows.size(), std::nullopt};
    try {
      attach_matrix(hierarchy, node, validate_matrix(rows, mode, tol));
    } catch (Error& e) {
      e.with_subject(node);
      c.error = e;
    }
    out.push_back(std::move(c));
  };

  for (const auto& [node, rows] : project.matrices) check(node, "", rows);
  for (const auto& [expert, per_node] : project.experts)
    for (const auto& [node, rows] : per_node) check(node, expert, rows);

  for (std::size_t idx : hierarchy.internal_nodes()) {
    const auto& n = hierarchy.at(idx);
    if (n.children.size() < 2 || project.matrices.contains(n.id)) continue;
    bool from_experts = false;
    for (const auto& [_, per_node] : project.experts) from_experts |= per_node.contains(n.id);
    if (!from_experts)
      out.push_back({n.id, "", 0,
                     Error(ErrorCode::MissingMatrix, "node '" + n.id + "' has no judgment matrix")
                         .with_subject(n.id)});
  }
  return out;
}

}  // namespace ahp::io
