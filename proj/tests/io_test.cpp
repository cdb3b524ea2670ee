#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ahp/error.hpp"
#include "ahp/io/json_codec.hpp"
#include "ahp/io/number_format.hpp"
#include "ahp/io/project.hpp"
#include "ahp/io/report.hpp"
#include "ahp/model/evaluation.hpp"
#include "oracles.hpp"

using namespace ahp;

namespace {

const std::string& fixture_text() {
  static const std::string text = oracle::read_file(oracle::fixture_path());
  return text;
}

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an ahp::Error");
  return Error(ErrorCode::BadRequest, "");
}

std::string replace_once(std::string text, std::string_view from, std::string_view to) {
  auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

std::size_t count_nodes(const NodeSpec& n, int depth, int want) {
  std::size_t c = depth == want ? 1 : 0;
  for (const auto& k : n.children) c += count_nodes(k, depth + 1, want);
  return c;
}

// Minimal RFC 4180 reader: records of fields, quotes honoured.
std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (quoted) {
      if (c == '"' && k + 1 < text.size() && text[k + 1] == '"') {
        field += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      if (any || !field.empty()) record.push_back(std::move(field));
      records.push_back(std::move(record));
      record.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

double ten_digits(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return std::stod(buf);
}

std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {"a",  "Z",   " ",  "\"q\"", "\\", "é",
                                                  "效率", "\t", ",",  "x/y",   "\n", "7"};
  std::uniform_int_distribution<std::size_t> len(0, 6), pick(0, pieces.size() - 1);
  std::string s;
  for (std::size_t n = len(rng); n > 0; --n) s += pieces[pick(rng)];
  return s;
}

MatrixRows random_rows(std::size_t m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> e(-4, 4);
  MatrixRows a(m, std::vector<double>(m, 1.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      a[i][j] = ten_digits(std::exp(e(rng)));
      a[j][i] = ten_digits(1 / a[i][j]);
    }
  return a;
}

void grow(NodeSpec& node, int depth, int& next, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> branching(depth == 1 ? 1 : 0, 9);
  const int kids = depth >= 4 ? 0 : branching(rng);
  for (int k = 0; k < kids; ++k) {
    NodeSpec child{"n" + std::to_string(next++), random_text(rng), {}};
    grow(child, depth + 1, next, rng);
    node.children.push_back(std::move(child));
  }
}

void internal_ids(const NodeSpec& n, std::vector<const NodeSpec*>& out) {
  if (n.children.empty()) return;
  out.push_back(&n);
  for (const auto& c : n.children) internal_ids(c, out);
}

io::ProjectDocument random_project(std::mt19937_64& rng) {
  io::ProjectDocument p;
  p.tolerance = rng() % 2 ? io::ToleranceMode::exact : io::ToleranceMode::published;
  int next = 0;
  p.hierarchy = {"goal", random_text(rng), {}};
  grow(p.hierarchy, 1, next, rng);
  std::vector<const NodeSpec*> internal;
  internal_ids(p.hierarchy, internal);
  for (const auto* n : internal)
    if (rng() % 3) p.matrices[n->id] = random_rows(n->children.size(), rng);
  const int experts = static_cast<int>(rng() % 3);
  for (int e = 0; e < experts; ++e) {
    auto& judged = p.experts[random_text(rng) + std::to_string(e)];
    for (const auto* n : internal)
      if (rng() % 2) judged[n->id] = random_rows(n->children.size(), rng);
  }
  for (int k = static_cast<int>(rng() % 4); k > 0; --k) p.metadata[random_text(rng)] = random_text(rng);
  return p;
}

}  // namespace

TEST_SUITE("parse_project") {
  TEST_CASE("fixture shape") {
    auto doc = io::parse_project(fixture_text());
    CHECK(doc.hierarchy.id == "A");
    CHECK(count_nodes(doc.hierarchy, 0, 0) == 1);
    CHECK(count_nodes(doc.hierarchy, 0, 1) == 6);
    CHECK(count_nodes(doc.hierarchy, 0, 2) == 23);
    CHECK(doc.tolerance == io::ToleranceMode::published);
    CHECK(doc.format_version == "1.0");
    CHECK(doc.matrices.size() == 6);
    CHECK(doc.matrices.at("A")[0][1] == 1.3803);
    CHECK(doc.experts.empty());
  }

  TEST_CASE("empty input") {
    auto e = error_of([] { io::parse_project(""); });
    CHECK(e.code() == ErrorCode::SyntaxError);
    REQUIRE(e.position());
    CHECK(e.position()->line == 1);
  }

  TEST_CASE("syntax error position") {
    auto text = replace_once(fixture_text(), "\"label\": \"Plan Execution\"", "\"label\" \"Plan Execution\"");
    auto e = error_of([&] { io::parse_project(text); });
    CHECK(e.code() == ErrorCode::SyntaxError);
    REQUIRE(e.position());
    const auto line = static_cast<std::size_t>(std::count(
        text.begin(), text.begin() + static_cast<long>(text.find("\"label\" \"Plan")), '\n')) + 1;
    CHECK(e.position()->line == line);
    CHECK(e.position()->column >= 1);
  }

  TEST_CASE("matrix for an unknown node") {
    auto text = replace_once(fixture_text(), "\"B2\": [", "\"B9\": [");
    auto e = error_of([&] { io::parse_project(text); });
    CHECK(e.code() == ErrorCode::UnknownNodeReference);
    CHECK(e.subject() == "B9");
    REQUIRE(e.position());
    CHECK(e.position()->line > 137);
  }

  TEST_CASE("duplicate node ids") {
    auto text = replace_once(fixture_text(), "\"id\": \"C22\"", "\"id\": \"C21\"");
    auto e = error_of([&] { io::parse_project(text); });
    CHECK(e.code() == ErrorCode::DuplicateNodeId);
    CHECK(e.subject() == "C21");
    REQUIRE(e.position());
    CHECK(e.position()->line == 22);
  }

  TEST_CASE("version checks") {
    CHECK(error_of([] { io::parse_project(replace_once(fixture_text(), "\"1.0\"", "\"2.0\"")); })
              .code() == ErrorCode::VersionUnsupported);
    CHECK(error_of([] { io::parse_project(replace_once(fixture_text(), "\"1.0\"", "1")); }).code() ==
          ErrorCode::SyntaxError);
  }

  TEST_CASE("structural problems are syntax errors with positions") {
    for (auto [from, to] : std::vector<std::pair<std::string, std::string>>{
             {"\"tolerance\": \"published\"", "\"tolerance\": \"loose\""},
             {"\"metadata\": {", "\"extra\": 1, \"metadata\": {"},
             {"[1, 1.1153, 1.7652]", "[1, \"x\", 1.7652]"},
             {"\"id\": \"C11\"", "\"id\": 11"}}) {
      auto e = error_of([&] { io::parse_project(replace_once(fixture_text(), from, to)); });
      CHECK_MESSAGE(e.code() == ErrorCode::SyntaxError, to);
      REQUIRE(e.position());
      CHECK(e.position()->line >= 1);
    }
  }

  TEST_CASE("minimal document defaults") {
    auto doc = io::parse_project(
        R"({"version": "1.0", "hierarchy": {"id": "G", "children": [{"id": "a"}]}})");
    CHECK(doc.tolerance == io::ToleranceMode::exact);
    CHECK(doc.matrices.empty());
    CHECK(doc.hierarchy.children[0].label.empty());
  }
}

TEST_SUITE("serialize_project") {
  TEST_CASE("fixture is stored in canonical form") {
    auto once = io::serialize_project(io::parse_project(fixture_text()));
    auto twice = io::serialize_project(io::parse_project(once));
    CHECK(once == twice);
    CHECK(once == fixture_text());
    CHECK(once.find("1.3803") != std::string::npos);
    CHECK(once.back() == '\n');
  }

  TEST_CASE("absent matrices serialize as an empty section") {
    io::ProjectDocument p;
    p.hierarchy = {"G", "", {{"a", "", {}}}};
    auto text = io::serialize_project(p);
    CHECK(text.find("\"matrices\": {}") != std::string::npos);
    CHECK(io::parse_project(text) == p);
  }

  TEST_CASE("round trip on a random corpus") {
    std::mt19937_64 rng(77);
    for (int k = 0; k < 300; ++k) {
      auto p = random_project(rng);
      auto text = io::serialize_project(p);
      auto back = io::parse_project(text);
      CHECK(back == p);
      CHECK(io::serialize_project(back) == text);
    }
  }

  TEST_CASE("no scientific notation") {
    io::ProjectDocument p;
    p.hierarchy = {"G", "", {{"a", "", {}}, {"b", "", {}}}};
    p.matrices["G"] = {{1, 1.234567891e-7}, {8100000000000, 1}};
    auto text = io::serialize_project(p);
    CHECK(text.find("0.0000001234567891") != std::string::npos);
    CHECK(text.find("8100000000000") != std::string::npos);
    CHECK(text.find("e-") == std::string::npos);
    CHECK(io::parse_project(text) == p);
  }
}

TEST_SUITE("number_format") {
  TEST_CASE("format_decimal") {
    CHECK(io::format_decimal(1.3803) == "1.3803");
    CHECK(io::format_decimal(0) == "0");
    CHECK(io::format_decimal(-0.0) == "0");
    CHECK(io::format_decimal(1) == "1");
    CHECK(io::format_decimal(1.0 / 3) == "0.3333333333");
    CHECK(io::format_decimal(-2.5e-5) == "-0.000025");
    CHECK(io::format_decimal(123456789012.0) == "123456789000");
    CHECK(io::format_decimal(0.06603) == "0.06603");
  }
  TEST_CASE("format_fixed") {
    CHECK(io::format_fixed(0.245, 4) == "0.2450");
    CHECK(io::format_fixed(-0.00001, 4) == "0.0000");
    CHECK(io::format_fixed(2, 0) == "2");
  }
}

TEST_SUITE("export_report") {
  const EvaluationResult& fixture_result() {
    static const auto r = evaluate(io::build_hierarchy(io::parse_project(fixture_text())), RiTable::standard());
    return r;
  }

  TEST_CASE("csv regions and column counts") {
    auto csv = io::export_report(fixture_result(), io::ReportFormat::csv);
    CHECK(csv.find("\r") == std::string::npos);
    CHECK(csv.back() == '\n');
    auto records = read_csv(csv);
    REQUIRE(records.size() == 1 + 7 + 1 + 1 + 23);
    CHECK(records[0].size() == 8);
    for (std::size_t k = 1; k <= 7; ++k) CHECK(records[k].size() == 8);
    CHECK(records[8].empty());
    CHECK(records[9].size() == 5);
    for (std::size_t k = 10; k < records.size(); ++k) CHECK(records[k].size() == 5);
    CHECK(csv.substr(0, io::kConsistencyCsvHeader.size()) == io::kConsistencyCsvHeader);
  }

  TEST_CASE("csv C24 and B2 rows") {
    auto records = read_csv(io::export_report(fixture_result(), io::ReportFormat::csv));
    bool saw_c24 = false, saw_b2 = false;
    for (const auto& r : records) {
      if (r.size() == 5 && r[0] == "C24") {
        saw_c24 = true;
        CHECK(r[2] == "B2");
        CHECK(std::abs(std::stod(r[3]) - 0.372) < 1e-3);
        CHECK(std::abs(std::stod(r[4]) - 0.06603) < 1e-4);
      }
      if (r.size() == 8 && r[0] == "B2") {
        saw_b2 = true;
        CHECK(r[1] == "4");
        CHECK(std::abs(std::stod(r[6])) < 5e-5);
        CHECK(r[7] == "Passed");
      }
      if (r.size() == 8 && r[0] != "node") CHECK(r[7] == "Passed");
    }
    CHECK(saw_c24);
    CHECK(saw_b2);
  }

  TEST_CASE("text report uses four decimals") {
    auto text = io::export_report(fixture_result(), io::ReportFormat::text);
    CHECK(text.find("0.2450") != std::string::npos);
    CHECK(text.find("0.0660") != std::string::npos);
    CHECK(text.find("Passed") != std::string::npos);
    CHECK(text.find("-0.0000") == std::string::npos);
    auto wider = io::export_report(fixture_result(), io::ReportFormat::text, 6);
    CHECK(wider.find("0.066030") != std::string::npos);
  }

  TEST_CASE("single leaf hierarchy") {
    auto r = evaluate(Hierarchy::build({"G", "goal", {{"only", "one, \"quoted\"", {}}}}), RiTable::standard());
    auto records = read_csv(io::export_report(r, io::ReportFormat::csv));
    REQUIRE(records.size() == 5);
    CHECK(records[4][0] == "only");
    CHECK(records[4][1] == "one, \"quoted\"");
    CHECK(records[4][4] == "1");
  }

  TEST_CASE("csv_field quoting") {
    CHECK(io::csv_field("plain") == "plain");
    CHECK(io::csv_field("a,b") == "\"a,b\"");
    CHECK(io::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  }

  TEST_CASE("report format names") {
    CHECK(io::parse_report_format("csv") == io::ReportFormat::csv);
    CHECK(io::parse_report_format("text") == io::ReportFormat::text);
    CHECK_THROWS_AS(io::parse_report_format("xlsx"), Error);
  }
}

TEST_SUITE("json_codec") {
  TEST_CASE("ri table files") {
    auto t = io::parse_ri_table(R"({"ri": [0, 0, 0.58, 0.9]})");
    CHECK(t.at(4) == 0.9);
    auto u = io::parse_ri_table(R"({"ri": {"1": 0, "2": 0, "3": 0.5, "12": 1.6}})");
    CHECK(u.at(12) == 1.6);
    auto sparse = io::parse_ri_table(R"({"ri": {"3": 0.58, "12": 1.54}})");
    CHECK(sparse.at(2) == 0);
    CHECK_FALSE(sparse.find(4));
    CHECK_THROWS_AS(io::parse_ri_table(R"({"ri": {"2": 0.1, "3": 0.58}})"), Error);
    CHECK_THROWS_AS(io::parse_ri_table(R"({"ri": [0, 0, 0.9, 0.58]})"), Error);
    CHECK_THROWS_AS(io::parse_ri_table("nope"), Error);
  }

  TEST_CASE("evaluation json carries full precision") {
    auto r = evaluate(io::build_hierarchy(io::parse_project(fixture_text())), RiTable::standard());
    auto j = io::to_json(r);
    CHECK(j["all_passed"] == true);
    CHECK(j["nodes"].size() == 7);
    CHECK(j["ranking"].size() == 23);
    CHECK(j["ranking"][0]["leaf"] == "C11");
    CHECK(j["ranking"][0]["global_weight"].get<double>() == r.composite.rows[0].global_weight);
  }
}
