#include "ahp/io/report.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "ahp/error.hpp"
#include "ahp/io/number_format.hpp"

namespace ahp::io {

namespace {

std::string join(std::span<const double> values, const std::string& sep, auto&& fmt) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += sep;
    out += fmt(values[k]);
  }
  return out;
}

std::string render_csv(const EvaluationResult& result) {
  auto num = [](double v) { return format_decimal(v); };
  std::ostringstream os;
  os << kConsistencyCsvHeader << "\n";
  for (const auto& ev : result.nodes) {
    const auto& r = ev.report;
    os << csv_field(ev.node_id) << ',' << r.order << ',' << join(ev.weights.weights(), " ", num)
       << ',' << num(r.mu_max) << ',' << num(r.ci) << ',' << num(r.ri) << ',' << num(r.cr)
       << ',' << (r.passed ? "Passed" : "Failed") << "\n";
  }
  os << "\n" << kRankingCsvHeader << "\n";
  for (const auto& row : result.composite.rows)
    os << csv_field(row.leaf_id) << ',' << csv_field(row.label) << ','
       << csv_field(row.parent_id) << ',' << num(row.local_weight) << ','
       << num(row.global_weight) << "\n";
  return os.str();
}

// Left-aligned columns, two spaces apart.
std::string render_table(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> width;
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  std::ostringstream os;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line.append(width[c] - row[c].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
  return os.str();
}

std::string render_text(const EvaluationResult& result, int precision) {
  auto num = [precision](double v) { return format_fixed(v, precision); };
  std::vector<std::vector<std::string>> consistency = {
      {"node", "order", "weights", "mu_max", "CI", "RI", "CR", "result"}};
  for (const auto& ev : result.nodes) {
    const auto& r = ev.report;
    consistency.push_back({ev.node_id, std::to_string(r.order),
                           "[" + join(ev.weights.weights(), ", ", num) + "]", num(r.mu_max),
                           num(r.ci), num(r.ri), num(r.cr), r.passed ? "Passed" : "Failed"});
  }
  std::vector<std::vector<std::string>> ranking = {
      {"rank", "indicator", "parent", "local", "global", "label"}};
  std::size_t position = 0;
  for (const auto& row : result.composite.rows)
    ranking.push_back({std::to_string(++position), row.leaf_id, row.parent_id,
                       num(row.local_weight), num(row.global_weight), row.label});

  std::ostringstream os;
  os << "Indicator weights and consistency\n\n" << render_table(consistency) << "\n"
     << "Composite weight ranking\n\n" << render_table(ranking) << "\n"
     << (result.all_passed ? "All judgment matrices pass the consistency check (CR < 0.1).\n"
                           : "Some judgment matrices FAIL the consistency check (CR >= 0.1).\n");
  return os.str();
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "text") return ReportFormat::text;
  throw Error(ErrorCode::InvalidArgument, "unknown report format '" + std::string(text) + "'");
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string export_report(const EvaluationResult& result, ReportFormat format, int precision) {
  return format == ReportFormat::csv ? render_csv(result) : render_text(result, precision);
}

}  // namespace ahp::io
