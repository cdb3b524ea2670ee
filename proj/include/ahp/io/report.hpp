#pragma once

#include <string>
#include <string_view>

#include "ahp/model/evaluation.hpp"

namespace ahp::io {

enum class ReportFormat { csv, text };

ReportFormat parse_report_format(std::string_view text);

/// Column layout of the two CSV regions (separated by one empty line).
inline constexpr std::string_view kConsistencyCsvHeader =
    "node,order,weights,mu_max,ci,ri,cr,result";
inline constexpr std::string_view kRankingCsvHeader =
    "indicator,label,parent,local_weight,global_weight";

/// csv: full precision (10 significant digits), the weight vector as one
/// space-separated field. text: aligned tables rounded to `precision`
/// decimals.
std::string export_report(const EvaluationResult& result, ReportFormat format,
                          int precision = 4);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view value);

}  // namespace ahp::io
