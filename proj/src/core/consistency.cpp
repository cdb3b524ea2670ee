#include "ahp/core/consistency.hpp"

#include <cmath>
#include <string>

#include "ahp/error.hpp"

namespace ahp {

namespace {

void check_table(const std::map<std::size_t, double>& values) {
  if (values.empty()) throw Error(ErrorCode::InvalidRiTable, "RI table is empty");
  for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
    auto it = values.find(m);
    if (it == values.end() || it->second != 0.0)
      throw Error(ErrorCode::InvalidRiTable,
                  "RI table must map order " + std::to_string(m) + " to 0");
  }
  double previous = 0;
  for (const auto& [m, ri] : values) {
    if (m == 0) throw Error(ErrorCode::InvalidRiTable, "RI table has order 0");
    if (!std::isfinite(ri)) throw Error(ErrorCode::InvalidRiTable, "RI value is not finite");
    if (m >= 3) {
      if (ri <= previous)
        throw Error(ErrorCode::InvalidRiTable,
                    "RI values must strictly increase (order " + std::to_string(m) + ")");
      previous = ri;
    }
  }
}

}  // namespace

RiTable::RiTable(std::map<std::size_t, double> values) : values_(std::move(values)) {
  check_table(values_);
}

const RiTable& RiTable::standard() {
  static const RiTable kTable({{1, 0.0},
                               {2, 0.0},
                               {3, 0.58},
                               {4, 0.90},
                               {5, 1.12},
                               {6, 1.24},
                               {7, 1.32},
                               {8, 1.41},
                               {9, 1.45},
                               {10, 1.49},
                               {11, 1.51}});
  return kTable;
}

std::optional<double> RiTable::find(std::size_t order) const {
  auto it = values_.find(order);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double RiTable::at(std::size_t order) const {
  auto ri = find(order);
  if (!ri)
    throw Error(ErrorCode::OrderNotInRiTable,
                "no random index for order " + std::to_string(order));
  return *ri;
}

RiTable RiTable::extended(std::size_t order, double ri) const {
  auto values = values_;
  values[order] = ri;
  return RiTable(std::move(values));
}

ConsistencyReport consistency_report(const JudgmentMatrix& matrix, const WeightVector& weights,
                                     const RiTable& ri_table) {
  const std::size_t m = matrix.order();
  ConsistencyReport report;
  report.order = m;
  report.mu_max = max_eigenvalue(matrix, weights);
  if (m <= 2) return report;

  const double ri = ri_table.at(m);
  report.ri = ri;
  report.ci = (report.mu_max - static_cast<double>(m)) / static_cast<double>(m - 1);
  report.cr = report.ci / ri;
  report.passed = report.cr < kConsistencyThreshold;
  return report;
}

ConsistencyReport consistency_report(const JudgmentMatrix& matrix, const RiTable& ri_table) {
  return consistency_report(matrix, geometric_mean_weights(matrix), ri_table);
}

}  // namespace ahp
