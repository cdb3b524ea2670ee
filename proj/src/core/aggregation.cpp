#include "ahp/core/aggregation.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ahp/error.hpp"

namespace ahp {

std::string_view to_string(AggregationMethod method) noexcept {
  return method == AggregationMethod::geometric_mean ? "geometric_mean" : "arithmetic_mean";
}

AggregationMethod parse_aggregation_method(std::string_view text) {
  if (text == "geometric_mean" || text == "geometric") return AggregationMethod::geometric_mean;
  if (text == "arithmetic_mean" || text == "arithmetic")
    return AggregationMethod::arithmetic_mean;
  throw Error(ErrorCode::InvalidArgument,
              "unknown aggregation method '" + std::string(text) + "'");
}

JudgmentMatrix aggregate_judgments(std::span<const JudgmentMatrix> matrices,
                                   AggregationMethod method, double reciprocity_tolerance) {
  if (matrices.empty()) throw Error(ErrorCode::EmptyInput, "no judgment matrices to aggregate");
  const std::size_t m = matrices.front().order();
  for (const auto& matrix : matrices) {
    if (matrix.order() != m)
      throw Error(ErrorCode::OrderMismatch,
                  "cannot aggregate matrices of order " + std::to_string(m) + " and " +
                      std::to_string(matrix.order()));
  }

  const double n = static_cast<double>(matrices.size());
  std::vector<double> acc(m * m, 0.0);
  for (const auto& matrix : matrices) {
    auto e = matrix.entries();
    for (std::size_t k = 0; k < e.size(); ++k)
      acc[k] += method == AggregationMethod::geometric_mean ? std::log(e[k]) : e[k];
  }
  for (double& v : acc) v = method == AggregationMethod::geometric_mean ? std::exp(v / n) : v / n;

  return validate_matrix(m, acc, ScaleMode::reciprocal_only, reciprocity_tolerance);
}

}  // namespace ahp
