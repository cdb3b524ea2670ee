#pragma once

#include <span>
#include <string_view>

#include "ahp/core/judgment_matrix.hpp"

namespace ahp {

enum class AggregationMethod { geometric_mean, arithmetic_mean };

std::string_view to_string(AggregationMethod method) noexcept;
/// Accepts "geometric_mean"/"geometric" and "arithmetic_mean"/"arithmetic".
AggregationMethod parse_aggregation_method(std::string_view text);

/// Element-wise mean of several experts' matrices. The geometric mean keeps
/// reciprocity exact; the arithmetic mean usually does not, in which case
/// the result fails validation with ReciprocityViolation.
JudgmentMatrix aggregate_judgments(std::span<const JudgmentMatrix> matrices,
                                   AggregationMethod method = AggregationMethod::geometric_mean,
                                   double reciprocity_tolerance = kExactReciprocityTolerance);

}  // namespace ahp
