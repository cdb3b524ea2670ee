#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ahp/core/judgment_matrix.hpp"

namespace ahp {

/// Normalized local priorities of the children of one node.
class WeightVector {
 public:
  /// Normalizes `raw` (all entries positive) so the weights sum to 1.
  static WeightVector from_raw(std::vector<double> raw);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const noexcept { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }
  /// Row geometric means before normalization.
  std::span<const double> raw_geometric_means() const noexcept { return raw_; }

 private:
  WeightVector(std::vector<double> raw, std::vector<double> weights)
      : raw_(std::move(raw)), weights_(std::move(weights)) {}

  std::vector<double> raw_;
  std::vector<double> weights_;
};

/// Row geometric means, accumulated as mean log so large orders cannot
/// overflow, then normalized.
WeightVector geometric_mean_weights(const JudgmentMatrix& matrix);

/// mu_max = sum_i (A w)_i / (m w_i). This is the estimator reported
/// everywhere in the library; it is exact for consistent matrices.
double max_eigenvalue(const JudgmentMatrix& matrix, const WeightVector& weights);

}  // namespace ahp
