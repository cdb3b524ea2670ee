#include "ahp/core/weights.hpp"

#include <cmath>
#include <string>

#include "ahp/error.hpp"

namespace ahp {

WeightVector WeightVector::from_raw(std::vector<double> raw) {
  if (raw.empty()) throw Error(ErrorCode::EmptyInput, "weight vector is empty");
  double total = 0;
  for (double r : raw) {
    if (!std::isfinite(r) || r <= 0)
      throw Error(ErrorCode::InvalidArgument, "raw weights must be positive and finite");
    total += r;
  }
  std::vector<double> w(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) w[i] = raw[i] / total;
  return WeightVector(std::move(raw), std::move(w));
}

WeightVector geometric_mean_weights(const JudgmentMatrix& matrix) {
  const std::size_t m = matrix.order();
  std::vector<double> raw(m);
  for (std::size_t i = 0; i < m; ++i) {
    double log_sum = 0;
    for (double a : matrix.row(i)) log_sum += std::log(a);
    raw[i] = std::exp(log_sum / static_cast<double>(m));
  }
  return WeightVector::from_raw(std::move(raw));
}

double max_eigenvalue(const JudgmentMatrix& matrix, const WeightVector& weights) {
  const std::size_t m = matrix.order();
  if (weights.size() != m)
    throw Error(ErrorCode::DimensionMismatch,
                "weight vector has " + std::to_string(weights.size()) +
                    " components, matrix order is " + std::to_string(m));
  double mu = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double aw = 0;
    auto row = matrix.row(i);
    for (std::size_t j = 0; j < m; ++j) aw += row[j] * weights[j];
    mu += aw / (static_cast<double>(m) * weights[i]);
  }
  return mu;
}

}  // namespace ahp
