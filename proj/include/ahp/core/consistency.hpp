#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "ahp/core/judgment_matrix.hpp"
#include "ahp/core/weights.hpp"

namespace ahp {

/// A matrix passes when CR is strictly below this.
inline constexpr double kConsistencyThreshold = 0.1;

/// Random consistency index by matrix order. Orders 1 and 2 map to 0 and
/// values strictly increase from order 3 on.
class RiTable {
 public:
  explicit RiTable(std::map<std::size_t, double> values);

  /// Saaty's published table for orders 1..11.
  static const RiTable& standard();

  std::optional<double> find(std::size_t order) const;
  /// Throws OrderNotInRiTable.
  double at(std::size_t order) const;
  std::size_t max_order() const noexcept { return values_.rbegin()->first; }
  const std::map<std::size_t, double>& values() const noexcept { return values_; }

  /// Copy of this table with one more order (e.g. from simulate_ri).
  RiTable extended(std::size_t order, double ri) const;

  friend bool operator==(const RiTable&, const RiTable&) = default;

 private:
  std::map<std::size_t, double> values_;
};

struct ConsistencyReport {
  std::size_t order = 0;
  double mu_max = 0;
  double ci = 0;
  double ri = 0;
  double cr = 0;
  bool passed = true;
};

/// CI = (mu_max - m)/(m - 1), CR = CI/RI, passed = CR < 0.1. Orders 1 and 2
/// are consistent by construction and report CI = CR = 0.
ConsistencyReport consistency_report(const JudgmentMatrix& matrix, const WeightVector& weights,
                                     const RiTable& ri_table);
ConsistencyReport consistency_report(const JudgmentMatrix& matrix, const RiTable& ri_table);

}  // namespace ahp
