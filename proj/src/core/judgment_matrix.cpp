#include "ahp/core/judgment_matrix.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "ahp/error.hpp"

namespace ahp {

namespace {

constexpr double kScaleSlack = 1e-12;

std::string entry_name(std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << "a[" << i + 1 << "," << j + 1 << "]";
  return os.str();
}

}  // namespace

const std::array<double, 17>& saaty_scale() noexcept {
  static const std::array<double, 17> kScale = {
      1.0 / 9, 1.0 / 8, 1.0 / 7, 1.0 / 6, 1.0 / 5, 1.0 / 4, 1.0 / 3, 1.0 / 2, 1.0,
      2.0,     3.0,     4.0,     5.0,     6.0,     7.0,     8.0,     9.0};
  return kScale;
}

double snap_to_saaty_scale(double value) noexcept {
  if (!std::isfinite(value) || value <= 0) return 0;
  for (double point : saaty_scale()) {
    if (std::abs(value - point) <= 1e-9 * point) return point;
  }
  return 0;
}

MatrixRows JudgmentMatrix::rows() const {
  MatrixRows out(order_);
  for (std::size_t r = 0; r < order_; ++r) {
    auto src = row(r);
    out[r].assign(src.begin(), src.end());
  }
  return out;
}

JudgmentMatrix JudgmentMatrix::transposed() const {
  std::vector<double> t(entries_.size());
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j) t[j * order_ + i] = entries_[i * order_ + j];
  return JudgmentMatrix(order_, std::move(t));
}

JudgmentMatrix JudgmentMatrix::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != order_)
    throw Error(ErrorCode::DimensionMismatch, "permutation size differs from matrix order");
  std::vector<bool> seen(order_, false);
  for (std::size_t p : perm) {
    if (p >= order_ || seen[p])
      throw Error(ErrorCode::InvalidArgument, "argument is not a permutation");
    seen[p] = true;
  }
  std::vector<double> out(entries_.size());
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j)
      out[i * order_ + j] = entries_[perm[i] * order_ + perm[j]];
  return JudgmentMatrix(order_, std::move(out));
}

JudgmentMatrix JudgmentMatrix::from_priorities(std::span<const double> priorities) {
  const std::size_t m = priorities.size();
  std::vector<double> e(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      e[i * m + j] = i == j ? 1.0 : priorities[i] / priorities[j];
  return validate_matrix(m, e, ScaleMode::reciprocal_only);
}

JudgmentMatrix JudgmentMatrix::unit() { return JudgmentMatrix(1, {1.0}); }

JudgmentMatrix validate_matrix(std::size_t order, std::span<const double> row_major,
                               ScaleMode mode, double reciprocity_tolerance) {
  if (order == 0) throw Error(ErrorCode::NotSquare, "judgment matrix is empty");
  if (row_major.size() != order * order)
    throw Error(ErrorCode::NotSquare, "judgment matrix of order " + std::to_string(order) +
                                          " needs " + std::to_string(order * order) +
                                          " entries, got " + std::to_string(row_major.size()));

  auto at = [&](std::size_t i, std::size_t j) { return row_major[i * order + j]; };

  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) {
      const double a = at(i, j);
      if (!std::isfinite(a) || a <= 0)
        throw Error(ErrorCode::NonPositiveEntry,
                    entry_name(i, j) + " must be positive and finite")
            .with_entry(i, j);
    }
  }
  for (std::size_t i = 0; i < order; ++i) {
    if (std::abs(at(i, i) - 1.0) > kDiagonalTolerance)
      throw Error(ErrorCode::DiagonalNotOne, entry_name(i, i) + " must equal 1")
          .with_entry(i, i);
  }
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i + 1; j < order; ++j) {
      const double product = at(i, j) * at(j, i);
      if (std::abs(product - 1.0) > reciprocity_tolerance) {
        std::ostringstream os;
        os << entry_name(i, j) << " * " << entry_name(j, i) << " = " << product
           << ", expected 1";
        throw Error(ErrorCode::ReciprocityViolation, os.str()).with_entry(i, j);
      }
    }
  }
  if (mode == ScaleMode::strict_scale) {
    const double lo = (1.0 / 9) * (1 - kScaleSlack);
    const double hi = 9 * (1 + kScaleSlack);
    for (std::size_t i = 0; i < order; ++i) {
      for (std::size_t j = 0; j < order; ++j) {
        const double a = at(i, j);
        if (i != j && (a < lo || a > hi))
          throw Error(ErrorCode::ScaleOutOfRange,
                      entry_name(i, j) + " lies outside the 1/9..9 scale")
              .with_entry(i, j);
      }
    }
  }
  return JudgmentMatrix(order, std::vector<double>(row_major.begin(), row_major.end()));
}

JudgmentMatrix validate_matrix(const MatrixRows& rows, ScaleMode mode,
                               double reciprocity_tolerance) {
  const std::size_t m = rows.size();
  std::vector<double> flat;
  flat.reserve(m * m);
  for (std::size_t r = 0; r < m; ++r) {
    if (rows[r].size() != m)
      throw Error(ErrorCode::NotSquare, "row " + std::to_string(r + 1) + " has " +
                                            std::to_string(rows[r].size()) +
                                            " entries, expected " + std::to_string(m));
    flat.insert(flat.end(), rows[r].begin(), rows[r].end());
  }
  return validate_matrix(m, flat, mode, reciprocity_tolerance);
}

}  // namespace ahp
