#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace ahp {

/// Off-diagonal range check applied on top of the structural checks.
enum class ScaleMode {
  strict_scale,     // every off-diagonal entry in [1/9, 9]
  reciprocal_only,  // any positive ratio (aggregated or averaged matrices)
};

/// Relative tolerance on |a_ij * a_ji - 1| for programmatic input.
inline constexpr double kExactReciprocityTolerance = 1e-9;
/// Relative tolerance for matrices transcribed at 4 decimals.
inline constexpr double kPublishedReciprocityTolerance = 5e-4;
inline constexpr double kDiagonalTolerance = 1e-12;

/// The 17 legal pairwise judgments {1/9, ..., 1/2, 1, 2, ..., 9}, ascending.
const std::array<double, 17>& saaty_scale() noexcept;

/// Returns the canonical scale value if `value` is within 1e-9 (relative)
/// of a scale point, otherwise 0.
double snap_to_saaty_scale(double value) noexcept;

using MatrixRows = std::vector<std::vector<double>>;

/// Square positive reciprocal matrix of pairwise importance ratios.
/// Instances only exist in validated form; use validate_matrix().
class JudgmentMatrix {
 public:
  std::size_t order() const noexcept { return order_; }
  double operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * order_ + col];
  }
  /// Row-major entries.
  std::span<const double> entries() const noexcept { return entries_; }
  std::span<const double> row(std::size_t r) const noexcept {
    return std::span<const double>(entries_).subspan(r * order_, order_);
  }
  MatrixRows rows() const;

  JudgmentMatrix transposed() const;
  /// Result(i, j) = this(perm[i], perm[j]).
  JudgmentMatrix permuted(std::span<const std::size_t> perm) const;

  /// The perfectly consistent matrix a_ij = priorities[i] / priorities[j].
  static JudgmentMatrix from_priorities(std::span<const double> priorities);
  /// The 1x1 matrix [[1]].
  static JudgmentMatrix unit();

  friend bool operator==(const JudgmentMatrix&, const JudgmentMatrix&) = default;

 private:
  JudgmentMatrix(std::size_t order, std::vector<double> entries)
      : order_(order), entries_(std::move(entries)) {}

  friend JudgmentMatrix validate_matrix(std::size_t, std::span<const double>, ScaleMode,
                                        double);

  std::size_t order_ = 0;
  std::vector<double> entries_;
};

/// Checks positivity, unit diagonal, reciprocity (within
/// `reciprocity_tolerance`, relative) and, in strict mode, the [1/9, 9] range.
/// Throws ahp::Error with the offending entry attached.
JudgmentMatrix validate_matrix(std::size_t order, std::span<const double> row_major,
                               ScaleMode mode,
                               double reciprocity_tolerance = kExactReciprocityTolerance);

JudgmentMatrix validate_matrix(const MatrixRows& rows, ScaleMode mode,
                               double reciprocity_tolerance = kExactReciprocityTolerance);

}  // namespace ahp
