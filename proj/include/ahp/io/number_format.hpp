#pragma once

#include <string>

namespace ahp::io {

/// Plain decimal rendering (never scientific) rounded to `significant`
/// significant digits, trailing zeros dropped: 1.3803 -> "1.3803",
/// 1.0 / 3 -> "0.3333333333", 2.5e-7 -> "0.00000025".
std::string format_decimal(double value, int significant = 10);

/// Fixed-point with exactly `decimals` digits; negative zero prints as zero.
std::string format_fixed(double value, int decimals);

}  // namespace ahp::io
