#pragma once

#include <string>

namespace rsj {

/// Fixed notation with six decimals, ties to even, independent of locale.
[[nodiscard]] std::string format_fixed6(double value);

/// Shortest text that parses back to the same double.
[[nodiscard]] std::string format_shortest(double value);

}  // namespace rsj
