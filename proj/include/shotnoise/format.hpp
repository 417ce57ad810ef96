#pragma once

#include <string>
#include <string_view>

namespace shotnoise {

// Every number the library writes (CSV and JSON) uses 9 significant digits.
inline constexpr int output_digits = 9;

/// Shortest "%.9g" rendering of `value`.
std::string format_number(double value);

/// `value` rounded to 9 significant digits (the double nearest to its
/// printed form).
double round_to_output(double value);

/// Parses all of `text` as a decimal. Returns false on any trailing garbage.
bool parse_number(std::string_view text, double& out);

} // namespace shotnoise
