#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pgcc {

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

// Throws std::invalid_argument when text is not a complete floating-point literal.
double parse_double(std::string_view text);

std::string join_doubles(std::span<const double> values, char sep = ',');
std::vector<double> split_doubles(std::string_view text, char sep = ',');

}  // namespace pgcc
