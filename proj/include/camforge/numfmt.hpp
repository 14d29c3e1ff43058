#pragma once

#include <string>

namespace camforge {

/// Shortest decimal representation that parses back to the same double.
std::string format_shortest(double value);

/// Fixed 17-significant-digit representation.
std::string format_17(double value);

/// Strict full-string parse; throws InvalidArgument on trailing garbage.
double parse_double(const std::string& text);

}  // namespace camforge
