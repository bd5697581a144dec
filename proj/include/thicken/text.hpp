#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace thicken {

// Shortest decimal form that parses back to the same double.
std::string format_real(double v);

// Whole-token parse of a finite double; throws InvalidArgument naming `what`.
double parse_real(std::string_view text, std::string_view what);

// Splits on runs of whitespace.
std::vector<std::string> split_ws(std::string_view text);

}  // namespace thicken
