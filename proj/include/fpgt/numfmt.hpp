#pragma once

#include <string>
#include <string_view>

namespace fpgt::num {

// Shortest representation that parses back to the identical double.
std::string roundtrip(double x);

// %.{digits}g style significant-digit formatting for human output.
std::string sig(double x, int digits);

// Strict full-string parses; throw SpecParseError on leftovers or garbage.
double parse_double(std::string_view s);
int parse_int(std::string_view s);

}  // namespace fpgt::num
