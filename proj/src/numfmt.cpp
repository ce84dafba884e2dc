#include "fpgt/numfmt.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

#include "fpgt/errors.hpp"

namespace fpgt::num {

std::string roundtrip(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

std::string sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

double parse_double(std::string_view s) {
  double v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw SpecParseError("bad number '" + std::string(s) + "'");
  return v;
}

int parse_int(std::string_view s) {
  int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw SpecParseError("bad integer '" + std::string(s) + "'");
  return v;
}

}  // namespace fpgt::num
