#pragma once

#include <stdexcept>

namespace fpgt {

// Argument errors raised by channel constructors and numeric operations.
// All derive from std::invalid_argument so callers can catch broadly or by
// exact kind.

// Majority / minority voting is only defined for odd coalition sizes.
struct EvenCoalition : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Noise rate outside [0, 1).
struct BadRate : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Threshold bounds violate 0 <= l < u <= c.
struct BadThreshold : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A probability entry outside [0, 1], or too few entries.
struct BadProbability : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Operation needs theta[0] = 0 and theta[c] = 1.
struct MarkingRequired : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Code-length bound asked for a zero (or negative) capacity.
struct DegenerateCapacity : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// No closed-form prediction exists for the requested model/decoder pair.
struct Unavailable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed channel or model spec string (a usage error, not a domain error).
struct SpecParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace fpgt
