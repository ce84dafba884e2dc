#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpgt/errors.hpp"

namespace fpgt {

// A collusion attack / group-testing response model. With Z the number of
// colluders (defectives) holding symbol 1 among c, the output is
//   P(Y = 1 | Z = z) = theta[z],   z = 0..c.
// Values are immutable after construction and safe to share across threads.
struct CollusionChannel {
  int c = 1;                  // coalition size, >= 1
  std::vector<double> theta;  // c+1 entries, each in [0, 1]

  bool operator==(const CollusionChannel&) const = default;
};

// How the undecided tally range l < z < u of a threshold model responds.
enum class GapKind { coin, interleaving };

CollusionChannel make_interleaving(int c);        // theta[z] = z/c
CollusionChannel make_all1(int c);                // (0, 1, ..., 1)
CollusionChannel make_majority(int c);            // 0 below c/2, 1 above; c odd
CollusionChannel make_minority(int c);            // rarest received symbol; c odd
CollusionChannel make_coinflip(int c);            // (0, 1/2, ..., 1/2, 1)
CollusionChannel make_additive(int c, double r);  // (r, 1, ..., 1), 0 <= r < 1
CollusionChannel make_dilution(int c, double r);  // theta[z] = 1 - r^z
CollusionChannel make_threshold(int c, int u);    // 0 below u, 1 from u on
CollusionChannel make_threshold_gap(int c, int l, int u, GapKind gap);
CollusionChannel make_custom(std::vector<double> theta);  // c = size - 1

// theta[0] == 0 and theta[c] == 1 (unanimous inputs force the output).
bool satisfies_marking(const CollusionChannel& ch);
// Every entry is exactly 0 or 1.
bool is_deterministic(const CollusionChannel& ch);
// theta[z] == 1 - theta[c - z] for all z (exact, no tolerance).
bool is_symbol_symmetric(const CollusionChannel& ch);

// Channel spec strings, as accepted on the command line:
//   interleaving | all1 | majority | minority | coinflip
//   additive:r=<float> | dilution:r=<float> | threshold:u=<int>
//   thresholdgap:l=<int>,u=<int>,gap=<coin|int>
//   custom:<comma-separated floats>
// Named forms need the coalition size; custom derives it from the list
// (a mismatching explicit c is rejected). format_channel emits the custom
// form with shortest round-trip floats, so parse(format(ch)) == ch exactly.
CollusionChannel parse_channel(std::string_view spec,
                               std::optional<int> c = std::nullopt);
std::string format_channel(const CollusionChannel& ch);

std::string to_string(GapKind gap);

}  // namespace fpgt
