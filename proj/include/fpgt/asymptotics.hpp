#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpgt/optimize.hpp"

namespace fpgt {

enum class Model {
  interleaving,
  all1,
  majority,
  minority,
  coinflip,
  additive,
  dilution,
  threshold,
};

// A named attack / test model, independent of the coalition size.
struct ModelId {
  Model model = Model::all1;
  double noise_rate = 0.0;  // additive / dilution
  int threshold_u = 1;      // threshold

  static ModelId interleaving();
  static ModelId all1();
  static ModelId majority();
  static ModelId minority();
  static ModelId coinflip();
  static ModelId additive(double r);
  static ModelId dilution(double r);
  static ModelId threshold(int u);

  CollusionChannel channel(int c) const;
  std::string to_string() const;  // same tokens as the channel spec grammar

  bool operator==(const ModelId&) const = default;
};

ModelId parse_model(std::string_view spec);

// Whether noisy-model predictions include the printed first-order-in-r
// terms or just the r -> 0 leading constant.
enum class Expansion { leading, r_corrected };

// Leading-order capacity in bits, per model and decoder:
//   interleaving        1/(2 c^2 ln2)            (both decoders)
//   all1                ln2/c                    joint: 1/c
//   majority            1/(pi c ln2)             joint: 1/c
//   minority            ln2/c                    joint: 1/c
//   coinflip            ln2/(4c)                 joint: log2(5/4)/c
//   additive(r)         (ln2 - r)/c              joint: (1 - h(r)/2)/c
//   dilution(r)         see source               joint: (1 - (ln2/2) h(r))/c
//   threshold(u)        (none)                   joint: 1/c
// Returns nullopt where no closed form exists (threshold, simple decoder).
std::optional<double> predicted_capacity(const ModelId& model, Decoder d,
                                         int c,
                                         Expansion ex = Expansion::r_corrected);

// Leading-order maximizing bias, exact where a closed form exists
// (all1 joint: 1 - 2^(-1/c); threshold joint: (u - 1/3)/c). Returns nullopt
// for pairs with no stated optimum (threshold simple, interleaving joint).
std::optional<double> predicted_optimal_p(const ModelId& model, Decoder d,
                                          int c,
                                          Expansion ex = Expansion::r_corrected);

// Minimum tests/segments to identify the guilty set among n users:
// log2(n) / capacity. Throws DegenerateCapacity when capacity <= 0.
double code_length_bound(double capacity_bits, long long population);

struct ConvergenceRow {
  int c;
  double numeric_capacity;     // bits, from maximize_payoff
  double predicted_capacity;   // bits, from the table above
  double scaled_residual;      // |numeric - predicted| * c (c^2 interleaving)
  double numeric_p_times_c;
  double predicted_p_times_c;  // NaN when the optimum has no prediction
};

// Runs the optimizer at each c and compares against the predictions.
// Throws Unavailable for pairs without a capacity prediction; channel
// construction errors (odd-c models) propagate.
std::vector<ConvergenceRow> convergence_report(
    const ModelId& model, Decoder d, const std::vector<int>& c_values,
    const OptimizerOptions& options = {});

// CSV with header: c,numeric_C,predicted_C,scaled_residual,c_p_numeric,c_p_predicted
std::string to_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace fpgt
