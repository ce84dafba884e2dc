#pragma once

#include <vector>

#include "fpgt/payoff.hpp"

namespace fpgt {

struct OptimizerOptions {
  int grid_points = 1024;
  double refine_tolerance_p = 1e-10;
  double near_optimal_band = 1e-9;  // bits
  // Extra samples at k ln2/(4c), k = 1..32, plus their mirrors near 1.
  // All-1-like channels peak at p = Theta(1/c), below the uniform grid
  // resolution once c is a few thousand.
  bool small_p_augmentation = true;
};

struct LocalMaximum {
  double p;
  double bits;
};

struct CapacityResult {
  double capacity = 0.0;  // bits, global maximum of the payoff over p
  double p_star = 0.5;    // smallest p attaining it (ties within the band)
  std::vector<LocalMaximum> local_maxima;  // near-optimal maxima, p ascending
  long long evaluations = 0;
  double tolerance_used = 0.0;
  bool degenerate = false;  // payoff vanished everywhere (constant channel)
};

// Grid-seeded multistart: sample the payoff on the (augmented) interior grid,
// bracket every strict local maximum, refine each bracket by golden section
// to refine_tolerance_p, report the global maximum and all maxima within
// near_optimal_band of it. A payoff that is identically zero on the grid
// yields capacity 0 at p=1/2 with the degenerate flag set.
CapacityResult maximize_payoff(const CollusionChannel& ch, Decoder d,
                               const OptimizerOptions& options = {});

// All interior roots of a(p) = 1/2, ascending. Requires the marking
// assumption so a(0) = 0 and a(1) = 1 bracket at least one root; scans for
// sign changes and bisects each. For deterministic marking channels these
// are exactly the joint-payoff maximizers.
std::vector<double> solve_a_half(const CollusionChannel& ch);

// Mean payoff under the arcsine bias density 1/(pi sqrt(p(1-p))), by
// Gauss-Chebyshev quadrature:
//   (1/N) sum_k I(p_k),  p_k = (1 - cos(pi (2k-1) / 2N)) / 2,
// which integrates the arcsine weight exactly. node_count >= 8.
double universal_capacity(const CollusionChannel& ch, Decoder d,
                          int node_count = 1024);

}  // namespace fpgt
