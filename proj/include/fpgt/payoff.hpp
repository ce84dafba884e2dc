#pragma once

#include <string_view>

#include "fpgt/channels.hpp"

namespace fpgt {

enum class Decoder { simple, joint };

std::string to_string(Decoder d);
Decoder decoder_from_string(std::string_view s);

// Encoder bias, strictly interior: 0 < p < 1.
class BiasPoint {
 public:
  explicit BiasPoint(double p);
  double value() const noexcept { return p_; }

 private:
  double p_;
};

// Output-1 probabilities at a given bias:
//   a  = P(Y=1)            = sum_z C(c,z)   p^z     (1-p)^(c-z)   theta[z]
//   a0 = P(Y=1 | X1=0)     = sum_z C(c-1,z) p^z     (1-p)^(c-1-z) theta[z]
//   a1 = P(Y=1 | X1=1)     = sum_z C(c-1,z-1) p^(z-1) (1-p)^(c-z) theta[z]
// Law of total probability: a = p*a1 + (1-p)*a0.
struct MarginalTriple {
  double a;
  double a0;
  double a1;
};

// h(alpha) = -alpha log2 alpha - (1-alpha) log2(1-alpha), with 0 log 0 = 0.
// Bits; throws std::domain_error outside [0, 1].
double binary_entropy(double alpha);

// d(alpha || beta) = alpha log2(alpha/beta) + (1-alpha) log2((1-alpha)/(1-beta)).
// Bits, >= 0; returns +infinity when alpha>0, beta=0 or alpha<1, beta=1.
// Throws std::domain_error outside [0, 1].
double kl_divergence(double alpha, double beta);

// Natural log of C(c,z) p^z (1-p)^(c-z), via log-gamma and log1p. Stays
// finite for c up to 1e6 and p down to 1e-9.
double log_binomial_pmf(int c, int z, BiasPoint p);

MarginalTriple marginals(const CollusionChannel& ch, BiasPoint p);

// Per-segment mutual information I(X1; Y), in bits:
//   I = p d(a1 || a) + (1-p) d(a0 || a).
// Exactly 0 when the output is forced (a in {0,1}).
double simple_payoff(const CollusionChannel& ch, BiasPoint p);

// Per-colluder joint mutual information (1/c) I(Z; Y), in bits:
//   I = (1/c) [h(a) - a_h],   a_h = sum_z C(c,z) p^z (1-p)^(c-z) h(theta[z]).
// Deterministic channels have a_h = 0 exactly; 0 <= I <= 1/c.
double joint_payoff(const CollusionChannel& ch, BiasPoint p);

double payoff(const CollusionChannel& ch, BiasPoint p, Decoder d);

}  // namespace fpgt
