#include "fpgt/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fpgt {

std::string to_string(Decoder d) {
  return d == Decoder::simple ? "simple" : "joint";
}

Decoder decoder_from_string(std::string_view s) {
  if (s == "simple") return Decoder::simple;
  if (s == "joint") return Decoder::joint;
  throw SpecParseError("decoder must be 'simple' or 'joint', got '" + std::string(s) + "'");
}

BiasPoint::BiasPoint(double p) : p_(p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("bias must lie strictly inside (0,1)");
}

double binary_entropy(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::domain_error("binary_entropy: argument outside [0,1]");
  if (alpha == 0.0 || alpha == 1.0) return 0.0;
  return -alpha * std::log2(alpha) - (1.0 - alpha) * std::log2(1.0 - alpha);
}

double kl_divergence(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0))
    throw std::domain_error("kl_divergence: arguments outside [0,1]");
  if ((alpha > 0.0 && beta == 0.0) || (alpha < 1.0 && beta == 1.0))
    return std::numeric_limits<double>::infinity();
  double bits = 0.0;
  if (alpha > 0.0) bits += alpha * std::log2(alpha / beta);
  if (alpha < 1.0) bits += (1.0 - alpha) * std::log2((1.0 - alpha) / (1.0 - beta));
  return std::max(0.0, bits);
}

namespace {

// ln(n!), table-backed for the sizes grid scans hammer on.
double log_factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(10001);
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    return t;
  }();
  if (n < static_cast<int>(table.size())) return table[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

// Binomial(n, p) pmf for every z, assembled in log space.
std::vector<double> binom_pmf(int n, double p) {
  const double lp = std::log(p);
  const double l1p = std::log1p(-p);
  const double lf = log_factorial(n);
  std::vector<double> w(n + 1);
  for (int z = 0; z <= n; ++z)
    w[z] = std::exp(lf - log_factorial(z) - log_factorial(n - z) + z * lp +
                    (n - z) * l1p);
  return w;
}

// sum_z pmf[z] * weight(z), adding terms in descending pmf magnitude via a
// two-sided walk from the mode.
template <typename WeightFn>
double weighted_sum_desc(const std::vector<double>& pmf, WeightFn weight) {
  const int n = static_cast<int>(pmf.size()) - 1;
  const int mode =
      static_cast<int>(std::max_element(pmf.begin(), pmf.end()) - pmf.begin());
  double sum = 0.0;
  int i = mode;
  int j = mode + 1;
  while (i >= 0 && j <= n) {
    if (pmf[i] >= pmf[j]) {
      sum += pmf[i] * weight(i);
      --i;
    } else {
      sum += pmf[j] * weight(j);
      ++j;
    }
  }
  for (; i >= 0; --i) sum += pmf[i] * weight(i);
  for (; j <= n; ++j) sum += pmf[j] * weight(j);
  return sum;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double log_binomial_pmf(int c, int z, BiasPoint p) {
  if (c < 0 || z < 0 || z > c)
    throw std::invalid_argument("log_binomial_pmf: need 0 <= z <= c");
  const double pv = p.value();
  return log_factorial(c) - log_factorial(z) - log_factorial(c - z) +
         z * std::log(pv) + (c - z) * std::log1p(-pv);
}

MarginalTriple marginals(const CollusionChannel& ch, BiasPoint p) {
  const int c = ch.c;
  const auto pmf_c = binom_pmf(c, p.value());
  const double a =
      clamp01(weighted_sum_desc(pmf_c, [&](int z) { return ch.theta[z]; }));
  const auto pmf_c1 = binom_pmf(c - 1, p.value());
  const double a0 =
      clamp01(weighted_sum_desc(pmf_c1, [&](int z) { return ch.theta[z]; }));
  const double a1 =
      clamp01(weighted_sum_desc(pmf_c1, [&](int z) { return ch.theta[z + 1]; }));
  return {a, a0, a1};
}

double simple_payoff(const CollusionChannel& ch, BiasPoint p) {
  const MarginalTriple m = marginals(ch, p);
  // Forced output: the convexity identity pins a0 = a1 = a, so I = 0 without
  // touching the 0/0 corner of the divergence.
  if (m.a == 0.0 || m.a == 1.0) return 0.0;
  const double pv = p.value();
  const double bits =
      pv * kl_divergence(m.a1, m.a) + (1.0 - pv) * kl_divergence(m.a0, m.a);
  return std::max(0.0, bits);
}

double joint_payoff(const CollusionChannel& ch, BiasPoint p) {
  const int c = ch.c;
  const auto pmf = binom_pmf(c, p.value());
  const double a =
      clamp01(weighted_sum_desc(pmf, [&](int z) { return ch.theta[z]; }));
  const double a_h = weighted_sum_desc(
      pmf, [&](int z) { return binary_entropy(ch.theta[z]); });
  return std::max(0.0, (binary_entropy(a) - a_h) / c);
}

double payoff(const CollusionChannel& ch, BiasPoint p, Decoder d) {
  return d == Decoder::simple ? simple_payoff(ch, p) : joint_payoff(ch, p);
}

}  // namespace fpgt
