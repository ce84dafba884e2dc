#include "fpgt/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fpgt/numfmt.hpp"

namespace fpgt {

namespace {
constexpr double kLn2 = std::numbers::ln2;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}  // namespace

ModelId ModelId::interleaving() { return {Model::interleaving}; }
ModelId ModelId::all1() { return {Model::all1}; }
ModelId ModelId::majority() { return {Model::majority}; }
ModelId ModelId::minority() { return {Model::minority}; }
ModelId ModelId::coinflip() { return {Model::coinflip}; }

ModelId ModelId::additive(double r) {
  if (!(r >= 0.0 && r < 1.0))
    throw BadRate("additive noise rate must be in [0,1), got " + num::roundtrip(r));
  return {Model::additive, r};
}

ModelId ModelId::dilution(double r) {
  if (!(r >= 0.0 && r < 1.0))
    throw BadRate("dilution noise rate must be in [0,1), got " + num::roundtrip(r));
  return {Model::dilution, r};
}

ModelId ModelId::threshold(int u) {
  if (u < 1) throw BadThreshold("threshold u must be >= 1, got " + std::to_string(u));
  return {Model::threshold, 0.0, u};
}

CollusionChannel ModelId::channel(int c) const {
  switch (model) {
    case Model::interleaving: return make_interleaving(c);
    case Model::all1: return make_all1(c);
    case Model::majority: return make_majority(c);
    case Model::minority: return make_minority(c);
    case Model::coinflip: return make_coinflip(c);
    case Model::additive: return make_additive(c, noise_rate);
    case Model::dilution: return make_dilution(c, noise_rate);
    case Model::threshold: return make_threshold(c, threshold_u);
  }
  throw std::invalid_argument("unknown model");
}

std::string ModelId::to_string() const {
  switch (model) {
    case Model::interleaving: return "interleaving";
    case Model::all1: return "all1";
    case Model::majority: return "majority";
    case Model::minority: return "minority";
    case Model::coinflip: return "coinflip";
    case Model::additive: return "additive:r=" + num::roundtrip(noise_rate);
    case Model::dilution: return "dilution:r=" + num::roundtrip(noise_rate);
    case Model::threshold: return "threshold:u=" + std::to_string(threshold_u);
  }
  throw std::invalid_argument("unknown model");
}

ModelId parse_model(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto no_args = [&] {
    if (colon != std::string_view::npos)
      throw SpecParseError("model '" + std::string(name) + "' takes no arguments");
  };
  if (name == "interleaving") { no_args(); return ModelId::interleaving(); }
  if (name == "all1")         { no_args(); return ModelId::all1(); }
  if (name == "majority")     { no_args(); return ModelId::majority(); }
  if (name == "minority")     { no_args(); return ModelId::minority(); }
  if (name == "coinflip")     { no_args(); return ModelId::coinflip(); }
  if (name == "additive" || name == "dilution") {
    if (args.substr(0, 2) != "r=")
      throw SpecParseError("model '" + std::string(name) + "' needs r=<float>");
    const double r = num::parse_double(args.substr(2));
    return name == "additive" ? ModelId::additive(r) : ModelId::dilution(r);
  }
  if (name == "threshold") {
    if (args.substr(0, 2) != "u=")
      throw SpecParseError("model 'threshold' needs u=<int>");
    return ModelId::threshold(num::parse_int(args.substr(2)));
  }
  throw SpecParseError("unknown model '" + std::string(name) + "'");
}

std::optional<double> predicted_capacity(const ModelId& m, Decoder d, int c,
                                         Expansion ex) {
  const double r = m.noise_rate;
  const bool corrected = ex == Expansion::r_corrected;
  switch (m.model) {
    case Model::interleaving:
      return 1.0 / (2.0 * c * static_cast<double>(c) * kLn2);
    case Model::all1:
      return d == Decoder::simple ? kLn2 / c : 1.0 / c;
    case Model::majority:
      return d == Decoder::simple ? 1.0 / (std::numbers::pi * c * kLn2) : 1.0 / c;
    case Model::minority:
      return d == Decoder::simple ? kLn2 / c : 1.0 / c;
    case Model::coinflip:
      return d == Decoder::simple ? kLn2 / (4.0 * c) : std::log2(5.0 / 4.0) / c;
    case Model::additive:
      if (d == Decoder::simple)
        return corrected ? (kLn2 - r) / c : kLn2 / c;
      return corrected ? (1.0 - 0.5 * binary_entropy(r)) / c : 1.0 / c;
    case Model::dilution:
      if (d == Decoder::simple) {
        if (!corrected || r == 0.0) return kLn2 / c;
        return kLn2 / c *
               (1.0 + r * std::log(r) / (2.0 * kLn2) -
                r * (1.0 - kLn2) / (2.0 * kLn2));
      }
      return corrected ? (1.0 - 0.5 * kLn2 * binary_entropy(r)) / c : 1.0 / c;
    case Model::threshold:
      if (d == Decoder::simple) return std::nullopt;
      return 1.0 / c;
  }
  return std::nullopt;
}

std::optional<double> predicted_optimal_p(const ModelId& m, Decoder d, int c,
                                          Expansion ex) {
  const double r = m.noise_rate;
  const bool corrected = ex == Expansion::r_corrected;
  switch (m.model) {
    case Model::interleaving:
      // The joint payoff has no stated optimum; its scaled value converges
      // pointwise in p rather than uniformly.
      if (d == Decoder::joint) return std::nullopt;
      return 0.5;
    case Model::all1:
      if (d == Decoder::joint) return -std::expm1(std::log(0.5) / c);  // 1 - 2^(-1/c)
      return kLn2 / c;
    case Model::majority:
      return 0.5;
    case Model::minority:
      return d == Decoder::simple ? kLn2 / c : 0.5;
    case Model::coinflip:
      return d == Decoder::simple ? kLn2 / (2.0 * c) : std::log(5.0 / 3.0) / c;
    case Model::additive:
      if (d == Decoder::simple) {
        if (!corrected) return kLn2 / c;
        return kLn2 / c *
               (1.0 + r * (2.0 * kLn2 - 1.0) / (2.0 * kLn2 * (1.0 - kLn2)));
      }
      if (!corrected || r == 0.0) return kLn2 / c;
      return kLn2 / c * (1.0 - r * (1.0 + std::log(r)) / (2.0 * kLn2));
    case Model::dilution:
      if (d == Decoder::simple) {
        if (!corrected || r == 0.0) return kLn2 / c;
        return kLn2 / c *
               (1.0 + r * std::log(r) / (4.0 * kLn2) +
                r * (-3.0 * kLn2 * kLn2 + 5.0 * kLn2 - 1.0) /
                    (4.0 * kLn2 * (1.0 - kLn2)));
      }
      if (!corrected) return kLn2 / c;
      return kLn2 / c *
             (1.0 + r - 0.5 * (1.0 - kLn2) * binary_entropy(r));
    case Model::threshold:
      if (d == Decoder::simple) return std::nullopt;
      return (m.threshold_u - 1.0 / 3.0) / c;
  }
  return std::nullopt;
}

double code_length_bound(double capacity_bits, long long population) {
  if (population < 2)
    throw std::invalid_argument("code_length_bound needs population >= 2");
  if (!(capacity_bits > 0.0))
    throw DegenerateCapacity("code_length_bound needs a positive capacity");
  return std::log2(static_cast<double>(population)) / capacity_bits;
}

std::vector<ConvergenceRow> convergence_report(const ModelId& model, Decoder d,
                                               const std::vector<int>& c_values,
                                               const OptimizerOptions& options) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(c_values.size());
  for (int c : c_values) {
    const auto predicted = predicted_capacity(model, d, c);
    if (!predicted)
      throw Unavailable("no capacity prediction for " + model.to_string() + " (" +
                        to_string(d) + ")");
    const CapacityResult res = maximize_payoff(model.channel(c), d, options);
    const double scale = model.model == Model::interleaving
                             ? static_cast<double>(c) * c
                             : static_cast<double>(c);
    const auto predicted_p = predicted_optimal_p(model, d, c);
    rows.push_back({c, res.capacity, *predicted,
                    std::abs(res.capacity - *predicted) * scale,
                    res.p_star * c, predicted_p ? *predicted_p * c : kNan});
  }
  return rows;
}

std::string to_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "c,numeric_C,predicted_C,scaled_residual,c_p_numeric,c_p_predicted\n";
  for (const ConvergenceRow& r : rows) {
    out += std::to_string(r.c);
    out += ',';
    out += num::roundtrip(r.numeric_capacity);
    out += ',';
    out += num::roundtrip(r.predicted_capacity);
    out += ',';
    out += num::roundtrip(r.scaled_residual);
    out += ',';
    out += num::roundtrip(r.numeric_p_times_c);
    out += ',';
    out += num::roundtrip(r.predicted_p_times_c);
    out += '\n';
  }
  return out;
}

}  // namespace fpgt
