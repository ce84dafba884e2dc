#include "fpgt/channels.hpp"

#include <cmath>
#include <sstream>

#include "fpgt/numfmt.hpp"

namespace fpgt {

namespace {

void require_coalition(int c) {
  if (c < 1) throw BadProbability("coalition size must be >= 1, got " + std::to_string(c));
}

CollusionChannel finish(int c, std::vector<double> theta) {
  CollusionChannel ch{c, std::move(theta)};
  for (double t : ch.theta)
    if (!(t >= 0.0 && t <= 1.0))
      throw BadProbability("channel entry outside [0,1]: " + num::roundtrip(t));
  return ch;
}

}  // namespace

CollusionChannel make_interleaving(int c) {
  require_coalition(c);
  std::vector<double> theta(c + 1);
  // Upper half mirrors the lower so theta[z] == 1 - theta[c-z] holds exactly
  // in floating point (z/c and 1 - (c-z)/c round differently for c not a
  // power of two).
  for (int z = 0; 2 * z <= c; ++z) {
    theta[z] = static_cast<double>(z) / c;
    theta[c - z] = 1.0 - theta[z];
  }
  return finish(c, std::move(theta));
}

CollusionChannel make_all1(int c) {
  require_coalition(c);
  std::vector<double> theta(c + 1, 1.0);
  theta[0] = 0.0;
  return finish(c, std::move(theta));
}

CollusionChannel make_majority(int c) {
  require_coalition(c);
  if (c % 2 == 0)
    throw EvenCoalition("majority voting needs an odd coalition, got " + std::to_string(c));
  std::vector<double> theta(c + 1);
  for (int z = 0; z <= c; ++z) theta[z] = (2 * z > c) ? 1.0 : 0.0;
  return finish(c, std::move(theta));
}

CollusionChannel make_minority(int c) {
  require_coalition(c);
  if (c % 2 == 0)
    throw EvenCoalition("minority voting needs an odd coalition, got " + std::to_string(c));
  std::vector<double> theta(c + 1, 0.0);
  for (int z = 1; 2 * z < c; ++z) theta[z] = 1.0;
  theta[c] = 1.0;
  return finish(c, std::move(theta));
}

CollusionChannel make_coinflip(int c) {
  require_coalition(c);
  std::vector<double> theta(c + 1, 0.5);
  theta[0] = 0.0;
  theta[c] = 1.0;
  return finish(c, std::move(theta));
}

CollusionChannel make_additive(int c, double r) {
  require_coalition(c);
  if (!(r >= 0.0 && r < 1.0))
    throw BadRate("additive noise rate must be in [0,1), got " + num::roundtrip(r));
  std::vector<double> theta(c + 1, 1.0);
  theta[0] = r;
  return finish(c, std::move(theta));
}

CollusionChannel make_dilution(int c, double r) {
  require_coalition(c);
  if (!(r >= 0.0 && r < 1.0))
    throw BadRate("dilution noise rate must be in [0,1), got " + num::roundtrip(r));
  std::vector<double> theta(c + 1);
  theta[0] = 0.0;
  for (int z = 1; z <= c; ++z) theta[z] = 1.0 - std::pow(r, z);
  return finish(c, std::move(theta));
}

CollusionChannel make_threshold(int c, int u) {
  require_coalition(c);
  if (u < 1 || u > c)
    throw BadThreshold("threshold needs 1 <= u <= c, got u=" + std::to_string(u) +
                       " c=" + std::to_string(c));
  std::vector<double> theta(c + 1);
  for (int z = 0; z <= c; ++z) theta[z] = (z >= u) ? 1.0 : 0.0;
  return finish(c, std::move(theta));
}

CollusionChannel make_threshold_gap(int c, int l, int u, GapKind gap) {
  require_coalition(c);
  if (l < 0 || l >= u || u > c)
    throw BadThreshold("threshold gap needs 0 <= l < u <= c, got l=" + std::to_string(l) +
                       " u=" + std::to_string(u) + " c=" + std::to_string(c));
  std::vector<double> theta(c + 1);
  for (int z = 0; z <= c; ++z) theta[z] = (z >= u) ? 1.0 : 0.0;
  // Gap cells mirror within the gap, as in make_interleaving, so the
  // full-width gap reproduces that channel entrywise and complementary
  // (l,u) -> (c-u, c-l) grids mirror each other exactly.
  for (int z = l + 1; z < u; ++z) {
    if (gap == GapKind::coin)
      theta[z] = 0.5;
    else if (2 * (z - l) <= u - l)
      theta[z] = static_cast<double>(z - l) / (u - l);
    else
      theta[z] = 1.0 - static_cast<double>(u - z) / (u - l);
  }
  return finish(c, std::move(theta));
}

CollusionChannel make_custom(std::vector<double> theta) {
  if (theta.size() < 2)
    throw BadProbability("custom channel needs at least 2 entries, got " +
                         std::to_string(theta.size()));
  const int c = static_cast<int>(theta.size()) - 1;
  return finish(c, std::move(theta));
}

bool satisfies_marking(const CollusionChannel& ch) {
  return ch.theta.front() == 0.0 && ch.theta.back() == 1.0;
}

bool is_deterministic(const CollusionChannel& ch) {
  for (double t : ch.theta)
    if (t != 0.0 && t != 1.0) return false;
  return true;
}

bool is_symbol_symmetric(const CollusionChannel& ch) {
  // theta[z] = 1 - theta[c-z], tested in the sum form that is exact for
  // mirror-constructed values.
  for (int z = 0; z <= ch.c; ++z)
    if (ch.theta[z] + ch.theta[ch.c - z] != 1.0) return false;
  return true;
}

namespace {

// Splits "k1=v1,k2=v2,..." in the given fixed key order.
std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    auto pos = s.find(sep);
    if (pos == std::string_view::npos) {
      parts.push_back(s);
      return parts;
    }
    parts.push_back(s.substr(0, pos));
    s.remove_prefix(pos + 1);
  }
}

std::string_view expect_key(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key)
    throw SpecParseError("expected '" + std::string(key) + "' in channel spec, got '" +
                         std::string(token) + "'");
  return token.substr(key.size());
}

int required_c(std::optional<int> c, std::string_view name) {
  if (!c)
    throw SpecParseError("channel '" + std::string(name) + "' needs a coalition size");
  return *c;
}

}  // namespace

CollusionChannel parse_channel(std::string_view spec, std::optional<int> c) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  auto no_args = [&] {
    if (colon != std::string_view::npos)
      throw SpecParseError("channel '" + std::string(name) + "' takes no arguments");
  };

  if (name == "interleaving") { no_args(); return make_interleaving(required_c(c, name)); }
  if (name == "all1")         { no_args(); return make_all1(required_c(c, name)); }
  if (name == "majority")     { no_args(); return make_majority(required_c(c, name)); }
  if (name == "minority")     { no_args(); return make_minority(required_c(c, name)); }
  if (name == "coinflip")     { no_args(); return make_coinflip(required_c(c, name)); }

  if (name == "additive" || name == "dilution") {
    const double r = num::parse_double(expect_key(args, "r="));
    return name == "additive" ? make_additive(required_c(c, name), r)
                              : make_dilution(required_c(c, name), r);
  }
  if (name == "threshold") {
    const int u = num::parse_int(expect_key(args, "u="));
    return make_threshold(required_c(c, name), u);
  }
  if (name == "thresholdgap") {
    const auto parts = split(args, ',');
    if (parts.size() != 3)
      throw SpecParseError("thresholdgap needs l=<int>,u=<int>,gap=<coin|int>, got '" +
                           std::string(args) + "'");
    const int l = num::parse_int(expect_key(parts[0], "l="));
    const int u = num::parse_int(expect_key(parts[1], "u="));
    const auto gap = expect_key(parts[2], "gap=");
    if (gap != "coin" && gap != "int")
      throw SpecParseError("gap must be 'coin' or 'int', got '" + std::string(gap) + "'");
    return make_threshold_gap(required_c(c, name), l, u,
                              gap == "coin" ? GapKind::coin : GapKind::interleaving);
  }
  if (name == "custom") {
    const auto parts = split(args, ',');
    std::vector<double> theta;
    theta.reserve(parts.size());
    for (auto part : parts) theta.push_back(num::parse_double(part));
    if (c && *c != static_cast<int>(theta.size()) - 1)
      throw SpecParseError("custom channel has c=" + std::to_string(theta.size() - 1) +
                           " but --c says " + std::to_string(*c));
    return make_custom(std::move(theta));
  }
  throw SpecParseError("unknown channel '" + std::string(name) + "'");
}

std::string format_channel(const CollusionChannel& ch) {
  std::string out = "custom:";
  for (int z = 0; z <= ch.c; ++z) {
    if (z) out += ',';
    out += num::roundtrip(ch.theta[z]);
  }
  return out;
}

std::string to_string(GapKind gap) {
  return gap == GapKind::coin ? "coin" : "int";
}

}  // namespace fpgt
