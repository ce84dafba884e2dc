#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "fpgt/channels.hpp"
#include "oracle.hpp"

using namespace fpgt;

TEST_CASE("interleaving") {
  CHECK(make_interleaving(2).theta == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(make_interleaving(1).theta == std::vector<double>{0.0, 1.0});
  CHECK(make_interleaving(4).theta ==
        std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(is_symbol_symmetric(make_interleaving(7)));
}

TEST_CASE("all1") {
  CHECK(make_all1(3).theta == std::vector<double>{0.0, 1.0, 1.0, 1.0});
  CHECK(make_all1(1).theta == std::vector<double>{0.0, 1.0});
  for (int c : {1, 2, 5, 30}) {
    CHECK(satisfies_marking(make_all1(c)));
    CHECK(is_deterministic(make_all1(c)));
  }
  CHECK_FALSE(is_symbol_symmetric(make_all1(2)));
}

TEST_CASE("majority and minority") {
  CHECK(make_majority(3).theta == std::vector<double>{0.0, 0.0, 1.0, 1.0});
  CHECK(make_minority(5).theta ==
        std::vector<double>{0.0, 1.0, 1.0, 0.0, 0.0, 1.0});
  CHECK_THROWS_AS(make_majority(4), EvenCoalition);
  CHECK_THROWS_AS(make_minority(8), EvenCoalition);
  // threshold at u = (c+1)/2 is majority voting
  for (int c : {3, 5, 25})
    CHECK(make_majority(c) == make_threshold(c, (c + 1) / 2));
  CHECK(is_symbol_symmetric(make_majority(9)));
  CHECK(is_symbol_symmetric(make_minority(9)));
}

TEST_CASE("coinflip") {
  CHECK(make_coinflip(3).theta == std::vector<double>{0.0, 0.5, 0.5, 1.0});
  CHECK(make_coinflip(1).theta == std::vector<double>{0.0, 1.0});
  for (int c : {1, 2, 9}) CHECK(is_symbol_symmetric(make_coinflip(c)));
  CHECK_FALSE(is_deterministic(make_coinflip(2)));
}

TEST_CASE("additive noise") {
  CHECK(make_additive(2, 0.1).theta == std::vector<double>{0.1, 1.0, 1.0});
  CHECK(make_additive(5, 0.0) == make_all1(5));
  CHECK_THROWS_AS(make_additive(2, 1.0), BadRate);
  CHECK_THROWS_AS(make_additive(2, -0.2), BadRate);
  CHECK_FALSE(satisfies_marking(make_additive(3, 0.1)));
}

TEST_CASE("dilution noise") {
  CHECK(make_dilution(2, 0.5).theta == std::vector<double>{0.0, 0.5, 0.75});
  CHECK(make_dilution(4, 0.0) == make_all1(4));
  const auto ch = make_dilution(3, 0.1);
  CHECK(ch.theta[0] == 0.0);
  CHECK(ch.theta[1] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(ch.theta[2] == doctest::Approx(0.99).epsilon(1e-15));
  CHECK(ch.theta[3] == doctest::Approx(0.999).epsilon(1e-15));
  CHECK_THROWS_AS(make_dilution(2, 1.0), BadRate);
}

TEST_CASE("threshold") {
  CHECK(make_threshold(4, 2).theta ==
        std::vector<double>{0.0, 0.0, 1.0, 1.0, 1.0});
  CHECK(make_threshold(6, 1) == make_all1(6));
  CHECK(make_threshold(5, 3) == make_majority(5));
  CHECK_THROWS_AS(make_threshold(4, 0), BadThreshold);
  CHECK_THROWS_AS(make_threshold(4, 5), BadThreshold);
}

TEST_CASE("threshold with gap") {
  CHECK(make_threshold_gap(4, 1, 3, GapKind::interleaving).theta ==
        std::vector<double>{0.0, 0.0, 0.5, 1.0, 1.0});
  // gapless reduction, both kinds
  for (int u : {1, 2, 4})
    for (auto k : {GapKind::coin, GapKind::interleaving})
      CHECK(make_threshold_gap(4, u - 1, u, k) == make_threshold(4, u));
  // full-width gaps recover the fingerprinting attacks
  for (int c : {2, 5, 25}) {
    CHECK(make_threshold_gap(c, 0, c, GapKind::coin) == make_coinflip(c));
    CHECK(make_threshold_gap(c, 0, c, GapKind::interleaving) ==
          make_interleaving(c));
  }
  CHECK_THROWS_AS(make_threshold_gap(4, 2, 2, GapKind::coin), BadThreshold);
  CHECK_THROWS_AS(make_threshold_gap(4, -1, 2, GapKind::coin), BadThreshold);
  CHECK_THROWS_AS(make_threshold_gap(4, 0, 5, GapKind::coin), BadThreshold);
}

TEST_CASE("custom") {
  const auto ch = make_custom({0.0, 0.3, 1.0});
  CHECK(ch.c == 2);
  CHECK(ch.theta == std::vector<double>{0.0, 0.3, 1.0});
  CHECK_THROWS_AS(make_custom({0.2}), BadProbability);
  CHECK_THROWS_AS(make_custom({0.0, 1.5, 1.0}), BadProbability);
  CHECK_THROWS_AS(make_custom({-0.1, 1.0}), BadProbability);
}

TEST_CASE("predicates") {
  CHECK(satisfies_marking(make_all1(4)));
  CHECK(is_deterministic(make_all1(4)));
  CHECK_FALSE(is_symbol_symmetric(make_all1(4)));
  CHECK_FALSE(satisfies_marking(make_additive(4, 0.1)));
  CHECK_FALSE(is_deterministic(make_custom({0.0, 0.5, 1.0})));
  CHECK(satisfies_marking(make_custom({0.0, 0.5, 1.0})));
}

TEST_CASE("spec string parsing") {
  CHECK(parse_channel("interleaving", 4) == make_interleaving(4));
  CHECK(parse_channel("all1", 3) == make_all1(3));
  CHECK(parse_channel("majority", 5) == make_majority(5));
  CHECK(parse_channel("minority", 5) == make_minority(5));
  CHECK(parse_channel("coinflip", 3) == make_coinflip(3));
  CHECK(parse_channel("additive:r=0.1", 2) == make_additive(2, 0.1));
  CHECK(parse_channel("dilution:r=0.5", 2) == make_dilution(2, 0.5));
  CHECK(parse_channel("threshold:u=2", 4) == make_threshold(4, 2));
  CHECK(parse_channel("thresholdgap:l=1,u=3,gap=int", 4) ==
        make_threshold_gap(4, 1, 3, GapKind::interleaving));
  CHECK(parse_channel("thresholdgap:l=0,u=2,gap=coin", 4) ==
        make_threshold_gap(4, 0, 2, GapKind::coin));
  CHECK(parse_channel("custom:0,0.3,1") == make_custom({0.0, 0.3, 1.0}));
  CHECK(parse_channel("custom:0,0.3,1", 2) == make_custom({0.0, 0.3, 1.0}));

  CHECK_THROWS_AS(parse_channel("nonsense", 3), SpecParseError);
  CHECK_THROWS_AS(parse_channel("all1:r=0.1", 3), SpecParseError);
  CHECK_THROWS_AS(parse_channel("all1"), SpecParseError);  // missing c
  CHECK_THROWS_AS(parse_channel("additive:q=0.1", 3), SpecParseError);
  CHECK_THROWS_AS(parse_channel("additive:r=abc", 3), SpecParseError);
  CHECK_THROWS_AS(parse_channel("custom:0,0.3,1", 5), SpecParseError);
  CHECK_THROWS_AS(parse_channel("thresholdgap:l=1,u=3", 4), SpecParseError);
  // well-formed specs with out-of-domain values raise domain errors
  CHECK_THROWS_AS(parse_channel("additive:r=1", 3), BadRate);
  CHECK_THROWS_AS(parse_channel("majority", 4), EvenCoalition);
  CHECK_THROWS_AS(parse_channel("custom:0,1.5,1"), BadProbability);
}

TEST_CASE("format / parse round trip is exact") {
  oracle::Rng rng(0x5eed0001ULL);
  for (int iter = 0; iter < 200; ++iter) {
    const auto ch = oracle::random_channel(rng, rng.uniform_int(1, 20));
    CHECK(parse_channel(format_channel(ch)) == ch);
  }
  // constructed channels round-trip too
  CHECK(parse_channel(format_channel(make_dilution(7, 0.123456789))) ==
        make_dilution(7, 0.123456789));
  CHECK(parse_channel(format_channel(make_interleaving(13))) ==
        make_interleaving(13));
}

TEST_CASE("constructed channels satisfy the type invariants") {
  oracle::Rng rng(0x5eed0002ULL);
  std::vector<CollusionChannel> all;
  for (int c : {1, 2, 3, 5, 12, 25}) {
    all.push_back(make_interleaving(c));
    all.push_back(make_all1(c));
    all.push_back(make_coinflip(c));
    all.push_back(make_additive(c, rng.unit() * 0.99));
    all.push_back(make_dilution(c, rng.unit() * 0.99));
    if (c % 2 == 1) {
      all.push_back(make_majority(c));
      all.push_back(make_minority(c));
    }
    for (int u = 1; u <= c; ++u) all.push_back(make_threshold(c, u));
    if (c >= 2)
      all.push_back(make_threshold_gap(c, 0, c, GapKind::interleaving));
  }
  for (const auto& ch : all) {
    CHECK(ch.c >= 1);
    CHECK(ch.theta.size() == static_cast<std::size_t>(ch.c) + 1);
    for (double t : ch.theta) {
      CHECK(t >= 0.0);
      CHECK(t <= 1.0);
    }
  }
}
