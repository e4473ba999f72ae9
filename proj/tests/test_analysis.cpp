#include <gtest/gtest.h>

#include "support.hpp"

using namespace modgroup;
using namespace testsupport;

TEST(Analysis, FreenessAndIndex) {
  EXPECT_TRUE(is_free(fixture("H.json")));
  EXPECT_FALSE(is_free(fixture("L.json")));
  EXPECT_EQ(finite_index(fixture("H.json")), std::optional<int>(6));
  EXPECT_EQ(finite_index(fixture("K.json")), std::nullopt);
  EXPECT_EQ(finite_index(make_delta1()), std::optional<int>(1));
}

// phi(v) = beta(alpha(v)) traced by hand: on H it is the 6-cycle
// 1 6 2 4 5 3; the verbatim drawing pairs up as (1 3)(2 6)(4 5); on K only
// 1 and 5 close up.
TEST(Analysis, AbCycleSpectra) {
  EXPECT_EQ(ab_cycle_spectrum(fixture("H.json")), (std::vector<int>{6}));
  EXPECT_EQ(ab_cycle_spectrum(fixture("H_drawn.json")), (std::vector<int>{2, 2, 2}));
  EXPECT_EQ(ab_cycle_spectrum(fixture("K.json")), (std::vector<int>{2}));
  EXPECT_EQ(ab_cycle_spectrum(make_delta4()), (std::vector<int>{2}));
  EXPECT_EQ(ab_cycle_spectrum(make_delta1()), (std::vector<int>{1}));
  EXPECT_TRUE(is_parabolic(fixture("H.json")));
  EXPECT_TRUE(is_parabolic(fixture("K.json")));
  ModularGraph a_only(1);
  a_only.set_alpha(0, 0);
  EXPECT_FALSE(is_parabolic(a_only));
}

TEST(Analysis, AbCyclesAreReadAsPowersOfAb) {
  const auto h = fixture("H.json");
  for (const auto& c : ab_cycles(h)) {
    Word w;
    for (std::size_t i = 0; i < c.size(); ++i) w = w * parse_word("ab");
    EXPECT_EQ(walk(h, c.front(), w), c.front());
  }
}

TEST(Analysis, SimpleCyclesVisitDistinctTriangles) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = sample_silhouette(6 * (1 + static_cast<int>(rng() % 10)), rng);
    auto all = ab_cycle_spectrum(g);
    const auto simple = simple_ab_cycle_spectrum(g);
    ASSERT_TRUE(std::includes(all.begin(), all.end(), simple.begin(), simple.end()));
    // Every vertex of a silhouette graph lies on exactly one ab-cycle.
    int total = 0;
    for (int m : all) total += m;
    ASSERT_EQ(total, g.n());
    std::vector<int> expected;
    for (const auto& c : ab_cycles(g)) {
      std::set<Vertex> comps;
      for (Vertex v : c) comps.insert(b_component(g, v));
      if (comps.size() == c.size()) expected.push_back(static_cast<int>(c.size()));
    }
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(simple, expected);
  }
}

TEST(Analysis, MalnormalityOfSmallSubgroups) {
  const auto ab = stallings_from_generators({parse_word("ab")});
  EXPECT_TRUE(is_almost_malnormal(ab));
  EXPECT_TRUE(is_almost_malnormal(make_delta1()));
  const auto r = almost_malnormality(fixture("H.json"));
  EXPECT_FALSE(r.almost_malnormal);
  EXPECT_TRUE(is_infinite_order(r.witness));
}

// Witness soundness: an infinite-order word closing up at two distinct vertices.
TEST(AnalysisProperty, MalnormalityWitnessIsSound) {
  std::mt19937_64 rng(59);
  int witnesses = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    auto g = trial % 2 ? sample_cyclically_reduced(n, rng) : sample_reduced_rooted(n, rng);
    const auto r = almost_malnormality(g);
    if (r.almost_malnormal) continue;
    ++witnesses;
    ASSERT_NE(r.p, r.q);
    ASSERT_TRUE(is_infinite_order(r.witness)) << to_string(r.witness);
    ASSERT_TRUE(infinite_order(r.witness)) << to_string(r.witness);
    ASSERT_EQ(trace(g, r.p, r.witness), std::optional<Vertex>(r.p));
    ASSERT_EQ(trace(g, r.q, r.witness), std::optional<Vertex>(r.q));
  }
  EXPECT_GT(witnesses, 100);
}

// Exhaustive comparison with a plain reachability search on every small graph.
TEST(AnalysisProperty, MalnormalityAgreesWithBruteForce) {
  int malnormal = 0;
  for (int n = 1; n <= 5; ++n) {
    enumerate_graphs(n, EnumMode::CyclicallyReduced, [&](const ModularGraph& g) {
      const bool am = is_almost_malnormal(g);
      ASSERT_EQ(am, !product_has_cycle(g)) << encode(g);
      malnormal += am;
      if (n >= 2 && finite_index(g)) {
        ASSERT_FALSE(am) << encode(g);
      }
    });
  }
  EXPECT_GT(malnormal, 0);
  enumerate_graphs(4, EnumMode::ReducedRooted, [&](const ModularGraph& g) {
    ASSERT_EQ(is_almost_malnormal(g), !product_has_cycle(g)) << encode(g);
  });
}

TEST(AnalysisProperty, AbCyclesOfSizeTwoPreventMalnormality) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = sample_cyclically_reduced(2 + static_cast<int>(rng() % 40), rng);
    const auto spec = ab_cycle_spectrum(g);
    if (std::any_of(spec.begin(), spec.end(), [](int m) { return m >= 2; })) {
      ASSERT_FALSE(is_almost_malnormal(g));
    }
  }
}
