#include <gtest/gtest.h>

#include "support.hpp"

using namespace modgroup;
using namespace testsupport;

namespace {

// Connected pairs by the exponential formula over machine integers, from
// recurrences restated here rather than taken from the library.
std::vector<std::uint64_t> connected_pairs_oracle(int n_max) {
  std::vector<std::uint64_t> a(n_max + 1), b(n_max + 1), t(n_max + 1), c(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    a[n] = n < 2 ? 1 : a[n - 1] + (n - 1) * a[n - 2];
    // The last point is a b-loop, on an edge with one of n-1 partners in
    // either direction, or on a triangle with an ordered pair of partners.
    b[n] = n < 2 ? 1 : b[n - 1] + 2 * (n - 1) * b[n - 2] + (n >= 3 ? (n - 1) * (n - 2) * b[n - 3] : 0);
    t[n] = a[n] * b[n];
  }
  for (int n = 1; n <= n_max; ++n) {
    c[n] = t[n];
    std::uint64_t binom = 1;
    for (int k = 1; k < n; ++k) {
      c[n] -= binom * c[k] * t[n - k];
      binom = binom * (n - k) / k;
    }
  }
  return c;
}

int loops(const ModularGraph& g) {
  int l = 0;
  for (Vertex v = 0; v < g.n(); ++v) l += g.has_a_loop(v) + g.has_b_loop(v);
  return l;
}

}  // namespace

TEST(Oracle, CyclicCountsMatchExponentialFormula) {
  const auto c = connected_pairs_oracle(7);
  for (int n = 1; n <= 7; ++n) EXPECT_EQ(count_graphs(n, EnumMode::CyclicallyReduced), c[n]) << n;
  EXPECT_EQ(count_connected_pairs(6), c[6]);
  const auto lib = connected_pair_counts(7);
  for (int n = 1; n <= 7; ++n) EXPECT_EQ(lib[n], BigInt(c[n]));
}

TEST(Oracle, SizeTwoGraphs) {
  const auto gs = collect_graphs(2, EnumMode::CyclicallyReduced);
  ASSERT_EQ(gs.size(), 5u);
  int d2 = 0, d3 = 0, d4 = 0;
  for (const auto& g : gs) {
    d2 += is_isomorphic(g, make_delta2(), false);
    d3 += is_isomorphic(g, make_delta3(), false);
    d4 += is_isomorphic(g, make_delta4(), false);
  }
  EXPECT_EQ(d2, 2);
  EXPECT_EQ(d3, 2);
  EXPECT_EQ(d4, 1);
}

TEST(Oracle, EnumerationFollowsJsonOrder) {
  for (auto mode : {EnumMode::CyclicallyReduced, EnumMode::ReducedRooted}) {
    std::vector<std::string> seen;
    enumerate_graphs(4, mode, [&](const ModularGraph& g) { seen.push_back(encode(g)); });
    for (std::size_t i = 1; i < seen.size(); ++i) ASSERT_LT(seen[i - 1], seen[i]) << to_string(mode);
  }
}

TEST(Oracle, RootedCountsFromCyclicGraphs) {
  for (int n = 2; n <= 6; ++n) {
    std::uint64_t expected = 0;
    enumerate_graphs(n, EnumMode::CyclicallyReduced,
                     [&](const ModularGraph& g) { expected += static_cast<std::uint64_t>(n + loops(g)); });
    std::uint64_t got = 0;
    enumerate_graphs(n, EnumMode::ReducedRooted, [&](const ModularGraph& g) {
      ++got;
      ASSERT_TRUE(validate(g, Mode::Reduced)) << encode(g);
    });
    EXPECT_EQ(got, expected) << n;
  }
  EXPECT_EQ(count_graphs(3, EnumMode::ReducedRooted), 96u);
}

// (n-1)!! perfect matchings times the triangle partitions, kept when connected.
TEST(Oracle, SilhouetteCounts) {
  std::uint64_t connected = 0;
  enumerate_graphs(6, EnumMode::Silhouette, [&](const ModularGraph& g) {
    ++connected;
    ASSERT_TRUE(validate(g, Mode::Silhouette)) << encode(g);
  });
  EXPECT_EQ(connected, 600u);
  EXPECT_LE(connected, 15u * 40u);
  EXPECT_EQ(count_graphs(5, EnumMode::Silhouette), 0u);
  EXPECT_EQ(count_graphs(2, EnumMode::Silhouette), 2u);
}

TEST(Oracle, RefusesLargeSizes) {
  try {
    count_graphs(10, EnumMode::CyclicallyReduced);
    FAIL();
  } catch (const OracleError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("refusing"), std::string::npos);
    EXPECT_NE(msg.find("search space"), std::string::npos);
  }
  EXPECT_THROW(count_graphs(0, EnumMode::CyclicallyReduced), OracleError);
  EXPECT_NO_THROW(count_graphs(3, EnumMode::CyclicallyReduced, EnumOptions{3}));
  EXPECT_THROW(count_graphs(3, EnumMode::CyclicallyReduced, EnumOptions{2}), OracleError);
}

TEST(Oracle, WorkersPartitionTheEnumeration) {
  std::uint64_t total = 0;
  for (int w = 0; w < 3; ++w) total += count_graphs(5, EnumMode::CyclicallyReduced, EnumOptions{0, w, 3});
  EXPECT_EQ(total, count_graphs(5, EnumMode::CyclicallyReduced));
}

TEST(Preimages, KAfterLambda3) {
  const auto k = complete(fixture("K.json"));
  const auto moves = find_moves(k);
  const auto target = relabel_normalize(apply_move(k, moves.front()));
  const auto tau = combinatorial_type(k);
  EXPECT_EQ(count_move_preimages(target, MoveKind::Lambda3, tau), preimage_formula(MoveKind::Lambda3, tau));
  EXPECT_EQ(preimage_formula(MoveKind::Lambda3, tau), (Rational{6, 1}));
}

TEST(Preimages, PreconditionsAreEnforced) {
  const auto k = complete(fixture("K.json"));
  EXPECT_THROW(count_move_preimages(make_delta2(), MoveKind::Lambda3, combinatorial_type(k)), OracleError);
  EXPECT_THROW(count_move_preimages(make_delta2(), MoveKind::Lambda3, CombinatorialType{3, 2, 0, 0, 0}), OracleError);
  EXPECT_THROW(count_move_preimages(make_delta2(), MoveKind::Exceptional, combinatorial_type(k)), OracleError);
  EXPECT_FALSE(preimage_precondition(MoveKind::Lambda3, CombinatorialType{3, 1, 1, 1, 0}).empty());
  EXPECT_THROW(verify_preimages(9), OracleError);
}

// Every admissible target at small sizes receives exactly the formula's weight.
TEST(Preimages, EveryTargetMatchesFormula) {
  const MoveKind kinds[] = {MoveKind::Lambda3, MoveKind::Lambda21, MoveKind::Lambda22, MoveKind::Kappa3};
  int checked = 0;
  for (int n = 2; n <= 5; ++n) {
    std::vector<ModularGraph> smaller = collect_graphs(n - 1, EnumMode::CyclicallyReduced);
    if (n >= 3) {
      auto more = collect_graphs(n - 2, EnumMode::CyclicallyReduced);
      smaller.insert(smaller.end(), more.begin(), more.end());
    }
    for (MoveKind k : kinds) {
      const TypeDelta d = k == MoveKind::Lambda3    ? TypeDelta::lambda3()
                          : k == MoveKind::Lambda21 ? TypeDelta::lambda21()
                          : k == MoveKind::Lambda22 ? TypeDelta::lambda22()
                                                    : TypeDelta::kappa3();
      for (const auto& target : smaller) {
        const auto tau = combinatorial_type(target) - d;
        if (tau.n != n || !preimage_precondition(k, tau).empty()) continue;
        ASSERT_EQ(count_move_preimages(target, k, tau), preimage_formula(k, tau)) << to_string(k) << " " << encode(target);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Preimages, RowsHoldUpToSix) {
  for (int n = 2; n <= 6; ++n) {
    const auto rows = verify_preimages(n);
    for (const auto& r : rows) {
      EXPECT_TRUE(r.ok) << to_string(r.kind) << " " << to_string(r.tau) << " hit " << r.targets_hit << "/" << r.targets;
    }
  }
}

TEST(Uniformity, FibersAreEqualUpToSix) {
  for (int n = 1; n <= 6; ++n) {
    const auto rep = verify_uniformity(n);
    EXPECT_TRUE(rep.ok) << n << ": " << rep.failure;
    EXPECT_FALSE(rep.tables.empty());
  }
}

TEST(Uniformity, TargetSets) {
  EXPECT_EQ(silhouette_targets(1).size(), 1u);
  EXPECT_EQ(silhouette_targets(2).size(), 1u);
  EXPECT_EQ(silhouette_targets(6).size(), 600u);
}
