#include <gtest/gtest.h>

#include "support.hpp"

using namespace modgroup;
using namespace testsupport;

namespace {

ModularGraph from(const char* json) { return decode(json); }

}  // namespace

TEST(Graph, EdgeConflictsThrow) {
  ModularGraph g(3);
  g.set_alpha(0, 1);
  EXPECT_THROW(g.set_alpha(0, 2), GraphError);
  EXPECT_THROW(g.set_alpha(2, 1), GraphError);
  g.set_beta(0, 2);
  EXPECT_THROW(g.set_beta(0, 1), GraphError);
  EXPECT_THROW(g.set_beta(1, 2), GraphError);
  EXPECT_NO_THROW(g.set_alpha(0, 1));
}

TEST(Graph, LabelsMustIncrease) {
  EXPECT_THROW(ModularGraph(std::vector<Label>{2, 2}), GraphError);
  EXPECT_THROW(ModularGraph(std::vector<Label>{0, 3}), GraphError);
  ModularGraph g(std::vector<Label>{3, 7});
  EXPECT_FALSE(g.is_labeled());
  EXPECT_EQ(g.find_label(7), 1);
  g.normalize_labels();
  EXPECT_TRUE(g.is_labeled());
}

TEST(Graph, DeltaTypes) {
  EXPECT_EQ(combinatorial_type(make_delta1()), (CombinatorialType{1, 0, 0, 1, 1}));
  EXPECT_EQ(combinatorial_type(make_delta2()), (CombinatorialType{2, 1, 1, 0, 0}));
  EXPECT_EQ(combinatorial_type(make_delta3()), (CombinatorialType{2, 0, 1, 2, 0}));
  EXPECT_EQ(combinatorial_type(make_delta4()), (CombinatorialType{2, 1, 0, 0, 2}));
  EXPECT_TRUE(is_delta2(make_delta2()));
  EXPECT_TRUE(validate(make_delta2(), Mode::Silhouette));
  EXPECT_TRUE(validate(make_delta1(), Mode::Silhouette));
  EXPECT_FALSE(validate(make_delta4(), Mode::Silhouette));
}

TEST(Graph, TypeOfFixtures) {
  EXPECT_EQ(combinatorial_type(fixture("H.json")), (CombinatorialType{6, 3, 0, 0, 0}));
  EXPECT_EQ(combinatorial_type(fixture("K.json")), (CombinatorialType{6, 3, 1, 0, 1}));
  EXPECT_EQ(combinatorial_type(fixture("L.json")), (CombinatorialType{13, 6, 0, 1, 1}));
}

TEST(Graph, ValidationMessages) {
  const auto chain = from(R"({"n":3,"alpha":[[1,1],[2,2],[3,3]],"beta":[[1,2],[2,3]],"root":null})");
  const auto v = validate(chain, Mode::CyclicallyReduced);
  EXPECT_FALSE(v);
  EXPECT_NE(v.message.find("triangle"), std::string::npos);

  const auto split = from(R"({"n":2,"alpha":[[1,1],[2,2]],"beta":[[1,1],[2,2]],"root":null})");
  EXPECT_NE(validate(split, Mode::CyclicallyReduced).message.find("not connected"), std::string::npos);

  const auto bare = from(R"({"n":2,"alpha":[[1,2]],"beta":[[1,1]],"root":1})");
  EXPECT_NE(validate(bare, Mode::CyclicallyReduced).message.find("without b-edge"), std::string::npos);
  EXPECT_NE(validate(bare, Mode::Reduced).message.find("without b-edge"), std::string::npos);

  const auto rooted = from(R"({"n":2,"alpha":[[1,2]],"beta":[[2,2]],"root":1})");
  EXPECT_TRUE(validate(rooted, Mode::Reduced));
  EXPECT_FALSE(validate(rooted, Mode::CyclicallyReduced));

  EXPECT_FALSE(validate(ModularGraph(), Mode::Reduced));
}

TEST(Graph, CompleteAddsOnlyMissingLoops) {
  const auto rooted = from(R"({"n":2,"alpha":[[1,2]],"beta":[[2,2]],"root":1})");
  const auto full = complete(rooted);
  EXPECT_EQ(combinatorial_type(full), (CombinatorialType{2, 1, 0, 0, 2}));
  EXPECT_EQ(complete(full), full);
}

TEST(Graph, WithoutKeepsLabels) {
  auto g = fixture("K.json");
  std::vector<bool> dead(g.size(), false);
  dead[0] = true;
  const auto h = g.without(dead);
  EXPECT_EQ(h.n(), 5);
  EXPECT_EQ(h.label(0), 2);
  EXPECT_FALSE(h.has_root());
}

TEST(Serialize, JsonRoundTrip) {
  for (const char* f : {"H.json", "K.json", "L.json", "L_quasi_silhouette.json"}) {
    const auto g = fixture(f);
    EXPECT_EQ(decode(encode(g)), g) << f;
  }
  EXPECT_EQ(encode(make_delta2()), R"({"n":2,"alpha":[[1,2]],"beta":[[1,2]],"root":null})");
}

TEST(Serialize, DotRoundTrip) {
  for (const char* f : {"H.json", "K.json", "L.json", "L_quasi_silhouette.json"}) {
    const auto g = fixture(f);
    EXPECT_EQ(from_dot(to_dot(g)), g) << f;
  }
}

TEST(Serialize, RejectsMalformedInput) {
  EXPECT_THROW(decode("not json"), GraphError);
  EXPECT_THROW(decode(R"({"alpha":[]})"), GraphError);
  EXPECT_THROW(decode(R"({"n":2,"alpha":[[1,3]],"beta":[]})"), GraphError);
  EXPECT_THROW(decode(R"({"n":2,"alpha":[[1,2],[1,1]],"beta":[]})"), GraphError);
  EXPECT_THROW(decode(R"({"n":2,"alpha":[],"beta":[[1,2],[1,1]]})"), GraphError);
}

TEST(GraphProperty, IsomorphismSurvivesRelabeling) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    ModularGraph g = sample_reduced_rooted(n, rng);
    const ModularGraph h = shuffled(g, rng);
    ASSERT_TRUE(is_isomorphic(g, h, true));
    ASSERT_TRUE(is_isomorphic(g, h, false));
    ASSERT_EQ(canonical_form(g, false), canonical_form(h, false));
    ASSERT_EQ(combinatorial_type(g), combinatorial_type(h));
    ASSERT_TRUE(is_isomorphic(bfs_relabel(g), g, true));
  }
}

TEST(GraphProperty, RootMattersForRootedIsomorphism) {
  const auto k = fixture("K.json");
  auto moved = k;
  moved.set_root(5);
  EXPECT_TRUE(is_isomorphic(k, moved, false));
  EXPECT_FALSE(is_isomorphic(k, moved, true));
}

TEST(GraphProperty, TypesAreConsistent) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 60);
    const auto g = sample_cyclically_reduced(n, rng);
    const auto t = combinatorial_type(g);
    ASSERT_TRUE(t.consistent()) << to_string(t);
    ASSERT_EQ(2 * t.k2 + t.l2, n);
    ASSERT_EQ((n - 2 * t.k3 - t.l3) % 3, 0);
    ASSERT_TRUE(validate(g, Mode::CyclicallyReduced)) << validate(g, Mode::CyclicallyReduced).message;
  }
}
