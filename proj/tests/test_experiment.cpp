#include <gtest/gtest.h>

#include <cstdlib>

#include "support.hpp"

using namespace modgroup;
using namespace testsupport;

namespace {

ExperimentConfig small_config(Experiment e, std::vector<int> sizes) {
  ExperimentConfig c;
  c.experiment = e;
  c.sizes = std::move(sizes);
  c.samples_per_size = 200;
  c.master_seed = 2024;
  return c;
}

// Sets an environment variable for the lifetime of the guard.
struct EnvGuard {
  std::string name;
  EnvGuard(const char* n, const char* v) : name(n) { ::setenv(n, v, 1); }
  ~EnvGuard() { ::unsetenv(name.c_str()); }
};

}  // namespace

TEST(Config, ParsesAndValidates) {
  const auto c = config_from_json(Json::parse(
      R"({"experiment":"small-ab-cycles","sizes":[60,600],"samples-per-size":100,"alpha-exponent":"1/7","mu":0.5,"master-seed":7})"));
  EXPECT_EQ(c.experiment, Experiment::SmallAbCycles);
  EXPECT_EQ(c.sizes, (std::vector<int>{60, 600}));
  EXPECT_EQ(c.alpha, (Ratio{1, 7}));
  EXPECT_EQ(c.mu, (Ratio{1, 2}));
  EXPECT_EQ(c.master_seed, 7u);
  EXPECT_EQ(config_from_json(config_to_json(c)).alpha, c.alpha);
}

TEST(Config, RejectsBadConfigs) {
  auto bad = [](const char* text) { EXPECT_THROW(config_from_json(Json::parse(text)), ConfigError) << text; };
  bad(R"({"experiment":"silhouette-size","sizes":[600,60]})");
  bad(R"({"experiment":"silhouette-size","sizes":[]})");
  bad(R"({"experiment":"silhouette-size","sizes":[60],"samples-per-size":99})");
  bad(R"({"experiment":"silhouette-size","sizes":[60],"alpha-exponent":"1/6"})");
  bad(R"({"experiment":"silhouette-size","sizes":[60],"alpha-exponent":"0"})");
  bad(R"({"experiment":"silhouette-size","sizes":[60],"colour":"red"})");
  bad(R"({"experiment":"no-such","sizes":[60]})");
  bad(R"({"sizes":[60]})");
  bad(R"({"experiment":"silhouette-size","sizes":[60],"samplers":["bogus"]})");
  bad(R"([1,2])");
}

TEST(Config, ParseRatio) {
  EXPECT_EQ(parse_ratio("2/14"), (Ratio{1, 7}));
  EXPECT_EQ(parse_ratio("3"), (Ratio{3, 1}));
  EXPECT_EQ(parse_ratio("0.25"), (Ratio{1, 4}));
  EXPECT_EQ(parse_ratio(".5"), (Ratio{1, 2}));
  EXPECT_THROW(parse_ratio("1/0"), ConfigError);
  EXPECT_THROW(parse_ratio("x"), ConfigError);
  EXPECT_THROW(parse_ratio("-1/2"), ConfigError);
}

TEST(Config, FloorPowerIsExact) {
  EXPECT_EQ(floor_power(128, Ratio{1, 7}), 2);
  EXPECT_EQ(floor_power(127, Ratio{1, 7}), 1);
  EXPECT_EQ(floor_power(2187, Ratio{1, 7}), 3);
  EXPECT_EQ(floor_power(2186, Ratio{1, 7}), 2);
  EXPECT_EQ(floor_power(1000000, Ratio{1, 2}), 1000);
  EXPECT_EQ(floor_power(999999, Ratio{1, 2}), 999);
  EXPECT_EQ(floor_power(1000, Ratio{2, 3}), 100);
  EXPECT_EQ(floor_power(1, Ratio{1, 7}), 1);
}

TEST(Config, SeedOverride) {
  auto c = small_config(Experiment::Connectivity, {60});
  {
    EnvGuard g("MODGROUP_SEED", "0x10");
    EXPECT_TRUE(apply_seed_override(c));
    EXPECT_EQ(c.master_seed, 16u);
  }
  {
    EnvGuard g("MODGROUP_SEED", "12abc");
    EXPECT_THROW(apply_seed_override(c), ConfigError);
  }
  EXPECT_FALSE(apply_seed_override(c));
}

TEST(Experiment, IndependentOfThreadCount) {
  auto c = small_config(Experiment::SmallAbCycles, {12, 60});
  const auto one = to_csv(run_experiment(c));
  c.threads = 3;
  EXPECT_EQ(to_csv(run_experiment(c)), one);
  c.master_seed = 2025;
  EXPECT_NE(to_csv(run_experiment(c)), one);
}

TEST(Experiment, CsvAndPlotFormats) {
  const auto rep = run_experiment(small_config(Experiment::Connectivity, {60}));
  const auto csv = to_csv(rep);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, std::string("# ") + kVersion);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# config {", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line, "sampler,n,samples,statistic,estimate,stderr,basis");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6) << line;
  }
  EXPECT_EQ(rows, static_cast<int>(rep.rows.size()));
  const auto plot = plot_data(rep);
  EXPECT_EQ(plot.rfind("sampler,n,frequency,stderr\n", 0), 0u);
  EXPECT_NE(plot.find("silhouette-pairs,60,"), std::string::npos);
  EXPECT_NE(plot.find("cyclic-pairs,60,"), std::string::npos);
}

TEST(Experiment, SilhouetteSamplerHasNoDeficit) {
  auto c = small_config(Experiment::SilhouetteSize, {6, 12});
  c.samplers = {SamplerKind::Silhouette};
  const auto rep = run_experiment(c);
  for (int n : {6, 12}) {
    const auto* r = rep.find("silhouette", n, "deficit_max");
    ASSERT_NE(r, nullptr);
    EXPECT_EQ(r->estimate, 0.0);
  }
}

TEST(Experiment, DeficitStatisticsAreOrdered) {
  const auto rep = run_experiment(small_config(Experiment::SilhouetteSize, {50}));
  for (const char* s : {"cyclic", "rooted"}) {
    const double q50 = rep.find(s, 50, "deficit_q50")->estimate;
    const double q90 = rep.find(s, 50, "deficit_q90")->estimate;
    const double mx = rep.find(s, 50, "deficit_max")->estimate;
    EXPECT_LE(q50, q90);
    EXPECT_LE(q90, mx);
    EXPECT_LE(mx, 50);
    EXPECT_NEAR(rep.find(s, 50, "mean_size")->estimate + rep.find(s, 50, "mean_deficit")->estimate, 50.0, 1e-9);
  }
}

// No ab-cycle at all implies no ab-cycle in the window.
TEST(Experiment, SmallCycleFrequencyDominatesNonParabolic) {
  const auto rep = run_experiment(small_config(Experiment::SmallAbCycles, {60, 240}));
  for (const auto& r : rep.rows) {
    if (r.statistic != "no_small_ab_cycle_freq") continue;
    const auto* np = rep.find(r.sampler, r.n, "non_parabolic_freq");
    ASSERT_NE(np, nullptr);
    EXPECT_GE(r.estimate, np->estimate) << r.sampler << " " << r.n;
    if (r.sampler == "silhouette") {
      EXPECT_GE(rep.find(r.sampler, r.n, "no_simple_small_ab_cycle_freq")->estimate, r.estimate);
    }
  }
}

TEST(Experiment, FiniteIndexSamplesAreNeverMalnormal) {
  auto c = small_config(Experiment::Malnormality, {6, 12, 60});
  c.samplers = {SamplerKind::Silhouette, SamplerKind::Cyclic};
  const auto rep = run_experiment(c);
  const auto* fi = rep.find("silhouette", 6, "finite_index_samples");
  ASSERT_NE(fi, nullptr);
  EXPECT_EQ(fi->estimate, 200.0);
  for (const auto& r : rep.rows) {
    if (r.basis == "exact") {
      EXPECT_EQ(r.estimate, 0.0) << r.sampler << " " << r.n << " " << r.statistic;
    }
  }
}

TEST(Experiment, ConnectivityRejectsConnectedSamplers) {
  auto c = small_config(Experiment::Connectivity, {60});
  c.samplers = {SamplerKind::Cyclic};
  EXPECT_THROW(run_experiment(c), ConfigError);
}

TEST(Experiment, RunIndexedPropagatesErrors) {
  EXPECT_THROW(detail::run_indexed<int>(50, 3,
                                        [](std::uint64_t i) -> int {
                                          if (i == 17) throw std::runtime_error("boom");
                                          return 0;
                                        }),
               std::runtime_error);
  const auto v = detail::run_indexed<int>(10, 4, [](std::uint64_t i) { return static_cast<int>(i * i); });
  EXPECT_EQ(v[9], 81);
}
