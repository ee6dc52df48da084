#include <gtest/gtest.h>

#include "support.hpp"

namespace geoplace {
namespace {

bool has(const std::vector<Finding>& f, const std::string& entity, const std::string& msg) {
  for (const auto& x : f)
    if (x.entity == entity && x.message == msg) return true;
  return false;
}

TEST(Validate, DefaultScenarioIsClean) {
  EXPECT_TRUE(validate_scenario(default_scenario()).empty());
}

TEST(Validate, PueBelowOne) {
  auto cfg = default_scenario(24);
  cfg.nodes[3].pue_series[5] = 0.9;
  const auto f = validate_scenario(cfg);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].entity, "london");
  EXPECT_EQ(f[0].message, "pue below 1");
}

TEST(Validate, ClassMixNotNormalized) {
  auto cfg = default_scenario(24);
  cfg.class_mix["D"] = 0.05;  // sums to 0.9
  const auto f = validate_scenario(cfg);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].message, "class mix not normalized");
}

TEST(Validate, SeriesLengthNamesTheNode) {
  auto cfg = default_scenario(24);
  cfg.nodes[1].moer_series.pop_back();
  EXPECT_TRUE(has(validate_scenario(cfg), "oregon", "series length differs from horizon"));
}

TEST(Validate, BudgetBelowFixedLatency) {
  auto cfg = testing::three_node();
  cfg.classes[0].inference_time_ms = 2000.0;
  EXPECT_TRUE(has(validate_scenario(cfg), "A", "latency budget below inference, queueing and client latency"));
}

TEST(Validate, UnknownRttNodeAndNegativeWeight) {
  auto cfg = testing::three_node();
  cfg.rtt_matrix["a"]["zz"] = 5.0;
  cfg.weights.gamma = -1.0;
  const auto f = validate_scenario(cfg);
  EXPECT_TRUE(has(f, "a->zz", "rtt names an unknown node"));
  EXPECT_TRUE(has(f, "weights", "negative policy weight"));
}

TEST(EffectiveBudget, Arithmetic) {
  const auto a = testing::simple_class("A", 200.0, 1.0, 1.0);
  const auto b = testing::simple_class("B", 1000.0, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(effective_budget(a, 1.0), 200.0);
  EXPECT_DOUBLE_EQ(effective_budget(a, 1.5), 300.0);
  EXPECT_DOUBLE_EQ(effective_budget(b, 0.5), 500.0);
  EXPECT_THROW(effective_budget(a, 0.0), Error);
  EXPECT_THROW(effective_budget(a, -1.0), Error);
}

TEST(DefaultScenario, TenNamedRegions) {
  const auto cfg = default_scenario();
  ASSERT_EQ(cfg.nodes.size(), 10u);
  std::vector<std::string> names;
  for (const auto& n : cfg.nodes) names.push_back(n.display_name);
  EXPECT_EQ(names, (std::vector<std::string>{"Virginia", "Oregon", "Frankfurt", "London", "Singapore",
                                              "Tokyo", "Dubai", "Sydney", "Beijing", "São Paulo"}));
  EXPECT_EQ(cfg.horizon_hours, 168);
}

TEST(DefaultScenario, CarbonAmplitudeWithinBand) {
  const auto cfg = default_scenario();
  for (const auto& n : cfg.nodes) {
    const auto [lo, hi] = std::minmax_element(n.moer_series.begin(), n.moer_series.end());
    const double mean = (*lo + *hi) / 2.0;
    const double amp = (*hi - *lo) / 2.0 / mean;
    EXPECT_GE(amp, 0.1 - 1e-3) << n.id;
    EXPECT_LE(amp, 0.4 + 1e-3) << n.id;
  }
}

}  // namespace
}  // namespace geoplace
