#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace geoplace {
namespace {

using testing::three_node;

TEST(Energy, FacilityEnergy) {
  EXPECT_DOUBLE_EQ(facility_energy(1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(facility_energy(2.0, 1.2), 2.4);
  EXPECT_DOUBLE_EQ(facility_energy(0.0, 1.7), 0.0);
}

TEST(Energy, CostAndCarbon) {
  EXPECT_NEAR(energy_cost(1.0, 1.2, 0.10), 0.12, 1e-15);
  EXPECT_NEAR(carbon_cost(1.0, 1.2, 400.0), 480.0, 1e-12);
  EXPECT_DOUBLE_EQ(energy_cost(1.0, 1.2, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(carbon_cost(1.0, 1.2, 0.0), 0.0);
}

TEST(DelayPenalty, Modes) {
  EXPECT_DOUBLE_EQ(delay_penalty(250.0, 300.0, 12.0, DelayPenaltyMode::excess), 0.0);
  EXPECT_DOUBLE_EQ(delay_penalty(350.0, 300.0, 12.0, DelayPenaltyMode::excess), 50.0);
  EXPECT_DOUBLE_EQ(delay_penalty(999.0, 300.0, 61.1, DelayPenaltyMode::geographic), 61.1);
}

TEST(Migration, ZeroAtColocatedNode) {
  const auto cfg = default_scenario(24);
  for (const auto& c : cfg.classes)
    EXPECT_EQ(migration_cost(c, cfg.service("tokyo"), cfg.node("tokyo"), 50.0, cfg), MigrationCost{});
}

TEST(Migration, LowStatefulnessLeavesOnlyEgressAndReplica) {
  auto cfg = default_scenario(24);
  auto c = cfg.task_class("D");
  c.friction.replica_cost_per_unit = 0.0;
  const auto m = migration_cost(c, cfg.service("tokyo"), cfg.node("oregon"), 10.0, cfg);
  EXPECT_GT(m.egress, 0.0);
  EXPECT_EQ(m.state, 0.0);
  EXPECT_EQ(m.cache, 0.0);
  EXPECT_EQ(m.replica, 0.0);
}

TEST(Migration, MediumClassHandComputed) {
  auto cfg = three_node();
  cfg.egress_price_per_gb = 0.05;
  const auto c = testing::simple_class("B", 1000.0, 1.0, 1.0, 1, 0.0, Statefulness::medium,
                                       {0.01, 0.01, 0.001, 0.01});
  const auto m = migration_cost(c, cfg.service("a"), cfg.node("b"), 100.0, cfg);
  // 100 * (0.5*0.01 + 0.5*0.01 + 0.001*0.05 + 0.01)
  EXPECT_NEAR(m.total(), 2.005, 1e-12);
  EXPECT_NEAR(m.state, 0.5, 1e-12);
  EXPECT_NEAR(m.cache, 0.5, 1e-12);
  EXPECT_NEAR(m.egress, 0.005, 1e-12);
  EXPECT_NEAR(m.replica, 1.0, 1e-12);
}

TEST(Migration, EgressPriceMatrixOverridesScalar) {
  auto cfg = three_node();
  cfg.egress_price_per_gb = 0.05;
  cfg.egress_price_matrix["a"]["c"] = 0.2;
  const auto c = testing::simple_class("A", 1000.0, 1.0, 1.0, 1, 0.0, Statefulness::low, {0, 0, 1.0, 0});
  EXPECT_NEAR(migration_cost(c, cfg.service("a"), cfg.node("c"), 1.0, cfg).egress, 0.2, 1e-15);
  EXPECT_NEAR(migration_cost(c, cfg.service("a"), cfg.node("b"), 1.0, cfg).egress, 0.05, 1e-15);
}

TEST(RawObjective, ZeroWeightsAndIsolation) {
  const auto cfg = default_scenario(24);
  const auto& c = cfg.task_class("C");
  const auto& s = cfg.service("london");
  const auto& i = cfg.node("oregon");
  EXPECT_DOUBLE_EQ(raw_objective(c, s, i, 5, {0, 0, 0, 0}, cfg, 3.0).raw_objective, 0.0);
  const auto b = raw_objective(c, s, i, 5, {1, 0, 0, 0}, cfg, 3.0);
  EXPECT_DOUBLE_EQ(b.raw_objective, b.energy_cost_usd);
}

TEST(RawObjective, DefaultTupleMatchesIndependentRecomputation) {
  const auto cfg = default_scenario(24);
  const auto& c = cfg.task_class("C");
  const auto& s = cfg.service("london");
  const auto& i = cfg.node("oregon");
  const int h = 7;
  const double mass = 4.0;
  const PolicyWeights w{0.7, 0.002, 0.01, 1.3};
  const auto b = raw_objective(c, s, i, h, w, cfg, mass);

  const double pue = i.pue_series[h], price = i.price_series[h], moer = i.moer_series[h];
  const double e = 1.0 * mass;  // class C energy per unit
  const double ec = e * pue * price;
  const double cc = e * pue * moer;
  const double dp = mass * (136.0 / 2.0 * 1.4);                 // geographic: one-way leg
  const double mc = mass * (0.5 * 0.12 + 0.5 * 0.06 + 0.02 * 0.05 + 0.01);  // cross-continent egress
  EXPECT_NEAR(b.energy_cost_usd, ec, 1e-12);
  EXPECT_NEAR(b.carbon_g, cc, 1e-9);
  EXPECT_NEAR(b.delay_penalty, dp, 1e-9);
  EXPECT_NEAR(b.migration.total(), mc, 1e-12);
  EXPECT_NEAR(b.raw_objective, 0.7 * ec + 0.002 * cc + 0.01 * dp + 1.3 * mc, 1e-9);

  const auto& home = cfg.node("london");
  const double lec = e * home.pue_series[h] * home.price_series[h];
  const double lcc = e * home.pue_series[h] * home.moer_series[h];
  const double expected = 0.7 * ec / lec + 0.002 * cc / lcc + 0.01 * (dp / mass) / 30000.0 + 1.3 * mc / lec;
  ASSERT_TRUE(b.normalized_objective.has_value());
  EXPECT_NEAR(*b.normalized_objective, expected, 1e-12);
}

TEST(RawObjective, RecomposesFromComponents) {
  const auto cfg = default_scenario(24);
  const PolicyWeights w{1.1, 0.003, 0.02, 0.9};
  for (const auto& c : cfg.classes)
    for (const auto& i : cfg.nodes) {
      const auto b = raw_objective(c, cfg.service("dubai"), i, 11, w, cfg, 2.5);
      EXPECT_NEAR(b.raw_objective,
                  w.alpha * b.energy_cost_usd + w.beta * b.carbon_g + w.gamma * b.delay_penalty +
                      w.eta * b.migration.total(),
                  1e-9 * std::max(1.0, std::abs(b.raw_objective)));
    }
}

TEST(RawObjective, LinearInMass) {
  const auto cfg = default_scenario(24);
  const auto& c = cfg.task_class("B");
  const auto one = raw_objective(c, cfg.service("tokyo"), cfg.node("singapore"), 2, cfg.weights, cfg, 1.0);
  const auto six = raw_objective(c, cfg.service("tokyo"), cfg.node("singapore"), 2, cfg.weights, cfg, 6.0);
  EXPECT_NEAR(six.raw_objective, 6.0 * one.raw_objective, 1e-9 * six.raw_objective);
  EXPECT_NEAR(*six.normalized_objective, *one.normalized_objective, 1e-12);
}

TEST(NormalizedObjective, SelfNormalizationAtColocatedNode) {
  const auto cfg = three_node(400.0);
  const auto& c = cfg.classes[0];
  const PolicyWeights w{1.0, 1.0, 1.0, 1.0};
  EXPECT_NEAR(normalized_objective(c, cfg.service("a"), cfg.node("a"), 0, w, cfg), 1.0 + 1.0 + 1.0 / 400.0,
              1e-15);
}

TEST(NormalizedObjective, HalfPriceEqualCarbon) {
  const auto cfg = three_node();
  const PolicyWeights w{1.0, 1.0, 0.0, 0.0};
  // b: half of a's price, same carbon and PUE.
  EXPECT_NEAR(normalized_objective(cfg.classes[0], cfg.service("a"), cfg.node("b"), 0, w, cfg), 1.5, 1e-15);
}

TEST(NormalizedObjective, DegenerateNormalizerNamesNodeAndHour) {
  auto cfg = three_node(1000.0, 3);
  cfg.nodes[0].price_series[2] = 0.0;
  try {
    normalized_objective(cfg.classes[0], cfg.service("a"), cfg.node("b"), 2, {}, cfg);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("'a'"), std::string::npos) << msg;
    EXPECT_NE(msg.find("hour 2"), std::string::npos) << msg;
  }
}

TEST(NormalizedObjective, InvariantToPriceAndCarbonUnits) {
  auto cfg = default_scenario(24);
  auto scaled = cfg;
  for (auto& n : scaled.nodes) {
    for (auto& p : n.price_series) p *= 1000.0;  // $/kWh -> $/MWh-style units
    for (auto& m : n.moer_series) m /= 1000.0;   // g -> kg
  }
  // Friction is normalized by local energy cost, so rescale it alongside.
  for (auto& c : scaled.classes) {
    c.friction.state_cost_per_unit *= 1000.0;
    c.friction.cache_cost_per_unit *= 1000.0;
    c.friction.egress_gb_per_unit *= 1000.0;
    c.friction.replica_cost_per_unit *= 1000.0;
  }
  for (const auto& c : cfg.classes)
    for (const auto& i : cfg.nodes) {
      const double a = normalized_objective(c, cfg.service("virginia"), i, 4, cfg.weights, cfg);
      const double b = normalized_objective(scaled.task_class(c.id), scaled.service("virginia"),
                                            scaled.node(i.id), 4, scaled.weights, scaled);
      EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(a))) << c.id << " " << i.id;
    }
}

TEST(NormalizedObjective, ArgminStableUnderUniformPriceScaling) {
  const auto cfg = default_scenario(24);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> k(0.1, 10.0);
  for (int trial = 0; trial < 5; ++trial) {
    auto scaled = cfg;
    const double f = k(rng);
    for (auto& n : scaled.nodes)
      for (auto& p : n.price_series) p *= f;
    for (auto& c : scaled.classes) {
      c.friction.state_cost_per_unit *= f;
      c.friction.cache_cost_per_unit *= f;
      c.friction.egress_gb_per_unit *= f;
      c.friction.replica_cost_per_unit *= f;
    }
    const Policy p = Policy::of(PolicyKind::joint, cfg);
    for (const auto& c : cfg.classes)
      EXPECT_EQ(rank_nodes(p, c, cfg.service("frankfurt"), 9, cfg).front(),
                rank_nodes(p, scaled.task_class(c.id), scaled.service("frankfurt"), 9, scaled).front());
  }
}

TEST(NetBenefit, SignCases) {
  auto cfg = three_node();
  const auto& c = cfg.classes[0];
  const PolicyWeights w{1.0, 1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(net_benefit(c, cfg.service("a"), cfg.node("a"), 0, w, cfg), 0.0);
  // c is cheaper and cleaner than a with no friction.
  EXPECT_GT(net_benefit(c, cfg.service("a"), cfg.node("c"), 0, w, cfg), 0.0);

  // Same node, but with a replica cost far above the energy saving.
  cfg.classes[0].friction.replica_cost_per_unit = 1.0;
  EXPECT_LT(net_benefit(cfg.classes[0], cfg.service("a"), cfg.node("c"), 0, w, cfg), 0.0);
  // Still latency-feasible.
  EXPECT_TRUE(feasible_set(cfg.classes[0], cfg.service("a"), 0, cfg).contains("c"));
}

TEST(LocalDefault, NearestRegionOption) {
  auto cfg = three_node();
  cfg.local_default = LocalDefault::nearest_region;
  // Masking the colocated node makes the nearest allowed node the default.
  cfg.legal_mask["A"]["a"] = false;
  EXPECT_EQ(local_default_node(cfg.classes[0], cfg.service("a"), cfg).id, "b");
}

}  // namespace
}  // namespace geoplace
