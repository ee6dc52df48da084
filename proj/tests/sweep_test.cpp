#include <gtest/gtest.h>

#include "support.hpp"

namespace geoplace {
namespace {

const ScenarioConfig& day() {
  static const ScenarioConfig cfg = default_scenario(24);
  return cfg;
}

SweepSpec small_spec() {
  SweepSpec s;
  s.multipliers = {0.5, 1.0, 2.5};
  s.policies = {PolicyKind::local_only, PolicyKind::joint};
  return s;
}

const FrontierRow& row(const FrontierTable& t, double mult, PolicyKind k) {
  for (const auto& r : t.rows)
    if (r.multiplier == mult && r.policy == k) return r;
  throw Error("row not found");
}

TEST(FrictionPresets, MapToComponents) {
  const auto& base = day().task_class("B").friction;
  const auto f = [&](FrictionCase fc) { return with_friction(day(), fc, 3.0).task_class("B").friction; };
  EXPECT_EQ(f(FrictionCase::off), FrictionParams{});
  EXPECT_EQ(f(FrictionCase::egress_only), (FrictionParams{0, 0, base.egress_gb_per_unit, 0}));
  EXPECT_EQ(f(FrictionCase::state_cache_egress),
            (FrictionParams{base.state_cost_per_unit, base.cache_cost_per_unit, base.egress_gb_per_unit, 0}));
  EXPECT_DOUBLE_EQ(f(FrictionCase::high).replica_cost_per_unit, 3.0 * base.replica_cost_per_unit);
  EXPECT_EQ(f(FrictionCase::baseline), base);
}

TEST(MixPresets, KeepEachNodesCapacityShare) {
  const auto changed = with_mix(day(), MixPreset::batch_heavy);
  for (int h : {0, 13})
    for (std::size_t i = 0; i < changed.nodes.size(); ++i) {
      const double before = day().nodes[i].capacity_series[h] / hourly_compute_demand(day(), h);
      const double after = changed.nodes[i].capacity_series[h] / hourly_compute_demand(changed, h);
      EXPECT_NEAR(before, after, 1e-9);
    }
}

TEST(LatencySweep, SingleMultiplierGivesOneRowPerPolicy) {
  SweepSpec s;
  s.multipliers = {1.0};
  const auto t = latency_sweep(day(), s);
  EXPECT_EQ(t.rows.size(), s.policies.size());
  EXPECT_TRUE(t.returns.empty());
}

TEST(LatencySweep, LocalOnlyRowsAreTheirOwnBaseline) {
  const auto t = latency_sweep(day(), small_spec());
  for (double m : small_spec().multipliers) {
    const auto& r = row(t, m, PolicyKind::local_only).metrics;
    EXPECT_EQ(r.rid, 0.0);
    EXPECT_EQ(*r.cost_reduction_vs_baseline, 0.0);
    EXPECT_EQ(*r.carbon_reduction_vs_baseline, 0.0);
  }
}

TEST(LatencySweep, JointRidNonDecreasingWithoutFrictionUnderLooseCapacity) {
  SweepSpec s;
  s.policies = {PolicyKind::joint};
  s.frontier_friction = FrictionCase::off;
  s.frontier_capacity = CapacityRegime::loose;
  const auto t = latency_sweep(day(), s);
  for (std::size_t k = 1; k < t.rows.size(); ++k)
    EXPECT_GE(t.rows[k].metrics.rid, t.rows[k - 1].metrics.rid) << t.rows[k].multiplier;
}

TEST(LatencySweep, LaterReturnsDoNotExceedTheFirst) {
  SweepSpec s;
  s.policies = {PolicyKind::joint};
  const auto t = latency_sweep(day(), s);
  const auto& steps = t.returns.at(PolicyKind::joint);
  ASSERT_EQ(steps.size(), 4u);
  for (std::size_t k = 1; k < steps.size(); ++k) EXPECT_LE(steps[k].erl, steps[0].erl);
}

TEST(LatencySweep, ThreadCountDoesNotChangeResults) {
  auto one = small_spec();
  auto many = small_spec();
  many.threads = 4;
  EXPECT_EQ(to_csv(frontier_table("d", latency_sweep(day(), one), one)),
            to_csv(frontier_table("d", latency_sweep(day(), many), many)));
}

TEST(LatencySweep, RejectsBadSpec) {
  SweepSpec s;
  s.multipliers = {1.0, 1.0};
  EXPECT_THROW(latency_sweep(day(), s), Error);
}

TEST(ClassAnalysis, LocalOnlyAllLocal) {
  for (const auto& r : class_analysis(day(), 1.5, {PolicyKind::local_only})) {
    EXPECT_EQ(r.shares.local, 1.0);
    EXPECT_EQ(r.shares.regional, 0.0);
    EXPECT_EQ(r.shares.energy_oriented, 0.0);
  }
}

TEST(ClassAnalysis, MaskForcingKeepsClassAHome) {
  // Masks are per class and node, so "no remote node for any source" means
  // every node is masked and all A mass takes the forced-local path.
  auto cfg = day();
  for (const auto& n : cfg.nodes) cfg.legal_mask["A"][n.id] = false;
  for (const auto& r : class_analysis(cfg, 1.5))
    if (r.task_class == "A") {
      EXPECT_EQ(r.shares.local, 1.0) << to_string(r.policy);
    }
}

TEST(ClassAnalysis, EnergyOrientedShareGrowsWithTolerance) {
  const auto rows = class_analysis(day(), 1.5, {PolicyKind::joint});
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t k = 1; k < rows.size(); ++k)
    EXPECT_LE(rows[k - 1].shares.energy_oriented, rows[k].shares.energy_oriented) << rows[k].task_class;
}

TEST(ClassAnalysis, MatchesSweepCell) {
  SweepSpec s;
  s.multipliers = {1.5};
  s.policies = {PolicyKind::joint};
  const auto t = latency_sweep(day(), s);
  const auto rows = class_analysis(day(), 1.5, {PolicyKind::joint});
  for (const auto& r : rows) {
    const auto& sweep_share = t.rows[0].metrics.tier_shares.at(r.task_class);
    EXPECT_EQ(sweep_share.local, r.shares.local);
    EXPECT_EQ(sweep_share.energy_oriented, r.shares.energy_oriented);
  }
}

double ablation_rid(const std::vector<AblationRow>& rows, FrictionCase f, CapacityRegime c, MixPreset m) {
  for (const auto& r : rows)
    if (r.friction == f && r.capacity == c && r.mix == m && r.policy == PolicyKind::joint) return r.metrics.rid;
  throw Error("cell not found");
}

TEST(Sensitivity, DirectionalEffects) {
  SweepSpec s;
  s.policies = {PolicyKind::joint};
  s.friction_cases = {FrictionCase::baseline, FrictionCase::off, FrictionCase::high};
  const auto rows = sensitivity(day(), s);
  EXPECT_EQ(rows.size(), 3u * 3u * 3u);
  using F = FrictionCase;
  using C = CapacityRegime;
  using M = MixPreset;
  EXPECT_LE(ablation_rid(rows, F::high, C::baseline, M::balanced), ablation_rid(rows, F::off, C::baseline, M::balanced));
  EXPECT_LE(ablation_rid(rows, F::baseline, C::tight, M::balanced),
            ablation_rid(rows, F::baseline, C::loose, M::balanced));
  EXPECT_GE(ablation_rid(rows, F::baseline, C::baseline, M::batch_heavy),
            ablation_rid(rows, F::baseline, C::baseline, M::interactive_heavy));
}

}  // namespace
}  // namespace geoplace
