#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace geoplace {
namespace {

TEST(FeasibleSet, ClassAFromVirginiaMatchesBruteForce) {
  auto cfg = default_scenario(24);
  cfg.latency_multiplier = 1.5;
  const auto& c = cfg.task_class("A");
  const auto& s = cfg.service("virginia");
  const auto fs = feasible_set(c, s, 3, cfg);
  EXPECT_TRUE(fs.contains("virginia"));
  // Independent pass: one-way leg from the RTT table or the fallback formula.
  for (const auto& n : cfg.nodes) {
    double leg;
    if (n.id == "virginia") {
      leg = 1.0;
    } else if (auto r = lookup(cfg.rtt_matrix, "virginia", n.id)) {
      leg = *r / 2.0 * 1.4;
    } else {
      leg = (great_circle_km({38.95, -77.45}, {n.latitude, n.longitude}) / 200.0 + 20.0) * 1.4;
    }
    const double total = 10.0 + 1.0 * leg + 0.0 + 50.0;
    EXPECT_EQ(fs.contains(n.id), total <= 300.0) << n.id << " " << total;
  }
  for (std::size_t k = 1; k < fs.members.size(); ++k)
    EXPECT_LE(fs.members[k - 1].latency_ms, fs.members[k].latency_ms);
}

TEST(FeasibleSet, MasksAnnihilate) {
  auto cfg = default_scenario(24);
  for (const auto& n : cfg.nodes) cfg.legal_mask["D"][n.id] = false;
  EXPECT_TRUE(feasible_set(cfg.task_class("D"), cfg.service("tokyo"), 0, cfg).empty());
  // Other classes are unaffected.
  EXPECT_FALSE(feasible_set(cfg.task_class("C"), cfg.service("tokyo"), 0, cfg).empty());
}

TEST(FeasibleSet, SystemMaskRemovesOneNode) {
  auto cfg = default_scenario(24);
  cfg.system_mask["D"]["oregon"] = false;
  const auto fs = feasible_set(cfg.task_class("D"), cfg.service("tokyo"), 0, cfg);
  EXPECT_FALSE(fs.contains("oregon"));
  EXPECT_EQ(fs.members.size(), 9u);
}

TEST(FeasibleSet, HugeMultiplierAdmitsEveryNode) {
  auto cfg = default_scenario(24);
  cfg.latency_multiplier = 1e9;
  for (const auto& c : cfg.classes)
    EXPECT_EQ(feasible_set(c, cfg.service("sydney"), 0, cfg).members.size(), 10u) << c.id;
}

TEST(MonotoneExpansion, EqualBudgets) {
  const auto cfg = default_scenario(24);
  EXPECT_TRUE(assert_monotone_expansion(cfg.task_class("A"), cfg.service("dubai"), 0, cfg, 150, 150));
}

TEST(MonotoneExpansion, ClassBFromLondon) {
  const auto cfg = default_scenario(24);
  const auto& c = cfg.task_class("B");
  const auto& s = cfg.service("london");
  EXPECT_TRUE(assert_monotone_expansion(c, s, 0, cfg, 100.0, 10000.0));
  // Enumerated directly: the small set is empty, the large one is everything.
  EXPECT_TRUE(feasible_set_at(c, s, 0, cfg, 100.0).empty());
  EXPECT_EQ(feasible_set_at(c, s, 0, cfg, 10000.0).members.size(), 10u);
}

TEST(MonotoneExpansion, RejectsReversedBudgets) {
  const auto cfg = default_scenario(24);
  EXPECT_THROW(assert_monotone_expansion(cfg.task_class("A"), cfg.service("dubai"), 0, cfg, 10, 5),
               Error);
}

TEST(MonotoneExpansion, RandomizedCases) {
  auto cfg = default_scenario(24);
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> pick_c(0, cfg.classes.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_s(0, cfg.service_nodes.size() - 1);
  std::uniform_int_distribution<int> pick_h(0, 23);
  std::uniform_real_distribution<double> tau(0.0, 5000.0);
  for (int n = 0; n < 300; ++n) {
    double t1 = tau(rng), t2 = tau(rng);
    if (t1 > t2) std::swap(t1, t2);
    EXPECT_TRUE(assert_monotone_expansion(cfg.classes[pick_c(rng)], cfg.service_nodes[pick_s(rng)],
                                          pick_h(rng), cfg, t1, t2));
  }
}

}  // namespace
}  // namespace geoplace
