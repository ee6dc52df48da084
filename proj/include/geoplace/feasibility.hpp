#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "geoplace/latency.hpp"
#include "geoplace/types.hpp"

namespace geoplace {

struct FeasibleMember {
  std::string node;
  double latency_ms = 0.0;  // end-to-end

  bool operator==(const FeasibleMember&) const = default;
};

struct FeasibleSet {
  std::string task_class;
  std::string service_node;
  int hour = 0;
  std::vector<FeasibleMember> members;  // ascending latency, ties by node id

  bool contains(const std::string& node) const {
    return std::any_of(members.begin(), members.end(),
                       [&](const FeasibleMember& m) { return m.node == node; });
  }
  bool empty() const { return members.empty(); }
};

/// Nodes satisfying L_k(i) <= budget_ms and both masks, for an explicit
/// budget in milliseconds.
inline FeasibleSet feasible_set_at(const TaskClass& c, const ServiceNode& s, int hour,
                                   const ScenarioConfig& cfg, double budget_ms) {
  FeasibleSet fs{c.id, s.id, hour, {}};
  for (const auto& n : cfg.nodes) {
    if (!mask_allows(cfg.legal_mask, c.id, n.id) || !mask_allows(cfg.system_mask, c.id, n.id))
      continue;
    const double lat = end_to_end_ms(c, s, n, cfg);
    if (lat <= budget_ms) fs.members.push_back({n.id, lat});
  }
  std::sort(fs.members.begin(), fs.members.end(), [](const auto& a, const auto& b) {
    if (a.latency_ms != b.latency_ms) return a.latency_ms < b.latency_ms;
    return a.node < b.node;
  });
  return fs;
}

/// Feasible set under the scenario's own latency multiplier.
inline FeasibleSet feasible_set(const TaskClass& c, const ServiceNode& s, int hour,
                                const ScenarioConfig& cfg) {
  return feasible_set_at(c, s, hour, cfg, effective_budget(c, cfg.latency_multiplier));
}

/// Checks F(tau1) is a subset of F(tau2) for tau1 <= tau2 under unchanged
/// masks. Recomputes both sets rather than trusting the construction.
inline bool assert_monotone_expansion(const TaskClass& c, const ServiceNode& s, int hour,
                                      const ScenarioConfig& cfg, double tau1_ms, double tau2_ms) {
  if (tau1_ms > tau2_ms) throw Error("monotone expansion check needs tau1 <= tau2");
  const auto small = feasible_set_at(c, s, hour, cfg, tau1_ms);
  const auto large = feasible_set_at(c, s, hour, cfg, tau2_ms);
  return std::all_of(small.members.begin(), small.members.end(),
                     [&](const FeasibleMember& m) { return large.contains(m.node); });
}

}  // namespace geoplace
