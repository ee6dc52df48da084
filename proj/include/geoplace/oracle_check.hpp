#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "geoplace/allocator.hpp"

namespace geoplace {

struct SubInstance {
  int hour = 0;
  std::vector<WorkloadSlice> tasks;
  std::vector<std::string> nodes;
  BinaryInstance instance;
};

/// Small binary sub-instances of a scenario: for each hour, five nodes
/// (rotating with the hour), up to `max_tasks` slices sourced from those
/// nodes' regions, and capacities equal to each node's hourly capacity
/// scaled by the sub-instance's share of hourly compute demand.
inline std::vector<SubInstance> extract_sub_instances(const ScenarioConfig& cfg, int hours,
                                                      std::size_t max_tasks,
                                                      double capacity_scale = 1.0) {
  if (max_tasks < 1 || max_tasks > 10) throw Error("max tasks must be in [1, 10]");
  std::vector<SubInstance> out;
  const std::size_t N = cfg.nodes.size();
  const std::size_t pick = std::min<std::size_t>(5, N);
  for (int h = 0; h < std::min(hours, cfg.horizon_hours); ++h) {
    SubInstance sub;
    sub.hour = h;
    for (std::size_t j = 0; j < pick; ++j)
      sub.nodes.push_back(cfg.nodes[(static_cast<std::size_t>(h) + 2 * j) % N].id);
    std::sort(sub.nodes.begin(), sub.nodes.end());
    sub.nodes.erase(std::unique(sub.nodes.begin(), sub.nodes.end()), sub.nodes.end());

    std::vector<WorkloadSlice> eligible;
    double hour_demand = 0.0;
    for (const auto& sl : make_slices(cfg, h)) {
      hour_demand += cfg.task_class(sl.task_class).compute_demand * sl.mass;
      const auto& src = cfg.service(sl.service_node).colocated_compute;
      if (sl.mass > 0.0 && std::find(sub.nodes.begin(), sub.nodes.end(), src) != sub.nodes.end())
        eligible.push_back(sl);
    }
    if (eligible.empty()) continue;
    const std::size_t K = std::min(max_tasks, eligible.size());
    for (std::size_t k = 0; k < K; ++k) sub.tasks.push_back(eligible[k * eligible.size() / K]);

    double sub_demand = 0.0;
    for (const auto& t : sub.tasks) sub_demand += cfg.task_class(t.task_class).compute_demand * t.mass;
    std::vector<double> cap;
    for (const auto& id : sub.nodes) {
      const double c = cfg.node(id).capacity_series.at(static_cast<std::size_t>(h));
      cap.push_back(hour_demand > 0.0 ? c * sub_demand / hour_demand * capacity_scale : c);
    }
    sub.instance = build_binary_instance(cfg, h, sub.tasks, sub.nodes, cap);
    out.push_back(std::move(sub));
  }
  return out;
}

struct OracleCheckReport {
  std::size_t instances = 0;
  std::size_t both_feasible = 0;
  std::size_t agreements = 0;        // equal objectives
  std::size_t greedy_infeasible = 0; // oracle feasible, greedy stuck
  std::size_t oracle_infeasible = 0;
  double max_relative_gap = 0.0;
  double mean_relative_gap = 0.0;    // over both-feasible instances
};

inline double relative_gap(double greedy, double optimum) {
  if (optimum == 0.0) return greedy == 0.0 ? 0.0 : std::abs(greedy);
  return (greedy - optimum) / std::abs(optimum);
}

/// Greedy binary placement versus exhaustive optimum on each instance.
inline OracleCheckReport compare_greedy_to_oracle(const std::vector<BinaryInstance>& instances) {
  OracleCheckReport r;
  double gap_sum = 0.0;
  for (const auto& inst : instances) {
    ++r.instances;
    const auto opt = exact_oracle(inst);
    const auto greedy = greedy_binary(inst);
    if (!opt.feasible) {
      ++r.oracle_infeasible;
      continue;
    }
    if (!greedy.feasible) {
      ++r.greedy_infeasible;
      continue;
    }
    ++r.both_feasible;
    const double gap = relative_gap(greedy.objective, opt.objective);
    if (greedy.objective == opt.objective) ++r.agreements;
    r.max_relative_gap = std::max(r.max_relative_gap, gap);
    gap_sum += gap;
  }
  if (r.both_feasible > 0) r.mean_relative_gap = gap_sum / static_cast<double>(r.both_feasible);
  return r;
}

}  // namespace geoplace
