#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "geoplace/cost.hpp"
#include "geoplace/feasibility.hpp"
#include "geoplace/types.hpp"

namespace geoplace {

enum class PolicyKind { local_only, nearest_region, price_only, carbon_only, joint };

inline const char* to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::local_only: return "local_only";
    case PolicyKind::nearest_region: return "nearest_region";
    case PolicyKind::price_only: return "price_only";
    case PolicyKind::carbon_only: return "carbon_only";
    case PolicyKind::joint: return "joint";
  }
  return "?";
}

inline std::optional<PolicyKind> parse_policy(const std::string& s) {
  for (auto k : {PolicyKind::local_only, PolicyKind::nearest_region, PolicyKind::price_only,
                 PolicyKind::carbon_only, PolicyKind::joint})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

inline constexpr PolicyKind kAllPolicies[] = {PolicyKind::local_only, PolicyKind::nearest_region,
                                              PolicyKind::price_only, PolicyKind::carbon_only,
                                              PolicyKind::joint};

struct Policy {
  PolicyKind kind = PolicyKind::local_only;
  PolicyWeights weights;  // used by joint only

  static Policy of(PolicyKind k, const ScenarioConfig& cfg) { return {k, cfg.weights}; }
};

struct Placement {
  std::string node;
  double fraction = 0.0;
  double mass = 0.0;
  double service_to_compute_ms = 0.0;
  double latency_ms = 0.0;  // end-to-end
  CostBreakdown cost;       // for the placed mass
  double forced_mass = 0.0; // part placed through the forced-local overflow path
};

struct AssignmentRecord {
  WorkloadSlice slice;
  std::vector<Placement> placements;
  bool violation_flag = false;
};

using Trace = std::vector<AssignmentRecord>;

/// Splits hour h's demand into one slice per (service node, class), in
/// allocation order: class id, then service node id.
inline std::vector<WorkloadSlice> make_slices(const ScenarioConfig& cfg, int hour) {
  double wsum = 0.0;
  for (const auto& s : cfg.service_nodes) wsum += s.demand_weight;
  std::vector<const TaskClass*> classes;
  for (const auto& c : cfg.classes) classes.push_back(&c);
  std::sort(classes.begin(), classes.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::vector<const ServiceNode*> services;
  for (const auto& s : cfg.service_nodes) services.push_back(&s);
  std::sort(services.begin(), services.end(), [](auto* a, auto* b) { return a->id < b->id; });

  const double total = cfg.demand_series.at(static_cast<std::size_t>(hour));
  std::vector<WorkloadSlice> out;
  for (const auto* c : classes) {
    const auto mix = cfg.class_mix.find(c->id);
    const double share = mix == cfg.class_mix.end() ? 0.0 : mix->second;
    for (const auto* s : services)
      out.push_back({hour, s->id, c->id, total * (s->demand_weight / wsum) * share});
  }
  return out;
}

namespace detail {

template <class Key>
std::vector<std::string> sort_members(const FeasibleSet& fs, Key key) {
  std::vector<std::pair<double, std::string>> keyed;
  for (const auto& m : fs.members) keyed.emplace_back(key(m), m.node);
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  for (auto& [k, id] : keyed) out.push_back(std::move(id));
  return out;
}

}  // namespace detail

/// Feasible nodes in the policy's preference order (ties by node id).
/// Price-only and carbon-only rank on the facility-level signal, i.e. the
/// price or MOER multiplied by the node's PUE.
inline std::vector<std::string> rank_nodes(const Policy& policy, const TaskClass& c,
                                           const ServiceNode& s, int hour,
                                           const ScenarioConfig& cfg) {
  const auto fs = feasible_set(c, s, hour, cfg);
  const auto t = static_cast<std::size_t>(hour);
  switch (policy.kind) {
    case PolicyKind::local_only:
      if (fs.contains(s.colocated_compute)) return {s.colocated_compute};
      return {};
    case PolicyKind::nearest_region:
      return detail::sort_members(fs, [](const FeasibleMember& m) { return m.latency_ms; });
    case PolicyKind::price_only:
      return detail::sort_members(fs, [&](const FeasibleMember& m) {
        const auto& n = cfg.node(m.node);
        return n.price_series.at(t) * n.pue_series.at(t);
      });
    case PolicyKind::carbon_only:
      return detail::sort_members(fs, [&](const FeasibleMember& m) {
        const auto& n = cfg.node(m.node);
        return n.moer_series.at(t) * n.pue_series.at(t);
      });
    case PolicyKind::joint:
      return detail::sort_members(fs, [&](const FeasibleMember& m) {
        return normalized_objective(c, s, cfg.node(m.node), hour, policy.weights, cfg);
      });
  }
  return {};
}

namespace detail {

inline Placement make_placement(const TaskClass& c, const ServiceNode& s, const ComputeNode& n,
                                int hour, double mass, const ScenarioConfig& cfg) {
  Placement p;
  p.node = n.id;
  p.mass = mass;
  p.service_to_compute_ms = service_to_compute_ms(s, n, cfg);
  p.latency_ms = end_to_end_ms(c, s.client_latency_ms, p.service_to_compute_ms,
                               cfg.rounds_as_round_trips);
  p.cost = raw_objective(c, s, n, hour, cfg.weights, cfg, mass);
  return p;
}

}  // namespace detail

/// Greedy ranked water-filling for one hour. `remaining` holds each node's
/// unused compute capacity (indexed like cfg.nodes) and is updated in place.
/// Slices are processed in class, service node, then input order.
inline std::vector<AssignmentRecord> allocate_hour(std::vector<WorkloadSlice> slices,
                                                   const Policy& policy, int hour,
                                                   const ScenarioConfig& cfg,
                                                   std::vector<double>& remaining) {
  std::stable_sort(slices.begin(), slices.end(), [](const auto& a, const auto& b) {
    if (a.task_class != b.task_class) return a.task_class < b.task_class;
    return a.service_node < b.service_node;
  });

  std::vector<AssignmentRecord> out;
  out.reserve(slices.size());
  for (const auto& slice : slices) {
    if (slice.hour != hour) throw Error("slice hour does not match allocation hour");
    const auto& c = cfg.task_class(slice.task_class);
    const auto& s = cfg.service(slice.service_node);
    const double tau = effective_budget(c, cfg.latency_multiplier);
    AssignmentRecord rec{slice, {}, false};

    struct Pour {
      std::string node;
      double mass;
      bool forced;
    };
    std::vector<Pour> pours;
    const auto ranked = rank_nodes(policy, c, s, hour, cfg);
    double left = slice.mass;
    for (const auto& id : ranked) {
      if (left <= 0.0) break;
      auto& cap = remaining[cfg.node_index(id)];
      double take = left;
      if (c.compute_demand > 0.0) take = std::min(left, std::max(cap, 0.0) / c.compute_demand);
      if (take <= 0.0) continue;
      // Absorb floating-point dust so a slice that fits lands in one piece.
      if (left - take <= 1e-12 * slice.mass) take = left;
      cap -= take * c.compute_demand;
      left -= take;
      pours.push_back({id, take, false});
    }
    if (left > 0.0) {
      remaining[cfg.node_index(s.colocated_compute)] -= left * c.compute_demand;
      pours.push_back({s.colocated_compute, left, true});
    }
    if (pours.empty())
      pours.push_back({ranked.empty() ? s.colocated_compute : ranked.front(), 0.0, false});

    for (const auto& pour : pours) {
      auto it = std::find_if(rec.placements.begin(), rec.placements.end(),
                             [&](const Placement& p) { return p.node == pour.node; });
      if (it == rec.placements.end()) {
        rec.placements.push_back(detail::make_placement(c, s, cfg.node(pour.node), hour, 0.0, cfg));
        it = std::prev(rec.placements.end());
      }
      it->mass += pour.mass;
      if (pour.forced) it->forced_mass += pour.mass;
    }
    for (auto& p : rec.placements)
      p.cost = raw_objective(c, s, cfg.node(p.node), hour, cfg.weights, cfg, p.mass);

    double assigned = 0.0;
    for (std::size_t k = 0; k < rec.placements.size(); ++k) {
      auto& p = rec.placements[k];
      if (slice.mass > 0.0)
        p.fraction = (k + 1 == rec.placements.size()) ? 1.0 - assigned : p.mass / slice.mass;
      else
        p.fraction = (k + 1 == rec.placements.size()) ? 1.0 - assigned : 0.0;
      assigned += p.fraction;
      if (p.mass > 0.0 && p.latency_ms > tau) rec.violation_flag = true;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<double> hourly_capacity(const ScenarioConfig& cfg, int hour) {
  std::vector<double> cap;
  cap.reserve(cfg.nodes.size());
  for (const auto& n : cfg.nodes) cap.push_back(n.capacity_series.at(static_cast<std::size_t>(hour)));
  return cap;
}

inline std::vector<AssignmentRecord> allocate_hour(std::vector<WorkloadSlice> slices,
                                                   const Policy& policy, int hour,
                                                   const ScenarioConfig& cfg) {
  auto cap = hourly_capacity(cfg, hour);
  return allocate_hour(std::move(slices), policy, hour, cfg, cap);
}

/// Full-horizon trace: allocate_hour over every hour, concatenated.
inline Trace run_horizon(const ScenarioConfig& cfg, const Policy& policy) {
  Trace trace;
  for (int h = 0; h < cfg.horizon_hours; ++h) {
    auto hour = allocate_hour(make_slices(cfg, h), policy, h, cfg);
    trace.insert(trace.end(), std::make_move_iterator(hour.begin()),
                 std::make_move_iterator(hour.end()));
  }
  return trace;
}

inline Trace run_horizon(const ScenarioConfig& cfg, PolicyKind kind) {
  return run_horizon(cfg, Policy::of(kind, cfg));
}

// ---------------------------------------------------------------------------
// Binary instances: the un-relaxed assignment problem, used to check the
// greedy allocator against exhaustive search.

struct BinaryTask {
  double demand = 0.0;              // compute units
  std::vector<double> cost;         // per node
  std::vector<bool> feasible;       // per node
};

struct BinaryInstance {
  std::vector<BinaryTask> tasks;
  std::vector<double> capacity;     // per node
};

struct BinaryResult {
  bool feasible = false;
  std::vector<int> assignment;      // node index per task
  double objective = 0.0;
};

namespace detail {

inline bool fits(double used, double demand, double cap) {
  return used + demand <= cap + 1e-9 * std::max(1.0, std::abs(cap));
}

inline void check_instance(const BinaryInstance& inst) {
  for (const auto& t : inst.tasks)
    if (t.cost.size() != inst.capacity.size() || t.feasible.size() != inst.capacity.size())
      throw Error("binary instance: per-node vectors disagree with node count");
}

}  // namespace detail

/// Tasks in order, each to its cheapest feasible node with room left
/// (ties by node index). Reports infeasible if some task cannot be placed.
inline BinaryResult greedy_binary(const BinaryInstance& inst) {
  detail::check_instance(inst);
  const std::size_t n = inst.capacity.size();
  std::vector<double> used(n, 0.0);
  BinaryResult r{true, {}, 0.0};
  for (const auto& t : inst.tasks) {
    int best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!t.feasible[i] || !detail::fits(used[i], t.demand, inst.capacity[i])) continue;
      if (best < 0 || t.cost[i] < t.cost[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
    }
    if (best < 0) return {false, {}, 0.0};
    used[static_cast<std::size_t>(best)] += t.demand;
    r.assignment.push_back(best);
    r.objective += t.cost[static_cast<std::size_t>(best)];
  }
  return r;
}

/// Globally optimal binary assignment by depth-first enumeration with a
/// lower-bound prune. Intended for small instances (<= 10 tasks, <= 5 nodes).
inline BinaryResult exact_oracle(const BinaryInstance& inst) {
  detail::check_instance(inst);
  if (inst.tasks.size() > 16 || inst.capacity.size() > 8)
    throw Error("exact oracle limited to small instances");
  const std::size_t K = inst.tasks.size();
  const std::size_t N = inst.capacity.size();

  std::vector<double> min_cost(K, std::numeric_limits<double>::infinity());
  std::vector<std::vector<int>> order(K);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < N; ++i)
      if (inst.tasks[k].feasible[i]) {
        order[k].push_back(static_cast<int>(i));
        min_cost[k] = std::min(min_cost[k], inst.tasks[k].cost[i]);
      }
    if (order[k].empty()) return {false, {}, 0.0};
    std::stable_sort(order[k].begin(), order[k].end(), [&](int a, int b) {
      return inst.tasks[k].cost[static_cast<std::size_t>(a)] <
             inst.tasks[k].cost[static_cast<std::size_t>(b)];
    });
  }
  std::vector<double> suffix(K + 1, 0.0);
  for (std::size_t k = K; k-- > 0;) suffix[k] = suffix[k + 1] + min_cost[k];

  BinaryResult best{false, {}, std::numeric_limits<double>::infinity()};
  std::vector<int> current(K, -1);
  std::vector<double> used(N, 0.0);

  auto dfs = [&](auto&& self, std::size_t k, double partial) -> void {
    if (k == K) {
      // Re-sum in task order so ties with the greedy sum compare exactly.
      double total = 0.0;
      for (std::size_t j = 0; j < K; ++j)
        total += inst.tasks[j].cost[static_cast<std::size_t>(current[j])];
      if (!best.feasible || total < best.objective) best = {true, current, total};
      return;
    }
    if (best.feasible && partial + suffix[k] > best.objective + 1e-12 * std::abs(best.objective))
      return;
    for (int i : order[k]) {
      const auto iu = static_cast<std::size_t>(i);
      const auto& t = inst.tasks[k];
      if (!detail::fits(used[iu], t.demand, inst.capacity[iu])) continue;
      used[iu] += t.demand;
      current[k] = i;
      self(self, k + 1, partial + t.cost[iu]);
      used[iu] -= t.demand;
    }
    current[k] = -1;
  };
  dfs(dfs, 0, 0.0);
  if (!best.feasible) return {false, {}, 0.0};
  return best;
}

/// Binary sub-instance from a scenario hour: each slice is one indivisible
/// task priced with the raw weighted objective, restricted to `node_ids`.
inline BinaryInstance build_binary_instance(const ScenarioConfig& cfg, int hour,
                                            const std::vector<WorkloadSlice>& tasks,
                                            const std::vector<std::string>& node_ids,
                                            const std::vector<double>& capacity) {
  BinaryInstance inst;
  inst.capacity = capacity;
  for (const auto& sl : tasks) {
    const auto& c = cfg.task_class(sl.task_class);
    const auto& s = cfg.service(sl.service_node);
    const auto fs = feasible_set(c, s, hour, cfg);
    BinaryTask t;
    t.demand = c.compute_demand * sl.mass;
    for (const auto& id : node_ids) {
      t.cost.push_back(raw_objective(c, s, cfg.node(id), hour, cfg.weights, cfg, sl.mass).raw_objective);
      t.feasible.push_back(fs.contains(id));
    }
    inst.tasks.push_back(std::move(t));
  }
  return inst;
}

}  // namespace geoplace
