#pragma once

#include <set>
#include <string>
#include <vector>

#include "geoplace/latency.hpp"
#include "geoplace/types.hpp"

namespace geoplace {

struct Finding {
  std::string entity;   // offending node / class / field
  std::string message;  // names the violated invariant

  bool operator==(const Finding&) const = default;
};

namespace detail {

inline bool any_of_series(const std::vector<double>& s, auto pred) {
  return std::any_of(s.begin(), s.end(), pred);
}

}  // namespace detail

/// Checks every scenario invariant. Returns an empty list iff the scenario
/// is valid; never throws.
inline std::vector<Finding> validate_scenario(const ScenarioConfig& cfg) {
  std::vector<Finding> out;
  auto add = [&](std::string entity, std::string msg) {
    out.push_back({std::move(entity), std::move(msg)});
  };
  const auto T = static_cast<std::size_t>(std::max(cfg.horizon_hours, 0));

  if (cfg.horizon_hours < 1) add("horizon_hours", "horizon must be at least one hour");
  if (cfg.nodes.empty()) add("nodes", "no compute nodes");
  if (cfg.service_nodes.empty()) add("service_nodes", "no service nodes");
  if (cfg.classes.empty()) add("classes", "no task classes");
  if (cfg.demand_series.size() != T) add("demand_series", "series length differs from horizon");
  if (detail::any_of_series(cfg.demand_series, [](double v) { return !(v >= 0.0); }))
    add("demand_series", "negative demand");

  std::set<std::string> node_ids;
  for (const auto& n : cfg.nodes) {
    if (!node_ids.insert(n.id).second) add(n.id, "duplicate node id");
    if (n.price_series.size() != T || n.moer_series.size() != T || n.pue_series.size() != T ||
        n.capacity_series.size() != T)
      add(n.id, "series length differs from horizon");
    if (detail::any_of_series(n.pue_series, [](double v) { return !(v >= 1.0); }))
      add(n.id, "pue below 1");
    if (detail::any_of_series(n.price_series, [](double v) { return !(v >= 0.0); }))
      add(n.id, "negative price");
    if (detail::any_of_series(n.moer_series, [](double v) { return !(v >= 0.0); }))
      add(n.id, "negative moer");
    if (detail::any_of_series(n.capacity_series, [](double v) { return !(v >= 0.0); }))
      add(n.id, "negative capacity");
    if (!(n.latitude >= -90.0 && n.latitude <= 90.0)) add(n.id, "latitude out of range");
    if (!(n.longitude >= -180.0 && n.longitude <= 180.0)) add(n.id, "longitude out of range");
  }

  double weight_sum = 0.0;
  std::set<std::string> service_ids;
  for (const auto& s : cfg.service_nodes) {
    if (!service_ids.insert(s.id).second) add(s.id, "duplicate service node id");
    if (!node_ids.contains(s.colocated_compute)) add(s.id, "colocated compute node does not exist");
    if (!(s.client_latency_ms >= 0.0)) add(s.id, "negative client latency");
    if (!(s.demand_weight >= 0.0)) add(s.id, "negative demand weight");
    weight_sum += s.demand_weight;
  }
  if (!cfg.service_nodes.empty() && !(weight_sum > 0.0))
    add("service_nodes", "demand weights sum to zero");

  double min_client = 0.0;
  if (!cfg.service_nodes.empty()) {
    min_client = cfg.service_nodes.front().client_latency_ms;
    for (const auto& s : cfg.service_nodes) min_client = std::min(min_client, s.client_latency_ms);
  }

  std::set<std::string> class_ids;
  for (const auto& c : cfg.classes) {
    if (c.id != "A" && c.id != "B" && c.id != "C" && c.id != "D")
      add(c.id, "class id must be one of A, B, C, D");
    if (!class_ids.insert(c.id).second) add(c.id, "duplicate class id");
    if (c.rounds < 1) add(c.id, "rounds below 1");
    if (!(c.latency_budget_ms >= 0.0) || !(c.energy_per_unit_kwh >= 0.0) ||
        !(c.compute_demand >= 0.0) || !(c.inference_time_ms >= 0.0) ||
        !(c.queueing_time_ms >= 0.0))
      add(c.id, "negative class magnitude");
    const auto& f = c.friction;
    if (!(f.state_cost_per_unit >= 0.0) || !(f.cache_cost_per_unit >= 0.0) ||
        !(f.egress_gb_per_unit >= 0.0) || !(f.replica_cost_per_unit >= 0.0))
      add(c.id, "negative friction component");
    if (cfg.latency_multiplier > 0.0 &&
        !(c.latency_budget_ms * cfg.latency_multiplier >
          c.inference_time_ms + c.queueing_time_ms + min_client))
      add(c.id, "latency budget below inference, queueing and client latency");
  }

  double mix_sum = 0.0;
  for (const auto& [cls, share] : cfg.class_mix) {
    if (!class_ids.contains(cls)) add(cls, "class mix names an unknown class");
    if (!(share >= 0.0)) add(cls, "negative class mix share");
    mix_sum += share;
  }
  for (const auto& c : cfg.classes)
    if (!cfg.class_mix.contains(c.id)) add(c.id, "class missing from class mix");
  if (std::abs(mix_sum - 1.0) > 1e-9) add("class_mix", "class mix not normalized");

  for (const auto& [a, row] : cfg.rtt_matrix)
    for (const auto& [b, ms] : row) {
      if (!(ms >= 0.0)) add(a + "->" + b, "negative rtt");
      if (!node_ids.contains(a) || !node_ids.contains(b)) add(a + "->" + b, "rtt names an unknown node");
    }
  for (const auto& [a, row] : cfg.egress_price_matrix)
    for (const auto& [b, p] : row)
      if (!(p >= 0.0)) add(a + "->" + b, "negative egress price");
  if (!(cfg.egress_price_per_gb >= 0.0)) add("egress_price_per_gb", "negative egress price");

  if (!(cfg.wan_inflation >= 1.0)) add("wan_inflation", "wan inflation below 1");
  if (!(cfg.fallback_speed_km_per_ms > 0.0)) add("fallback_speed_km_per_ms", "fallback speed not positive");
  if (!(cfg.fallback_overhead_ms >= 0.0)) add("fallback_overhead_ms", "negative fallback overhead");
  if (cfg.intra_region_floor_ms && !(*cfg.intra_region_floor_ms >= 0.0))
    add("intra_region_floor_ms", "negative intra-region floor");
  if (!(cfg.latency_multiplier > 0.0)) add("latency_multiplier", "latency multiplier not positive");

  const auto& w = cfg.weights;
  if (!(w.alpha >= 0.0) || !(w.beta >= 0.0) || !(w.gamma >= 0.0) || !(w.eta >= 0.0))
    add("weights", "negative policy weight");
  const auto& sf = cfg.statefulness_factors;
  if (!(sf.low >= 0.0) || !(sf.medium >= 0.0) || !(sf.high >= 0.0))
    add("statefulness_factors", "negative statefulness factor");

  for (const auto* mask : {&cfg.legal_mask, &cfg.system_mask})
    for (const auto& [cls, row] : *mask) {
      if (!class_ids.contains(cls)) add(cls, "mask names an unknown class");
      for (const auto& [n, allowed] : row)
        if (!node_ids.contains(n)) add(cls + "/" + n, "mask names an unknown node");
    }

  const auto& tt = cfg.tier_thresholds;
  if (!(tt.local_ms < tt.regional_ms)) add("tier_thresholds", "local threshold not below regional");

  if (out.empty()) {
    const auto p = LatencyParams::from(cfg);
    for (const auto& s : cfg.service_nodes) {
      const auto& home = cfg.node(s.colocated_compute);
      if (service_to_compute_ms(home, home, cfg.rtt_matrix, p) > tt.local_ms)
        add(s.id, "own region latency exceeds local tier threshold");
    }
  }
  return out;
}

}  // namespace geoplace
