#pragma once

#include <string>
#include <vector>

#include "geoplace/geoplace.hpp"

namespace geoplace::testing {

// Small hand-built scenarios. Nodes sit on the equator so distances are
// easy to reason about; latencies come from the explicit RTT table.

inline ComputeNode flat_node(const std::string& id, double lon, double price, double moer,
                             double pue, double capacity, int hours) {
  ComputeNode n;
  n.id = id;
  n.display_name = id;
  n.latitude = 0.0;
  n.longitude = lon;
  n.price_series.assign(static_cast<std::size_t>(hours), price);
  n.moer_series.assign(static_cast<std::size_t>(hours), moer);
  n.pue_series.assign(static_cast<std::size_t>(hours), pue);
  n.capacity_series.assign(static_cast<std::size_t>(hours), capacity);
  return n;
}

inline TaskClass simple_class(const std::string& id, double tau_ms, double energy_kwh,
                              double compute, int rounds = 1, double inference_ms = 0.0,
                              Statefulness st = Statefulness::low, FrictionParams f = {}) {
  return {id, tau_ms, energy_kwh, compute, rounds, inference_ms, 0.0, st, f};
}

/// Three nodes a, b, c with one service node per node (client latency 0),
/// one class "A" with the given budget, unit demand weights, and RTT
/// a-b 20 ms, a-c 60 ms, b-c 40 ms (so one-way legs 10, 30, 20 ms).
inline ScenarioConfig three_node(double tau_ms = 1000.0, int hours = 1) {
  ScenarioConfig cfg;
  cfg.id = "three-node";
  cfg.horizon_hours = hours;
  cfg.nodes = {flat_node("a", 0.0, 0.10, 400.0, 1.0, 1e9, hours),
               flat_node("b", 1.0, 0.05, 400.0, 1.0, 1e9, hours),
               flat_node("c", 2.0, 0.08, 100.0, 1.0, 1e9, hours)};
  for (const auto& n : cfg.nodes) cfg.service_nodes.push_back({n.id, n.id, 0.0, 1.0});
  cfg.classes = {simple_class("A", tau_ms, 1.0, 1.0)};
  cfg.class_mix = {{"A", 1.0}};
  cfg.demand_series.assign(static_cast<std::size_t>(hours), 3.0);
  cfg.rtt_matrix["a"]["b"] = 20.0;
  cfg.rtt_matrix["a"]["c"] = 60.0;
  cfg.rtt_matrix["b"]["c"] = 40.0;
  return cfg;
}

}  // namespace geoplace::testing
