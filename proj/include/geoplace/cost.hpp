#pragma once

#include <optional>
#include <string>

#include "geoplace/feasibility.hpp"
#include "geoplace/latency.hpp"
#include "geoplace/types.hpp"

namespace geoplace {

inline double facility_energy(double energy_kwh, double pue) { return energy_kwh * pue; }

inline double energy_cost(double energy_kwh, double pue, double price_per_kwh) {
  return facility_energy(energy_kwh, pue) * price_per_kwh;
}

inline double carbon_cost(double energy_kwh, double pue, double moer_g_per_kwh) {
  return facility_energy(energy_kwh, pue) * moer_g_per_kwh;
}

/// excess: max(0, L - tau). geographic: the service-to-compute leg itself.
inline double delay_penalty(double latency_ms, double budget_ms, double sc_ms,
                            DelayPenaltyMode mode) {
  if (mode == DelayPenaltyMode::excess) return std::max(0.0, latency_ms - budget_ms);
  return sc_ms;
}

struct MigrationCost {
  double state = 0.0;
  double cache = 0.0;
  double egress = 0.0;
  double replica = 0.0;

  double total() const { return state + cache + egress + replica; }
  bool operator==(const MigrationCost&) const = default;
};

/// Friction for moving `mass` units of class c from s's region to node i.
/// Zero on every component at the colocated node.
inline MigrationCost migration_cost(const TaskClass& c, const ServiceNode& s,
                                    const ComputeNode& i, double mass,
                                    const ScenarioConfig& cfg) {
  if (i.id == s.colocated_compute) return {};
  const double factor = cfg.statefulness_factors.of(c.statefulness);
  const auto& f = c.friction;
  return {mass * factor * f.state_cost_per_unit, mass * factor * f.cache_cost_per_unit,
          mass * f.egress_gb_per_unit * cfg.egress_price(s.colocated_compute, i.id),
          mass * f.replica_cost_per_unit};
}

struct CostBreakdown {
  double facility_energy_kwh = 0.0;
  double energy_cost_usd = 0.0;
  double carbon_g = 0.0;
  double delay_penalty = 0.0;
  MigrationCost migration;
  double raw_objective = 0.0;
  std::optional<double> normalized_objective;  // absent when local normalizers vanish

  double migration_cost_usd() const { return migration.total(); }
};

/// The node a slice counts as "staying home" on: the colocated compute
/// node, or the lowest-latency mask-allowed node when configured.
inline const ComputeNode& local_default_node(const TaskClass& c, const ServiceNode& s,
                                             const ScenarioConfig& cfg) {
  if (cfg.local_default == LocalDefault::colocated) return cfg.node(s.colocated_compute);
  const ComputeNode* best = nullptr;
  double best_ms = 0.0;
  for (const auto& n : cfg.nodes) {
    if (!mask_allows(cfg.legal_mask, c.id, n.id) || !mask_allows(cfg.system_mask, c.id, n.id))
      continue;
    const double ms = service_to_compute_ms(s, n, cfg);
    if (!best || ms < best_ms || (ms == best_ms && n.id < best->id)) {
      best = &n;
      best_ms = ms;
    }
  }
  return best ? *best : cfg.node(s.colocated_compute);
}

namespace detail {

inline std::size_t checked_hour(const ComputeNode& n, int hour) {
  if (hour < 0 || static_cast<std::size_t>(hour) >= n.price_series.size())
    throw Error("hour " + std::to_string(hour) + " outside horizon for node '" + n.id + "'");
  return static_cast<std::size_t>(hour);
}

}  // namespace detail

/// Weighted raw objective for `mass` units of class c from s placed on i.
inline CostBreakdown raw_objective(const TaskClass& c, const ServiceNode& s, const ComputeNode& i,
                                   int hour, const PolicyWeights& w, const ScenarioConfig& cfg,
                                   double mass = 1.0) {
  const auto t = detail::checked_hour(i, hour);
  CostBreakdown b;
  const double e = c.energy_per_unit_kwh * mass;
  b.facility_energy_kwh = facility_energy(e, i.pue_series[t]);
  b.energy_cost_usd = energy_cost(e, i.pue_series[t], i.price_series[t]);
  b.carbon_g = carbon_cost(e, i.pue_series[t], i.moer_series[t]);
  const double sc = service_to_compute_ms(s, i, cfg);
  const double lat = end_to_end_ms(c, s.client_latency_ms, sc, cfg.rounds_as_round_trips);
  const double tau = effective_budget(c, cfg.latency_multiplier);
  b.delay_penalty = mass * delay_penalty(lat, tau, sc, cfg.delay_penalty_mode);
  b.migration = migration_cost(c, s, i, mass, cfg);
  b.raw_objective = w.alpha * b.energy_cost_usd + w.beta * b.carbon_g +
                    w.gamma * b.delay_penalty + w.eta * b.migration.total();

  const auto& home = local_default_node(c, s, cfg);
  const auto th = detail::checked_hour(home, hour);
  const double local_energy = energy_cost(e, home.pue_series[th], home.price_series[th]);
  const double local_carbon = carbon_cost(e, home.pue_series[th], home.moer_series[th]);
  if (local_energy > 0.0 && local_carbon > 0.0 && tau > 0.0) {
    b.normalized_objective = w.alpha * b.energy_cost_usd / local_energy +
                             w.beta * b.carbon_g / local_carbon +
                             w.gamma * (b.delay_penalty / mass) / tau +
                             w.eta * b.migration.total() / local_energy;
  }
  return b;
}

/// Dimensionless per-unit objective: energy and carbon relative to the local
/// default node, delay over the effective budget, friction over the local
/// energy cost of the same mass.
inline double normalized_objective(const TaskClass& c, const ServiceNode& s, const ComputeNode& i,
                                   int hour, const PolicyWeights& w, const ScenarioConfig& cfg) {
  const auto b = raw_objective(c, s, i, hour, w, cfg, 1.0);
  if (!b.normalized_objective)
    throw Error("degenerate normalizer: zero local energy or carbon cost for class " + c.id +
                " at node '" + local_default_node(c, s, cfg).id + "' hour " +
                std::to_string(hour));
  return *b.normalized_objective;
}

/// J~(local) - J~(i); positive when moving off the local default pays.
inline double net_benefit(const TaskClass& c, const ServiceNode& s, const ComputeNode& i, int hour,
                          const PolicyWeights& w, const ScenarioConfig& cfg) {
  const auto& home = local_default_node(c, s, cfg);
  if (home.id == i.id) return 0.0;
  return normalized_objective(c, s, home, hour, w, cfg) -
         normalized_objective(c, s, i, hour, w, cfg);
}

}  // namespace geoplace
