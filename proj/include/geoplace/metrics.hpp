#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "geoplace/allocator.hpp"
#include "geoplace/cost.hpp"
#include "geoplace/types.hpp"

namespace geoplace {

struct TierShares {
  double local = 0.0;
  double regional = 0.0;
  double energy_oriented = 0.0;

  double sum() const { return local + regional + energy_oriented; }
};

enum class Tier { local, regional, energy_oriented };

inline const char* to_string(Tier t) {
  switch (t) {
    case Tier::local: return "local";
    case Tier::regional: return "regional";
    case Tier::energy_oriented: return "energy_oriented";
  }
  return "?";
}

/// Boundaries are inclusive on the lower tier.
inline Tier classify_tier(double sc_ms, const TierThresholds& t) {
  if (sc_ms <= t.local_ms) return Tier::local;
  if (sc_ms <= t.regional_ms) return Tier::regional;
  return Tier::energy_oriented;
}

struct Flow {
  std::string source;
  std::string destination;
  double share = 0.0;  // of total trace mass

  bool operator==(const Flow&) const = default;
};

struct MetricsReport {
  double rid = 0.0;
  double total_cost_usd = 0.0;  // electricity only
  double total_carbon_g = 0.0;
  double total_migration_usd = 0.0;
  std::optional<double> cost_reduction_vs_baseline;
  std::optional<double> carbon_reduction_vs_baseline;
  double sla_violation_rate = 0.0;
  std::map<std::string, TierShares> tier_shares;
  double migration_cost_share = 0.0;
  double mean_service_to_compute_ms = 0.0;
  std::vector<Flow> top_flows;
  double total_mass = 0.0;
};

/// Energy-weighted share of demand executed off its local default node.
inline double rid(const Trace& trace, const ScenarioConfig& cfg) {
  double moved = 0.0, total = 0.0;
  for (const auto& rec : trace) {
    const auto& c = cfg.task_class(rec.slice.task_class);
    const auto& home = local_default_node(c, cfg.service(rec.slice.service_node), cfg);
    for (const auto& p : rec.placements) {
      const double e = c.energy_per_unit_kwh * p.mass;
      total += e;
      if (p.node != home.id) moved += e;
    }
  }
  if (!(total > 0.0)) throw Error("relocatable demand undefined: trace has zero total energy");
  return moved / total;
}

/// (baseline - policy) / baseline.
inline double reduction(double policy_total, double baseline_total) {
  if (baseline_total == 0.0) throw Error("reduction undefined for a zero baseline");
  return (baseline_total - policy_total) / baseline_total;
}

/// Mass share of placed workload whose realized latency exceeds its budget.
inline double sla_violation_rate(const Trace& trace, const ScenarioConfig& cfg) {
  if (trace.empty()) throw Error("violation rate undefined for an empty trace");
  double bad = 0.0, total = 0.0;
  for (const auto& rec : trace) {
    const double tau = effective_budget(cfg.task_class(rec.slice.task_class), cfg.latency_multiplier);
    for (const auto& p : rec.placements) {
      total += p.mass;
      if (p.latency_ms > tau) bad += p.mass;
    }
  }
  return total > 0.0 ? bad / total : 0.0;
}

/// Mass-weighted tier shares per class, tiers by service-to-compute latency.
/// Classes carrying no mass are omitted.
inline std::map<std::string, TierShares> tier_shares(const Trace& trace,
                                                     const TierThresholds& thresholds) {
  if (!(thresholds.local_ms < thresholds.regional_ms))
    throw Error("tier thresholds need local_ms < regional_ms");
  std::map<std::string, TierShares> acc;
  std::map<std::string, double> mass;
  for (const auto& rec : trace)
    for (const auto& p : rec.placements) {
      auto& s = acc[rec.slice.task_class];
      mass[rec.slice.task_class] += p.mass;
      switch (classify_tier(p.service_to_compute_ms, thresholds)) {
        case Tier::local: s.local += p.mass; break;
        case Tier::regional: s.regional += p.mass; break;
        case Tier::energy_oriented: s.energy_oriented += p.mass; break;
      }
    }
  std::map<std::string, TierShares> out;
  for (auto& [cls, s] : acc) {
    const double m = mass[cls];
    if (!(m > 0.0)) continue;
    out[cls] = {s.local / m, s.regional / m, s.energy_oriented / m};
  }
  return out;
}

struct SweepPoint {
  double multiplier = 0.0;
  double cost = 0.0;
  double carbon = 0.0;
};

struct ReturnStep {
  double from = 0.0;
  double to = 0.0;
  double erl = 0.0;  // cost saved per unit of multiplier
  double crl = 0.0;  // carbon saved per unit of multiplier
};

/// Finite-difference returns between consecutive sweep points.
inline std::vector<ReturnStep> erl_crl(const std::vector<SweepPoint>& points) {
  if (points.size() < 2) throw Error("returns on latency need at least two sweep points");
  std::vector<ReturnStep> out;
  for (std::size_t j = 0; j + 1 < points.size(); ++j) {
    const auto& a = points[j];
    const auto& b = points[j + 1];
    if (a.multiplier == b.multiplier) throw Error("duplicate multiplier in sweep");
    if (b.multiplier < a.multiplier) throw Error("sweep multipliers must be increasing");
    const double d = b.multiplier - a.multiplier;
    out.push_back({a.multiplier, b.multiplier, (a.cost - b.cost) / d, (a.carbon - b.carbon) / d});
  }
  return out;
}

/// Off-local corridors (source region -> destination) by share of total
/// trace mass, largest first, ties by name.
inline std::vector<Flow> top_flows(const Trace& trace, const ScenarioConfig& cfg, std::size_t n) {
  if (n < 1) throw Error("top_flows needs n >= 1");
  std::map<std::pair<std::string, std::string>, double> mass;
  double total = 0.0;
  for (const auto& rec : trace) {
    const auto& c = cfg.task_class(rec.slice.task_class);
    const auto& s = cfg.service(rec.slice.service_node);
    const auto& home = local_default_node(c, s, cfg);
    for (const auto& p : rec.placements) {
      total += p.mass;
      if (p.node != home.id && p.mass > 0.0) mass[{s.colocated_compute, p.node}] += p.mass;
    }
  }
  std::vector<Flow> flows;
  if (!(total > 0.0)) return flows;
  for (const auto& [key, m] : mass) flows.push_back({key.first, key.second, m / total});
  std::stable_sort(flows.begin(), flows.end(),
                   [](const Flow& a, const Flow& b) { return a.share > b.share; });
  if (flows.size() > n) flows.resize(n);
  return flows;
}

/// Every metric of one trace. Reductions are filled when a baseline trace
/// (usually Local-Only under the same scenario) is supplied.
inline MetricsReport compute_metrics(const Trace& trace, const ScenarioConfig& cfg,
                                     const Trace* baseline = nullptr, std::size_t n_flows = 10) {
  MetricsReport r;
  double sc_weighted = 0.0;
  for (const auto& rec : trace)
    for (const auto& p : rec.placements) {
      r.total_cost_usd += p.cost.energy_cost_usd;
      r.total_carbon_g += p.cost.carbon_g;
      r.total_migration_usd += p.cost.migration_cost_usd();
      r.total_mass += p.mass;
      sc_weighted += p.mass * p.service_to_compute_ms;
    }
  r.rid = rid(trace, cfg);
  r.sla_violation_rate = sla_violation_rate(trace, cfg);
  r.tier_shares = tier_shares(trace, cfg.tier_thresholds);
  const double spend = r.total_cost_usd + r.total_migration_usd;
  r.migration_cost_share = spend > 0.0 ? r.total_migration_usd / spend : 0.0;
  r.mean_service_to_compute_ms = r.total_mass > 0.0 ? sc_weighted / r.total_mass : 0.0;
  r.top_flows = top_flows(trace, cfg, n_flows);
  if (baseline) {
    double bc = 0.0, bg = 0.0;
    for (const auto& rec : *baseline)
      for (const auto& p : rec.placements) {
        bc += p.cost.energy_cost_usd;
        bg += p.cost.carbon_g;
      }
    r.cost_reduction_vs_baseline = reduction(r.total_cost_usd, bc);
    r.carbon_reduction_vs_baseline = reduction(r.total_carbon_g, bg);
  }
  return r;
}

}  // namespace geoplace
