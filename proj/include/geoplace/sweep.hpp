#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "geoplace/allocator.hpp"
#include "geoplace/default_scenario.hpp"
#include "geoplace/metrics.hpp"
#include "geoplace/types.hpp"

namespace geoplace {

enum class FrictionCase { baseline, off, egress_only, state_cache_egress, high };
enum class CapacityRegime { loose, baseline, tight };
enum class MixPreset { interactive_heavy, balanced, batch_heavy };

inline const char* to_string(FrictionCase f) {
  switch (f) {
    case FrictionCase::baseline: return "baseline";
    case FrictionCase::off: return "off";
    case FrictionCase::egress_only: return "egress_only";
    case FrictionCase::state_cache_egress: return "state_cache_egress";
    case FrictionCase::high: return "high";
  }
  return "?";
}
inline const char* to_string(CapacityRegime c) {
  switch (c) {
    case CapacityRegime::loose: return "loose";
    case CapacityRegime::baseline: return "baseline";
    case CapacityRegime::tight: return "tight";
  }
  return "?";
}
inline const char* to_string(MixPreset m) {
  switch (m) {
    case MixPreset::interactive_heavy: return "interactive_heavy";
    case MixPreset::balanced: return "balanced";
    case MixPreset::batch_heavy: return "batch_heavy";
  }
  return "?";
}

template <class E>
std::optional<E> parse_enum(const std::string& s, std::initializer_list<E> all) {
  for (auto e : all)
    if (s == to_string(e)) return e;
  return std::nullopt;
}

inline std::optional<FrictionCase> parse_friction_case(const std::string& s) {
  return parse_enum(s, {FrictionCase::baseline, FrictionCase::off, FrictionCase::egress_only,
                        FrictionCase::state_cache_egress, FrictionCase::high});
}
inline std::optional<CapacityRegime> parse_capacity_regime(const std::string& s) {
  return parse_enum(s, {CapacityRegime::loose, CapacityRegime::baseline, CapacityRegime::tight});
}
inline std::optional<MixPreset> parse_mix_preset(const std::string& s) {
  return parse_enum(s, {MixPreset::interactive_heavy, MixPreset::balanced, MixPreset::batch_heavy});
}

struct SweepSpec {
  std::vector<double> multipliers{0.5, 0.75, 1.0, 1.5, 2.5};
  std::vector<PolicyKind> policies{std::begin(kAllPolicies), std::end(kAllPolicies)};
  std::vector<FrictionCase> friction_cases{FrictionCase::off, FrictionCase::egress_only,
                                           FrictionCase::state_cache_egress, FrictionCase::high};
  std::vector<CapacityRegime> capacity_regimes{CapacityRegime::loose, CapacityRegime::baseline,
                                               CapacityRegime::tight};
  std::vector<MixPreset> mix_presets{MixPreset::interactive_heavy, MixPreset::balanced,
                                     MixPreset::batch_heavy};
  // Settings held fixed by the frontier sweep.
  FrictionCase frontier_friction = FrictionCase::baseline;
  CapacityRegime frontier_capacity = CapacityRegime::baseline;
  // Multiplier at which the ablation table is evaluated.
  double ablation_multiplier = 1.5;
  double high_friction_factor = 3.0;
  double loose_capacity_factor = 2.0;
  double tight_capacity_factor = 0.6;
  std::size_t threads = 1;
};

/// Empty string when the spec is usable, otherwise the first problem found.
inline std::string check_spec(const SweepSpec& s) {
  if (s.multipliers.empty()) return "multipliers list is empty";
  for (std::size_t i = 0; i + 1 < s.multipliers.size(); ++i)
    if (!(s.multipliers[i] < s.multipliers[i + 1])) return "multipliers must be strictly increasing";
  for (double m : s.multipliers)
    if (!(m > 0.0)) return "multipliers must be positive";
  if (s.policies.empty()) return "policies list is empty";
  if (s.friction_cases.empty()) return "friction_cases list is empty";
  if (s.capacity_regimes.empty()) return "capacity_regimes list is empty";
  if (s.mix_presets.empty()) return "mix_presets list is empty";
  if (!(s.ablation_multiplier > 0.0)) return "ablation multiplier must be positive";
  if (!(s.high_friction_factor >= 0.0) || !(s.loose_capacity_factor >= 0.0) ||
      !(s.tight_capacity_factor >= 0.0))
    return "scaling factors must be non-negative";
  return {};
}

// ---------------------------------------------------------------------------
// Scenario transforms for the ablation menu.

inline ScenarioConfig with_friction(ScenarioConfig cfg, FrictionCase fc, double high_factor = 3.0) {
  for (auto& c : cfg.classes) {
    auto& f = c.friction;
    switch (fc) {
      case FrictionCase::baseline: break;
      case FrictionCase::off: f = {}; break;
      case FrictionCase::egress_only: f = {0.0, 0.0, f.egress_gb_per_unit, 0.0}; break;
      case FrictionCase::state_cache_egress: f.replica_cost_per_unit = 0.0; break;
      case FrictionCase::high:
        f = {f.state_cost_per_unit * high_factor, f.cache_cost_per_unit * high_factor,
             f.egress_gb_per_unit * high_factor, f.replica_cost_per_unit * high_factor};
        break;
    }
  }
  return cfg;
}

inline ScenarioConfig scale_capacity(ScenarioConfig cfg, double factor) {
  for (auto& n : cfg.nodes)
    for (auto& v : n.capacity_series) v *= factor;
  return cfg;
}

inline ScenarioConfig with_capacity(ScenarioConfig cfg, CapacityRegime r, const SweepSpec& spec = {}) {
  switch (r) {
    case CapacityRegime::loose: return scale_capacity(std::move(cfg), spec.loose_capacity_factor);
    case CapacityRegime::baseline: return cfg;
    case CapacityRegime::tight: return scale_capacity(std::move(cfg), spec.tight_capacity_factor);
  }
  return cfg;
}

inline std::map<std::string, double> mix_of(MixPreset m) {
  switch (m) {
    case MixPreset::interactive_heavy: return {{"A", 0.50}, {"B", 0.30}, {"C", 0.20}, {"D", 0.00}};
    case MixPreset::balanced: return {{"A", 0.35}, {"B", 0.30}, {"C", 0.20}, {"D", 0.15}};
    case MixPreset::batch_heavy: return {{"A", 0.20}, {"B", 0.30}, {"C", 0.20}, {"D", 0.30}};
  }
  return {};
}

/// Replaces the class mix and rescales capacity so each node keeps its
/// share of the (changed) total hourly compute demand.
inline ScenarioConfig with_mix(ScenarioConfig cfg, MixPreset m) {
  if (m == MixPreset::balanced && cfg.class_mix == mix_of(m)) return cfg;
  std::vector<double> before;
  for (int h = 0; h < cfg.horizon_hours; ++h) before.push_back(hourly_compute_demand(cfg, h));
  cfg.class_mix = mix_of(m);
  for (int h = 0; h < cfg.horizon_hours; ++h) {
    const double after = hourly_compute_demand(cfg, h);
    const auto t = static_cast<std::size_t>(h);
    if (before[t] > 0.0)
      for (auto& n : cfg.nodes) n.capacity_series[t] *= after / before[t];
  }
  return cfg;
}

inline ScenarioConfig with_multiplier(ScenarioConfig cfg, double m) {
  cfg.latency_multiplier = m;
  return cfg;
}

// ---------------------------------------------------------------------------

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Results are
/// written by index, so output order never depends on scheduling.
template <class R>
std::vector<R> parallel_map(std::size_t n, std::size_t threads, const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(n);
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

struct FrontierRow {
  double multiplier = 0.0;
  PolicyKind policy = PolicyKind::local_only;
  MetricsReport metrics;
};

struct FrontierTable {
  std::vector<FrontierRow> rows;  // multiplier-major, policies in spec order
  std::map<PolicyKind, std::vector<ReturnStep>> returns;
};

/// Stage 1: one horizon run per (multiplier, policy), with reductions
/// against Local-Only at the same multiplier.
inline FrontierTable latency_sweep(const ScenarioConfig& base, const SweepSpec& spec) {
  if (auto e = check_spec(spec); !e.empty()) throw Error("invalid sweep spec: " + e);
  const auto cfg0 = with_capacity(with_friction(base, spec.frontier_friction, spec.high_friction_factor),
                                  spec.frontier_capacity, spec);
  const std::size_t P = spec.policies.size();
  const std::size_t M = spec.multipliers.size();
  auto baselines = parallel_map<Trace>(M, spec.threads, [&](std::size_t m) {
    return run_horizon(with_multiplier(cfg0, spec.multipliers[m]), PolicyKind::local_only);
  });
  FrontierTable table;
  table.rows = parallel_map<FrontierRow>(M * P, spec.threads, [&](std::size_t idx) {
    const std::size_t m = idx / P;
    const auto kind = spec.policies[idx % P];
    const auto cfg = with_multiplier(cfg0, spec.multipliers[m]);
    const auto trace = kind == PolicyKind::local_only ? baselines[m] : run_horizon(cfg, kind);
    return FrontierRow{spec.multipliers[m], kind, compute_metrics(trace, cfg, &baselines[m])};
  });
  if (M >= 2)
    for (std::size_t p = 0; p < P; ++p) {
      std::vector<SweepPoint> pts;
      for (std::size_t m = 0; m < M; ++m) {
        const auto& r = table.rows[m * P + p].metrics;
        pts.push_back({spec.multipliers[m], r.total_cost_usd, r.total_carbon_g});
      }
      table.returns[spec.policies[p]] = erl_crl(pts);
    }
  return table;
}

struct ClassTierRow {
  PolicyKind policy = PolicyKind::local_only;
  std::string task_class;
  TierShares shares;
};

/// Stage 2: per-class tier shares for each policy at a fixed multiplier.
inline std::vector<ClassTierRow> class_analysis(const ScenarioConfig& base, double multiplier,
                                                const std::vector<PolicyKind>& policies =
                                                    {std::begin(kAllPolicies), std::end(kAllPolicies)},
                                                std::size_t threads = 1) {
  const auto cfg = with_multiplier(base, multiplier);
  auto per_policy = parallel_map<std::map<std::string, TierShares>>(
      policies.size(), threads,
      [&](std::size_t p) { return tier_shares(run_horizon(cfg, policies[p]), cfg.tier_thresholds); });
  std::vector<ClassTierRow> out;
  for (std::size_t p = 0; p < policies.size(); ++p)
    for (const auto& [cls, s] : per_policy[p]) out.push_back({policies[p], cls, s});
  return out;
}

struct AblationRow {
  FrictionCase friction = FrictionCase::baseline;
  CapacityRegime capacity = CapacityRegime::baseline;
  MixPreset mix = MixPreset::balanced;
  PolicyKind policy = PolicyKind::joint;
  double multiplier = 1.0;
  MetricsReport metrics;
};

/// Stage 3: friction x capacity x mix grid, every requested policy, with
/// reductions against Local-Only under the same modified scenario.
inline std::vector<AblationRow> sensitivity(const ScenarioConfig& base, const SweepSpec& spec) {
  if (auto e = check_spec(spec); !e.empty()) throw Error("invalid sweep spec: " + e);
  struct Cell {
    FrictionCase f;
    CapacityRegime c;
    MixPreset m;
  };
  std::vector<Cell> cells;
  for (auto f : spec.friction_cases)
    for (auto c : spec.capacity_regimes)
      for (auto m : spec.mix_presets) cells.push_back({f, c, m});
  const std::size_t P = spec.policies.size();
  auto cell_cfg = [&](const Cell& cell) {
    return with_multiplier(with_mix(with_capacity(with_friction(base, cell.f, spec.high_friction_factor),
                                                  cell.c, spec),
                                    cell.m),
                           spec.ablation_multiplier);
  };
  auto baselines = parallel_map<Trace>(cells.size(), spec.threads, [&](std::size_t i) {
    return run_horizon(cell_cfg(cells[i]), PolicyKind::local_only);
  });
  return parallel_map<AblationRow>(cells.size() * P, spec.threads, [&](std::size_t idx) {
    const auto& cell = cells[idx / P];
    const auto kind = spec.policies[idx % P];
    const auto cfg = cell_cfg(cell);
    const auto& base_trace = baselines[idx / P];
    const auto trace = kind == PolicyKind::local_only ? base_trace : run_horizon(cfg, kind);
    return AblationRow{cell.f, cell.c, cell.m, kind, spec.ablation_multiplier,
                       compute_metrics(trace, cfg, &base_trace)};
  });
}

}  // namespace geoplace
