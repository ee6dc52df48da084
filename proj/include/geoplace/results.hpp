#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "geoplace/metrics.hpp"
#include "geoplace/scenario_io.hpp"
#include "geoplace/sweep.hpp"

namespace geoplace {

inline constexpr const char* kToolVersion = "0.3.0";

// One long-format record: key values (one per table key column), then
// metric, value and units.
struct ResultRow {
  std::vector<std::string> keys;
  std::string metric;
  double value = 0.0;
  std::string units;
};

struct ResultTable {
  std::string name;  // file stem, e.g. "frontier"
  std::vector<std::string> key_columns;
  std::vector<ResultRow> rows;
};

/// Six significant digits, no negative zero.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string format_multiplier(double m) { return format_number(m); }

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string to_csv(const ResultTable& t) {
  std::string out;
  for (const auto& k : t.key_columns) out += detail::csv_field(k) + ",";
  out += "metric,value,units\n";
  for (const auto& r : t.rows) {
    for (const auto& k : r.keys) out += detail::csv_field(k) + ",";
    out += detail::csv_field(r.metric) + "," + format_number(r.value) + "," +
           detail::csv_field(r.units) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Table builders. Every table carries the scenario id as its first key.

namespace detail {

inline void metric_rows(std::vector<ResultRow>& rows, const std::vector<std::string>& keys,
                        const MetricsReport& m) {
  auto add = [&](const char* metric, double v, const char* units) {
    rows.push_back({keys, metric, v, units});
  };
  add("rid", m.rid, "fraction");
  add("total_cost", m.total_cost_usd, "usd");
  add("total_carbon", m.total_carbon_g, "gCO2eq");
  add("total_migration_cost", m.total_migration_usd, "usd");
  if (m.cost_reduction_vs_baseline) add("cost_reduction", *m.cost_reduction_vs_baseline, "fraction");
  if (m.carbon_reduction_vs_baseline)
    add("carbon_reduction", *m.carbon_reduction_vs_baseline, "fraction");
  add("sla_violation_rate", m.sla_violation_rate, "fraction");
  add("migration_cost_share", m.migration_cost_share, "fraction");
  add("mean_service_to_compute", m.mean_service_to_compute_ms, "ms");
}

}  // namespace detail

/// frontier.csv: scenario, policy, multiplier, friction_case, capacity_regime.
inline ResultTable frontier_table(const std::string& scenario, const FrontierTable& f,
                                  const SweepSpec& spec) {
  ResultTable t{"frontier",
                {"scenario", "policy", "multiplier", "friction_case", "capacity_regime"},
                {}};
  for (const auto& r : f.rows)
    detail::metric_rows(t.rows,
                        {scenario, to_string(r.policy), format_multiplier(r.multiplier),
                         to_string(spec.frontier_friction), to_string(spec.frontier_capacity)},
                        r.metrics);
  // Returns on latency are keyed by the upper multiplier of each step.
  for (auto kind : spec.policies) {
    auto it = f.returns.find(kind);
    if (it == f.returns.end()) continue;
    for (const auto& s : it->second) {
      const std::vector<std::string> keys{scenario, to_string(kind), format_multiplier(s.to),
                                          to_string(spec.frontier_friction),
                                          to_string(spec.frontier_capacity)};
      t.rows.push_back({keys, "erl", s.erl, "usd_per_multiplier"});
      t.rows.push_back({keys, "crl", s.crl, "gCO2eq_per_multiplier"});
    }
  }
  return t;
}

/// tiers.csv: scenario, policy, multiplier, class; metric is the tier.
inline ResultTable tiers_table(const std::string& scenario, double multiplier,
                               const std::vector<ClassTierRow>& rows) {
  ResultTable t{"tiers", {"scenario", "policy", "multiplier", "class"}, {}};
  for (const auto& r : rows) {
    const std::vector<std::string> keys{scenario, to_string(r.policy), format_multiplier(multiplier),
                                        r.task_class};
    t.rows.push_back({keys, "local", r.shares.local, "fraction"});
    t.rows.push_back({keys, "regional", r.shares.regional, "fraction"});
    t.rows.push_back({keys, "energy_oriented", r.shares.energy_oriented, "fraction"});
  }
  return t;
}

/// ablation.csv: scenario, policy, multiplier, friction_case, capacity_regime, mix_preset.
inline ResultTable ablation_table(const std::string& scenario, const std::vector<AblationRow>& rows) {
  ResultTable t{"ablation",
                {"scenario", "policy", "multiplier", "friction_case", "capacity_regime", "mix_preset"},
                {}};
  for (const auto& r : rows)
    detail::metric_rows(t.rows,
                        {scenario, to_string(r.policy), format_multiplier(r.multiplier),
                         to_string(r.friction), to_string(r.capacity), to_string(r.mix)},
                        r.metrics);
  return t;
}

/// flows.csv: scenario, policy, multiplier, rank, source, destination.
inline ResultTable flows_table(const std::string& scenario, PolicyKind policy, double multiplier,
                               const std::vector<Flow>& flows) {
  ResultTable t{"flows", {"scenario", "policy", "multiplier", "rank", "source", "destination"}, {}};
  for (std::size_t i = 0; i < flows.size(); ++i)
    t.rows.push_back({{scenario, to_string(policy), format_multiplier(multiplier),
                       std::to_string(i + 1), flows[i].source, flows[i].destination},
                      "workload_share",
                      flows[i].share,
                      "fraction"});
  return t;
}

// ---------------------------------------------------------------------------

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string scenario_hash(const ScenarioConfig& cfg) {
  return fnv1a_hex(serialize_scenario(cfg));
}

/// Writes <name>.csv per table plus manifest.json. Returns the paths written.
inline std::vector<std::filesystem::path> emit_results(const std::vector<ResultTable>& tables,
                                                       const std::filesystem::path& out_dir,
                                                       const nlohmann::json& manifest) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write '" + p.string() + "'");
    out << text;
    if (!out) throw IoError("failed writing '" + p.string() + "'");
    written.push_back(p);
  };
  nlohmann::json m = manifest;
  m["tool"] = "geoplace";
  m["tool_version"] = kToolVersion;
  m["tables"] = nlohmann::json::array();
  for (const auto& t : tables) {
    write(out_dir / (t.name + ".csv"), to_csv(t));
    m["tables"].push_back(t.name + ".csv");
  }
  write(out_dir / "manifest.json", m.dump(2) + "\n");
  return written;
}

inline nlohmann::json base_manifest(const ScenarioConfig& cfg, const std::string& command) {
  return {{"command", command},
          {"scenario_id", cfg.id},
          {"scenario_hash", scenario_hash(cfg)},
          {"scenario_note", cfg.note},
          {"horizon_hours", cfg.horizon_hours}};
}

}  // namespace geoplace
