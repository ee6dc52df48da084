#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoplace {

/// Errors raised for malformed input or degenerate arithmetic (zero
/// normalizers, empty traces). Validation findings are data, not errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Statefulness { low, medium, high };

inline const char* to_string(Statefulness s) {
  switch (s) {
    case Statefulness::low: return "low";
    case Statefulness::medium: return "medium";
    case Statefulness::high: return "high";
  }
  return "?";
}

inline std::optional<Statefulness> parse_statefulness(const std::string& s) {
  if (s == "low") return Statefulness::low;
  if (s == "medium") return Statefulness::medium;
  if (s == "high") return Statefulness::high;
  return std::nullopt;
}

enum class DelayPenaltyMode { excess, geographic };

inline const char* to_string(DelayPenaltyMode m) {
  return m == DelayPenaltyMode::excess ? "excess" : "geographic";
}

/// Which node counts as a slice's "local default" for RID and net benefit.
enum class LocalDefault { colocated, nearest_region };

inline const char* to_string(LocalDefault d) {
  return d == LocalDefault::colocated ? "colocated" : "nearest_region";
}

// A compute region. All series are indexed by hour and share one length.
struct ComputeNode {
  std::string id;
  std::string display_name;
  double latitude = 0.0;   // degrees
  double longitude = 0.0;  // degrees
  std::vector<double> price_series;     // $/kWh
  std::vector<double> moer_series;      // gCO2eq/kWh
  std::vector<double> pue_series;       // >= 1
  std::vector<double> capacity_series;  // compute-units per hour

  bool operator==(const ComputeNode&) const = default;
};

// Ingress point. The service node lives in the region of its colocated
// compute node; client_latency_ms is the client-to-service leg.
struct ServiceNode {
  std::string id;
  std::string colocated_compute;
  double client_latency_ms = 0.0;
  double demand_weight = 0.0;

  bool operator==(const ServiceNode&) const = default;
};

// Per-unit migration frictions. Egress is priced per GB through the
// scenario's region-pair price table.
struct FrictionParams {
  double state_cost_per_unit = 0.0;
  double cache_cost_per_unit = 0.0;
  double egress_gb_per_unit = 0.0;
  double replica_cost_per_unit = 0.0;

  bool operator==(const FrictionParams&) const = default;
};

struct TaskClass {
  std::string id;                    // "A".."D"
  double latency_budget_ms = 0.0;    // tau
  double energy_per_unit_kwh = 0.0;  // E
  double compute_demand = 0.0;       // D, compute-units per workload unit
  int rounds = 1;                    // m
  double inference_time_ms = 0.0;
  double queueing_time_ms = 0.0;
  Statefulness statefulness = Statefulness::low;
  FrictionParams friction;

  bool operator==(const TaskClass&) const = default;
};

struct PolicyWeights {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double eta = 1.0;

  bool operator==(const PolicyWeights&) const = default;
};

struct TierThresholds {
  double local_ms = 15.0;
  double regional_ms = 80.0;

  bool operator==(const TierThresholds&) const = default;
};

struct StatefulnessFactors {
  double low = 0.0;
  double medium = 0.5;
  double high = 1.0;

  double of(Statefulness s) const {
    switch (s) {
      case Statefulness::low: return low;
      case Statefulness::medium: return medium;
      case Statefulness::high: return high;
    }
    return 0.0;
  }

  bool operator==(const StatefulnessFactors&) const = default;
};

// region -> region -> value; absent keys mean "no entry".
using PairTable = std::map<std::string, std::map<std::string, double>>;
// class -> node -> allowed; absent entries are allowed.
using MaskTable = std::map<std::string, std::map<std::string, bool>>;

inline std::optional<double> lookup(const PairTable& t, const std::string& a,
                                    const std::string& b) {
  if (auto row = t.find(a); row != t.end()) {
    if (auto cell = row->second.find(b); cell != row->second.end()) return cell->second;
  }
  return std::nullopt;
}

inline bool mask_allows(const MaskTable& m, const std::string& cls, const std::string& node) {
  if (auto row = m.find(cls); row != m.end()) {
    if (auto cell = row->second.find(node); cell != row->second.end()) return cell->second;
  }
  return true;
}

struct ScenarioConfig {
  std::string id = "scenario";
  std::string note;
  int horizon_hours = 1;

  std::vector<ComputeNode> nodes;
  std::vector<ServiceNode> service_nodes;
  std::vector<TaskClass> classes;
  std::map<std::string, double> class_mix;
  std::vector<double> demand_series;  // total workload units per hour

  PairTable rtt_matrix;  // round-trip ms
  double wan_inflation = 1.0;
  double fallback_speed_km_per_ms = 200.0;
  double fallback_overhead_ms = 20.0;
  std::optional<double> intra_region_floor_ms = 1.0;  // nullopt disables the floor
  bool rounds_as_round_trips = false;

  double egress_price_per_gb = 0.0;  // scalar default
  PairTable egress_price_matrix;     // per-pair override

  double latency_multiplier = 1.0;
  PolicyWeights weights;
  DelayPenaltyMode delay_penalty_mode = DelayPenaltyMode::geographic;
  StatefulnessFactors statefulness_factors;
  LocalDefault local_default = LocalDefault::colocated;

  MaskTable legal_mask;
  MaskTable system_mask;
  TierThresholds tier_thresholds;

  bool operator==(const ScenarioConfig&) const = default;

  const ComputeNode& node(const std::string& id) const {
    for (const auto& n : nodes)
      if (n.id == id) return n;
    throw Error("unknown compute node '" + id + "'");
  }
  const ServiceNode& service(const std::string& id) const {
    for (const auto& s : service_nodes)
      if (s.id == id) return s;
    throw Error("unknown service node '" + id + "'");
  }
  const TaskClass& task_class(const std::string& id) const {
    for (const auto& c : classes)
      if (c.id == id) return c;
    throw Error("unknown task class '" + id + "'");
  }
  std::size_t node_index(const std::string& id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].id == id) return i;
    throw Error("unknown compute node '" + id + "'");
  }
  double egress_price(const std::string& from, const std::string& to) const {
    if (auto p = lookup(egress_price_matrix, from, to)) return *p;
    return egress_price_per_gb;
  }
};

// One divisible demand cell.
struct WorkloadSlice {
  int hour = 0;
  std::string service_node;
  std::string task_class;
  double mass = 0.0;

  bool operator==(const WorkloadSlice&) const = default;
};

/// Latency budget after the system-wide multiplier is applied.
inline double effective_budget(const TaskClass& c, double latency_multiplier) {
  if (!(latency_multiplier > 0.0)) throw Error("latency multiplier must be positive");
  return c.latency_budget_ms * latency_multiplier;
}

}  // namespace geoplace
