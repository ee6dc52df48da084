#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "geoplace/types.hpp"
#include "geoplace/validate.hpp"

namespace geoplace {

using json = nlohmann::json;

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(msg), line(line), column(column) {}
  std::size_t line;
  std::size_t column;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class ValidationFailure : public Error {
 public:
  explicit ValidationFailure(std::vector<Finding> f)
      : Error(summarize(f)), findings(std::move(f)) {}
  std::vector<Finding> findings;

 private:
  static std::string summarize(const std::vector<Finding>& f) {
    std::string s = "scenario failed validation with " + std::to_string(f.size()) + " finding(s)";
    for (const auto& x : f) s += "; " + x.entity + ": " + x.message;
    return s;
  }
};

class IoError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void check_keys(const json& j, std::initializer_list<const char*> allowed,
                       const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.contains(k)) throw SchemaError("unknown key '" + k + "' in " + where);
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw SchemaError("missing key '" + std::string(key) + "' in " + where);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError("wrong type for '" + std::string(key) + "' in " + where);
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return get<T>(j, key, where);
}

inline PairTable pair_table(const json& j, const std::string& where) {
  PairTable t;
  if (!j.is_object()) throw SchemaError(where + ": expected an object of objects");
  for (const auto& [a, row] : j.items()) {
    if (!row.is_object()) throw SchemaError(where + "." + a + ": expected an object");
    for (const auto& [b, v] : row.items()) {
      if (!v.is_number()) throw SchemaError(where + "." + a + "." + b + ": expected a number");
      t[a][b] = v.get<double>();
    }
  }
  return t;
}

inline MaskTable mask_table(const json& j, const std::string& where) {
  MaskTable t;
  if (!j.is_object()) throw SchemaError(where + ": expected an object of objects");
  for (const auto& [a, row] : j.items()) {
    if (!row.is_object()) throw SchemaError(where + "." + a + ": expected an object");
    for (const auto& [b, v] : row.items()) {
      if (!v.is_boolean()) throw SchemaError(where + "." + a + "." + b + ": expected a boolean");
      t[a][b] = v.get<bool>();
    }
  }
  return t;
}

inline json mask_json(const MaskTable& m) {
  json j = json::object();
  for (const auto& [cls, row] : m)
    for (const auto& [n, allowed] : row) j[cls][n] = allowed;
  return j;
}

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

inline json to_json(const ScenarioConfig& cfg) {
  json j;
  j["id"] = cfg.id;
  j["note"] = cfg.note;
  j["horizon_hours"] = cfg.horizon_hours;
  j["nodes"] = json::array();
  for (const auto& n : cfg.nodes)
    j["nodes"].push_back({{"id", n.id},
                          {"display_name", n.display_name},
                          {"latitude", n.latitude},
                          {"longitude", n.longitude},
                          {"price_series", n.price_series},
                          {"moer_series", n.moer_series},
                          {"pue_series", n.pue_series},
                          {"capacity_series", n.capacity_series}});
  j["service_nodes"] = json::array();
  for (const auto& s : cfg.service_nodes)
    j["service_nodes"].push_back({{"id", s.id},
                                  {"colocated_compute", s.colocated_compute},
                                  {"client_latency_ms", s.client_latency_ms},
                                  {"demand_weight", s.demand_weight}});
  j["classes"] = json::array();
  for (const auto& c : cfg.classes)
    j["classes"].push_back(
        {{"id", c.id},
         {"latency_budget_ms", c.latency_budget_ms},
         {"energy_per_unit_kwh", c.energy_per_unit_kwh},
         {"compute_demand", c.compute_demand},
         {"rounds", c.rounds},
         {"inference_time_ms", c.inference_time_ms},
         {"queueing_time_ms", c.queueing_time_ms},
         {"statefulness", to_string(c.statefulness)},
         {"friction",
          {{"state_cost_per_unit", c.friction.state_cost_per_unit},
           {"cache_cost_per_unit", c.friction.cache_cost_per_unit},
           {"egress_gb_per_unit", c.friction.egress_gb_per_unit},
           {"replica_cost_per_unit", c.friction.replica_cost_per_unit}}}});
  j["class_mix"] = cfg.class_mix;
  j["demand_series"] = cfg.demand_series;
  j["rtt_matrix"] = cfg.rtt_matrix;
  j["wan_inflation"] = cfg.wan_inflation;
  j["fallback_speed_km_per_ms"] = cfg.fallback_speed_km_per_ms;
  j["fallback_overhead_ms"] = cfg.fallback_overhead_ms;
  j["intra_region_floor_ms"] =
      cfg.intra_region_floor_ms ? json(*cfg.intra_region_floor_ms) : json(nullptr);
  j["rounds_as_round_trips"] = cfg.rounds_as_round_trips;
  j["egress_price_per_gb"] = cfg.egress_price_per_gb;
  j["egress_price_matrix"] = cfg.egress_price_matrix;
  j["latency_multiplier"] = cfg.latency_multiplier;
  j["weights"] = {{"alpha", cfg.weights.alpha},
                  {"beta", cfg.weights.beta},
                  {"gamma", cfg.weights.gamma},
                  {"eta", cfg.weights.eta}};
  j["delay_penalty_mode"] = to_string(cfg.delay_penalty_mode);
  j["statefulness_factors"] = {{"low", cfg.statefulness_factors.low},
                               {"medium", cfg.statefulness_factors.medium},
                               {"high", cfg.statefulness_factors.high}};
  j["local_default"] = to_string(cfg.local_default);
  j["legal_mask"] = detail::mask_json(cfg.legal_mask);
  j["system_mask"] = detail::mask_json(cfg.system_mask);
  j["tier_thresholds"] = {{"local_ms", cfg.tier_thresholds.local_ms},
                          {"regional_ms", cfg.tier_thresholds.regional_ms}};
  return j;
}

/// Builds a ScenarioConfig from JSON. Unknown keys are rejected; optional
/// fields take their documented defaults. Does not validate invariants.
inline ScenarioConfig from_json(const json& j) {
  using detail::get;
  using detail::get_or;
  detail::check_keys(j,
                     {"id", "note", "horizon_hours", "nodes", "service_nodes", "classes",
                      "class_mix", "demand_series", "rtt_matrix", "wan_inflation",
                      "fallback_speed_km_per_ms", "fallback_overhead_ms", "intra_region_floor_ms",
                      "rounds_as_round_trips", "egress_price_per_gb", "egress_price_matrix",
                      "latency_multiplier", "weights", "delay_penalty_mode",
                      "statefulness_factors", "local_default", "legal_mask", "system_mask",
                      "tier_thresholds"},
                     "scenario");
  const std::string top = "scenario";
  ScenarioConfig cfg;
  cfg.id = get_or<std::string>(j, "id", "scenario", top);
  cfg.note = get_or<std::string>(j, "note", "", top);
  cfg.horizon_hours = get<int>(j, "horizon_hours", top);

  for (const auto& n : get<json>(j, "nodes", top)) {
    const std::string where = "node " + (n.contains("id") && n["id"].is_string()
                                             ? n["id"].get<std::string>()
                                             : std::string("?"));
    detail::check_keys(n,
                       {"id", "display_name", "latitude", "longitude", "price_series",
                        "moer_series", "pue_series", "capacity_series"},
                       where);
    ComputeNode c;
    c.id = get<std::string>(n, "id", where);
    c.display_name = get_or<std::string>(n, "display_name", c.id, where);
    c.latitude = get<double>(n, "latitude", where);
    c.longitude = get<double>(n, "longitude", where);
    c.price_series = get<std::vector<double>>(n, "price_series", where);
    c.moer_series = get<std::vector<double>>(n, "moer_series", where);
    c.pue_series = get<std::vector<double>>(n, "pue_series", where);
    c.capacity_series = get<std::vector<double>>(n, "capacity_series", where);
    cfg.nodes.push_back(std::move(c));
  }
  for (const auto& s : get<json>(j, "service_nodes", top)) {
    const std::string where = "service node";
    detail::check_keys(s, {"id", "colocated_compute", "client_latency_ms", "demand_weight"}, where);
    ServiceNode sn;
    sn.id = get<std::string>(s, "id", where);
    sn.colocated_compute = get<std::string>(s, "colocated_compute", where);
    sn.client_latency_ms = get<double>(s, "client_latency_ms", where);
    sn.demand_weight = get<double>(s, "demand_weight", where);
    cfg.service_nodes.push_back(std::move(sn));
  }
  for (const auto& c : get<json>(j, "classes", top)) {
    const std::string where = "class";
    detail::check_keys(c,
                       {"id", "latency_budget_ms", "energy_per_unit_kwh", "compute_demand",
                        "rounds", "inference_time_ms", "queueing_time_ms", "statefulness",
                        "friction"},
                       where);
    TaskClass tc;
    tc.id = get<std::string>(c, "id", where);
    tc.latency_budget_ms = get<double>(c, "latency_budget_ms", where);
    tc.energy_per_unit_kwh = get<double>(c, "energy_per_unit_kwh", where);
    tc.compute_demand = get<double>(c, "compute_demand", where);
    tc.rounds = get<int>(c, "rounds", where);
    tc.inference_time_ms = get<double>(c, "inference_time_ms", where);
    tc.queueing_time_ms = get_or<double>(c, "queueing_time_ms", 0.0, where);
    const auto sf = get<std::string>(c, "statefulness", where);
    auto parsed = parse_statefulness(sf);
    if (!parsed) throw SchemaError("unknown statefulness '" + sf + "' in class " + tc.id);
    tc.statefulness = *parsed;
    if (c.contains("friction")) {
      const auto& f = c["friction"];
      detail::check_keys(f,
                         {"state_cost_per_unit", "cache_cost_per_unit", "egress_gb_per_unit",
                          "replica_cost_per_unit"},
                         "friction of class " + tc.id);
      tc.friction.state_cost_per_unit = get_or<double>(f, "state_cost_per_unit", 0.0, where);
      tc.friction.cache_cost_per_unit = get_or<double>(f, "cache_cost_per_unit", 0.0, where);
      tc.friction.egress_gb_per_unit = get_or<double>(f, "egress_gb_per_unit", 0.0, where);
      tc.friction.replica_cost_per_unit = get_or<double>(f, "replica_cost_per_unit", 0.0, where);
    }
    cfg.classes.push_back(std::move(tc));
  }
  cfg.class_mix = get<std::map<std::string, double>>(j, "class_mix", top);
  cfg.demand_series = get<std::vector<double>>(j, "demand_series", top);
  if (j.contains("rtt_matrix")) cfg.rtt_matrix = detail::pair_table(j["rtt_matrix"], "rtt_matrix");
  cfg.wan_inflation = get_or<double>(j, "wan_inflation", 1.0, top);
  cfg.fallback_speed_km_per_ms = get_or<double>(j, "fallback_speed_km_per_ms", 200.0, top);
  cfg.fallback_overhead_ms = get_or<double>(j, "fallback_overhead_ms", 20.0, top);
  if (j.contains("intra_region_floor_ms")) {
    if (j["intra_region_floor_ms"].is_null())
      cfg.intra_region_floor_ms.reset();
    else
      cfg.intra_region_floor_ms = get<double>(j, "intra_region_floor_ms", top);
  }
  cfg.rounds_as_round_trips = get_or<bool>(j, "rounds_as_round_trips", false, top);
  cfg.egress_price_per_gb = get_or<double>(j, "egress_price_per_gb", 0.0, top);
  if (j.contains("egress_price_matrix"))
    cfg.egress_price_matrix = detail::pair_table(j["egress_price_matrix"], "egress_price_matrix");
  cfg.latency_multiplier = get_or<double>(j, "latency_multiplier", 1.0, top);
  if (j.contains("weights")) {
    const auto& w = j["weights"];
    detail::check_keys(w, {"alpha", "beta", "gamma", "eta"}, "weights");
    cfg.weights = {get_or<double>(w, "alpha", 1.0, "weights"), get_or<double>(w, "beta", 1.0, "weights"),
                   get_or<double>(w, "gamma", 1.0, "weights"), get_or<double>(w, "eta", 1.0, "weights")};
  }
  const auto mode = get_or<std::string>(j, "delay_penalty_mode", "geographic", top);
  if (mode == "geographic")
    cfg.delay_penalty_mode = DelayPenaltyMode::geographic;
  else if (mode == "excess")
    cfg.delay_penalty_mode = DelayPenaltyMode::excess;
  else
    throw SchemaError("unknown delay_penalty_mode '" + mode + "'");
  if (j.contains("statefulness_factors")) {
    const auto& f = j["statefulness_factors"];
    detail::check_keys(f, {"low", "medium", "high"}, "statefulness_factors");
    cfg.statefulness_factors = {get_or<double>(f, "low", 0.0, "statefulness_factors"),
                                get_or<double>(f, "medium", 0.5, "statefulness_factors"),
                                get_or<double>(f, "high", 1.0, "statefulness_factors")};
  }
  const auto local = get_or<std::string>(j, "local_default", "colocated", top);
  if (local == "colocated")
    cfg.local_default = LocalDefault::colocated;
  else if (local == "nearest_region")
    cfg.local_default = LocalDefault::nearest_region;
  else
    throw SchemaError("unknown local_default '" + local + "'");
  if (j.contains("legal_mask")) cfg.legal_mask = detail::mask_table(j["legal_mask"], "legal_mask");
  if (j.contains("system_mask")) cfg.system_mask = detail::mask_table(j["system_mask"], "system_mask");
  if (j.contains("tier_thresholds")) {
    const auto& t = j["tier_thresholds"];
    detail::check_keys(t, {"local_ms", "regional_ms"}, "tier_thresholds");
    cfg.tier_thresholds = {get_or<double>(t, "local_ms", 15.0, "tier_thresholds"),
                           get_or<double>(t, "regional_ms", 80.0, "tier_thresholds")};
  }
  return cfg;
}

/// Canonical text form: sorted keys, two-space indent, trailing newline.
inline std::string serialize_scenario(const ScenarioConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

inline ScenarioConfig parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("scenario parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what(),
                     line, col);
  }
  return from_json(j);
}

/// Reads, parses and validates a scenario file.
inline ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  auto cfg = parse_scenario(buf.str());
  if (auto findings = validate_scenario(cfg); !findings.empty())
    throw ValidationFailure(std::move(findings));
  return cfg;
}

inline void save_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write scenario file '" + path.string() + "'");
  out << serialize_scenario(cfg);
  if (!out) throw IoError("failed writing scenario file '" + path.string() + "'");
}

}  // namespace geoplace
