#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "geoplace/scenario_io.hpp"
#include "geoplace/sweep.hpp"

namespace geoplace {

/// Reads a sweep spec; every key is optional and defaults to SweepSpec{}.
inline SweepSpec sweep_spec_from_json(const json& j) {
  detail::check_keys(j,
                     {"multipliers", "policies", "friction_cases", "capacity_regimes",
                      "mix_presets", "frontier_friction", "frontier_capacity",
                      "ablation_multiplier", "high_friction_factor", "loose_capacity_factor",
                      "tight_capacity_factor"},
                     "sweep spec");
  const std::string where = "sweep spec";
  SweepSpec s;
  auto names = [&](const char* key) { return detail::get<std::vector<std::string>>(j, key, where); };
  auto parse_all = [&](const char* key, auto parse, auto& out) {
    if (!j.contains(key)) return;
    out.clear();
    for (const auto& n : names(key)) {
      auto v = parse(n);
      if (!v) throw SchemaError("unknown value '" + n + "' in " + std::string(key));
      out.push_back(*v);
    }
  };
  if (j.contains("multipliers")) s.multipliers = detail::get<std::vector<double>>(j, "multipliers", where);
  parse_all("policies", parse_policy, s.policies);
  parse_all("friction_cases", parse_friction_case, s.friction_cases);
  parse_all("capacity_regimes", parse_capacity_regime, s.capacity_regimes);
  parse_all("mix_presets", parse_mix_preset, s.mix_presets);
  if (j.contains("frontier_friction")) {
    const auto n = detail::get<std::string>(j, "frontier_friction", where);
    auto v = parse_friction_case(n);
    if (!v) throw SchemaError("unknown value '" + n + "' in frontier_friction");
    s.frontier_friction = *v;
  }
  if (j.contains("frontier_capacity")) {
    const auto n = detail::get<std::string>(j, "frontier_capacity", where);
    auto v = parse_capacity_regime(n);
    if (!v) throw SchemaError("unknown value '" + n + "' in frontier_capacity");
    s.frontier_capacity = *v;
  }
  s.ablation_multiplier = detail::get_or<double>(j, "ablation_multiplier", s.ablation_multiplier, where);
  s.high_friction_factor = detail::get_or<double>(j, "high_friction_factor", s.high_friction_factor, where);
  s.loose_capacity_factor = detail::get_or<double>(j, "loose_capacity_factor", s.loose_capacity_factor, where);
  s.tight_capacity_factor = detail::get_or<double>(j, "tight_capacity_factor", s.tight_capacity_factor, where);
  if (auto e = check_spec(s); !e.empty()) throw SchemaError("invalid sweep spec: " + e);
  return s;
}

inline SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read sweep spec '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto text = buf.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("sweep spec parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what(),
                     line, col);
  }
  return sweep_spec_from_json(j);
}

}  // namespace geoplace
