#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "geoplace/types.hpp"

namespace geoplace {

// Synthetic ten-region scenario. Hourly series follow stylized formulas:
// carbon mean * (1 + amp * sin(2*pi*(h + phase)/24)), a milder diurnal
// price swing, constant PUE, and capacity = share * total hourly compute
// demand. Round-trip times are a public-reference subset; pairs involving
// Beijing are left to the distance fallback.

namespace detail {

struct RegionSpec {
  const char* id;
  const char* name;
  const char* continent;
  double lat, lon;
  double price;      // $/kWh mean
  double price_amp;
  double moer;       // gCO2eq/kWh mean
  double moer_amp;   // in [0.1, 0.4]
  double pue;
  double weight;     // demand weight
  double cap_share;  // of total hourly compute demand
};

// clang-format off
inline constexpr RegionSpec kRegions[] = {
  {"virginia",  "Virginia",  "na",  38.95,  -77.45, 0.085, 0.15, 380.0, 0.15, 1.20, 0.20, 0.22},
  {"oregon",    "Oregon",    "na",  45.60, -121.18, 0.055, 0.10, 150.0, 0.30, 1.15, 0.06, 0.35},
  {"frankfurt", "Frankfurt", "eu",  50.11,    8.68, 0.130, 0.20, 350.0, 0.25, 1.25, 0.08, 0.12},
  {"london",    "London",    "eu",  51.51,   -0.13, 0.120, 0.20, 220.0, 0.30, 1.20, 0.12, 0.13},
  {"singapore", "Singapore", "as",   1.35,  103.82, 0.120, 0.10, 470.0, 0.10, 1.35, 0.13, 0.12},
  {"tokyo",     "Tokyo",     "as",  35.68,  139.69, 0.120, 0.15, 460.0, 0.15, 1.30, 0.12, 0.12},
  {"dubai",     "Dubai",     "me",  25.20,   55.27, 0.060, 0.10, 420.0, 0.20, 1.45, 0.05, 0.12},
  {"sydney",    "Sydney",    "oc", -33.87,  151.21, 0.100, 0.20, 550.0, 0.35, 1.25, 0.05, 0.10},
  {"beijing",   "Beijing",   "as",  39.90,  116.40, 0.080, 0.15, 560.0, 0.15, 1.30, 0.14, 0.17},
  {"sao_paulo", "São Paulo", "sa", -23.55,  -46.63, 0.070, 0.15, 110.0, 0.30, 1.35, 0.05, 0.35},
};

struct RttSpec { const char* a; const char* b; double ms; };

inline constexpr RttSpec kRtt[] = {
  {"virginia", "oregon", 67}, {"virginia", "frankfurt", 88}, {"virginia", "london", 76},
  {"virginia", "singapore", 214}, {"virginia", "tokyo", 150}, {"virginia", "dubai", 180},
  {"virginia", "sydney", 200}, {"virginia", "sao_paulo", 115},
  {"oregon", "frankfurt", 150}, {"oregon", "london", 136}, {"oregon", "singapore", 165},
  {"oregon", "tokyo", 95}, {"oregon", "dubai", 230}, {"oregon", "sydney", 160},
  {"oregon", "sao_paulo", 175},
  {"frankfurt", "london", 15}, {"frankfurt", "singapore", 155}, {"frankfurt", "tokyo", 230},
  {"frankfurt", "dubai", 105}, {"frankfurt", "sydney", 250}, {"frankfurt", "sao_paulo", 195},
  {"london", "singapore", 165}, {"london", "tokyo", 225}, {"london", "dubai", 115},
  {"london", "sydney", 255}, {"london", "sao_paulo", 185},
  {"singapore", "tokyo", 70}, {"singapore", "dubai", 85}, {"singapore", "sydney", 92},
  {"singapore", "sao_paulo", 325},
  {"tokyo", "dubai", 150}, {"tokyo", "sydney", 105}, {"tokyo", "sao_paulo", 255},
  {"dubai", "sydney", 175}, {"dubai", "sao_paulo", 285},
  {"sydney", "sao_paulo", 300},
};
// clang-format on

inline double round6(double x) { return std::round(x * 1e6) / 1e6; }

}  // namespace detail

inline std::vector<TaskClass> default_task_classes() {
  // Budgets and rounds at representative points of each class's range.
  std::vector<TaskClass> out;
  out.push_back({"A", 200.0, 0.3, 1.0, 1, 50.0, 0.0, Statefulness::high,
                 {0.050, 0.040, 0.002, 0.005}});
  out.push_back({"B", 1000.0, 0.5, 1.5, 2, 300.0, 0.0, Statefulness::medium,
                 {0.060, 0.040, 0.005, 0.010}});
  out.push_back({"C", 30000.0, 1.0, 3.0, 5, 2000.0, 0.0, Statefulness::medium,
                 {0.120, 0.060, 0.020, 0.010}});
  out.push_back({"D", 3600000.0, 1.5, 4.0, 3, 60000.0, 0.0, Statefulness::low,
                 {0.020, 0.010, 0.050, 0.004}});
  return out;
}

/// Compute units requested in one hour: sum over classes of D_k * mix_k * demand.
inline double hourly_compute_demand(const ScenarioConfig& cfg, int hour) {
  double per_unit = 0.0;
  for (const auto& c : cfg.classes) {
    auto it = cfg.class_mix.find(c.id);
    if (it != cfg.class_mix.end()) per_unit += c.compute_demand * it->second;
  }
  return per_unit * cfg.demand_series.at(static_cast<std::size_t>(hour));
}

/// The bundled ten-region scenario. `hours` defaults to one week.
inline ScenarioConfig default_scenario(int hours = 168) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  ScenarioConfig cfg;
  cfg.id = "default-10-region";
  cfg.note =
      "synthetic: stylized hourly price/carbon series, share-based capacity, "
      "public-reference RTT subset with distance fallback for missing pairs";
  cfg.horizon_hours = hours;
  cfg.classes = default_task_classes();
  cfg.class_mix = {{"A", 0.35}, {"B", 0.30}, {"C", 0.20}, {"D", 0.15}};
  for (int h = 0; h < hours; ++h)
    cfg.demand_series.push_back(
        detail::round6(1000.0 * (1.0 + 0.1 * std::sin(two_pi * (h - 6) / 24.0))));

  for (const auto& r : detail::kRegions) {
    ComputeNode n;
    n.id = r.id;
    n.display_name = r.name;
    n.latitude = r.lat;
    n.longitude = r.lon;
    // Local solar hour offset; prices peak mid-afternoon, carbon at night.
    const double phase = r.lon / 15.0;
    for (int h = 0; h < hours; ++h) {
      const double local = h + phase;
      n.price_series.push_back(
          detail::round6(r.price * (1.0 + r.price_amp * std::sin(two_pi * (local - 9.0) / 24.0))));
      n.moer_series.push_back(
          detail::round6(r.moer * (1.0 + r.moer_amp * std::sin(two_pi * (local + 6.0) / 24.0))));
      n.pue_series.push_back(r.pue);
    }
    cfg.nodes.push_back(std::move(n));
    cfg.service_nodes.push_back({r.id, r.id, 10.0, r.weight});
  }
  for (std::size_t i = 0; i < cfg.nodes.size(); ++i)
    for (int h = 0; h < hours; ++h)
      cfg.nodes[i].capacity_series.push_back(
          detail::round6(detail::kRegions[i].cap_share * hourly_compute_demand(cfg, h)));

  for (const auto& e : detail::kRtt) {
    cfg.rtt_matrix[e.a][e.b] = e.ms;
    cfg.rtt_matrix[e.b][e.a] = e.ms;
  }
  cfg.wan_inflation = 1.4;
  cfg.egress_price_per_gb = 0.02;
  for (const auto& a : detail::kRegions)
    for (const auto& b : detail::kRegions) {
      if (std::string(a.id) == b.id) continue;
      cfg.egress_price_matrix[a.id][b.id] = std::string(a.continent) == b.continent ? 0.02 : 0.05;
    }
  return cfg;
}

}  // namespace geoplace
