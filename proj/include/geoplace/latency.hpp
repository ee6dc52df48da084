#pragma once

#include <cmath>
#include <numbers>

#include "geoplace/types.hpp"

namespace geoplace {

inline constexpr double kEarthRadiusKm = 6371.0;

struct GeoPoint {
  double latitude = 0.0;
  double longitude = 0.0;
};

/// Haversine distance in kilometres on a sphere of radius 6371 km.
inline double great_circle_km(GeoPoint a, GeoPoint b) {
  constexpr double deg = std::numbers::pi / 180.0;
  const double phi1 = a.latitude * deg;
  const double phi2 = b.latitude * deg;
  const double dphi = (b.latitude - a.latitude) * deg;
  const double dlambda = (b.longitude - a.longitude) * deg;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

inline GeoPoint location(const ComputeNode& n) { return {n.latitude, n.longitude}; }

struct LatencyParams {
  double fallback_speed_km_per_ms = 200.0;
  double fallback_overhead_ms = 20.0;
  double wan_inflation = 1.0;
  std::optional<double> intra_region_floor_ms = 1.0;

  static LatencyParams from(const ScenarioConfig& cfg) {
    return {cfg.fallback_speed_km_per_ms, cfg.fallback_overhead_ms, cfg.wan_inflation,
            cfg.intra_region_floor_ms};
  }
};

/// One-way service-to-compute latency. Measured RTT entries are halved and
/// inflated; missing pairs use the distance fallback (also inflated).
/// The RTT table is consulted in both directions.
inline double service_to_compute_ms(const ComputeNode& service_region, const ComputeNode& target,
                                    const PairTable& rtt, const LatencyParams& p) {
  if (service_region.id == target.id && p.intra_region_floor_ms) return *p.intra_region_floor_ms;
  auto measured = lookup(rtt, service_region.id, target.id);
  if (!measured) measured = lookup(rtt, target.id, service_region.id);
  if (measured) return *measured / 2.0 * p.wan_inflation;
  const double d = great_circle_km(location(service_region), location(target));
  return (d / p.fallback_speed_km_per_ms + p.fallback_overhead_ms) * p.wan_inflation;
}

inline double service_to_compute_ms(const ServiceNode& s, const ComputeNode& i,
                                    const ScenarioConfig& cfg) {
  return service_to_compute_ms(cfg.node(s.colocated_compute), i, cfg.rtt_matrix,
                               LatencyParams::from(cfg));
}

/// Sum of the end-to-end components for a given one-way service-to-compute
/// leg. Each interaction round is charged one leg, or two when rounds are
/// modelled as full round trips.
inline double end_to_end_ms(const TaskClass& c, double client_ms, double sc_ms,
                            bool rounds_as_round_trips = false) {
  const double legs = rounds_as_round_trips ? 2.0 * c.rounds : static_cast<double>(c.rounds);
  return client_ms + legs * sc_ms + c.queueing_time_ms + c.inference_time_ms;
}

inline double end_to_end_ms(const TaskClass& c, const ServiceNode& s, const ComputeNode& i,
                            const ScenarioConfig& cfg) {
  return end_to_end_ms(c, s.client_latency_ms, service_to_compute_ms(s, i, cfg),
                       cfg.rounds_as_round_trips);
}

}  // namespace geoplace
