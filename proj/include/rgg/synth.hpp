#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rgg/roads.hpp"
#include "rgg/trips.hpp"

namespace rgg {

// Speed distribution targets. Speeds are drawn log-normally so that the
// configured median and mean are reproduced, then capped.
struct SpeedModel {
  double median_kmh = 8.33;
  double mean_kmh = 9.36;
  double cap_kmh = 25.93;
};

// Circular region where affected trips lose GPS coverage entirely, leaving
// a straight chord after interpolation.
struct TunnelZone {
  LocalCoord center{};
  double radius = 0.0;
};

struct NoiseModel {
  double jitter_sigma_m = 0.0;    // iid gaussian position noise per update
  double dropout_prob = 0.0;      // chance of silently skipping an update
  double endpoint_noise_m = 0.0;  // sigma of manually reported event positions
  std::vector<TunnelZone> tunnels;
  double tunnel_trip_fraction = 0.0;  // share of trips affected by tunnels
};

struct SiteScenario {
  std::uint64_t seed = 1;
  RoadGraph ground_truth;
  int n_trips = 100;
  double cadence_s = 2.0;  // update interval
  SpeedModel speed{};
  NoiseModel noise{};
  double start_epoch_s = 1700000000.0;
};

// Deterministic random site: intersections in convex position connected into
// a ring (plus chords so every intersection keeps degree >= 3), load and
// drop-off nodes attached on near-vertical spur roads. Throws DataError when
// the requested counts cannot be packed into the area with the required
// spacings.
RoadGraph generate_site(std::uint64_t seed, int n_intersections, int n_load,
                        int n_dump, double area_w, double area_h);

// Simulates chained transport cycles over the ground truth: every trip runs
// loaded from a load node to a drop-off node and then empty to the next
// load node. Road edges are driven in one consistent direction (spurs are
// the exception; they are dead ends), every edge is covered, and the noise
// model is applied per update. Deterministic in the scenario seed.
std::vector<Trip> simulate_trips(const SiteScenario& scenario);

// Writers matching the ingestion formats: the trips CSV parses back through
// parse_updates, the labels CSV holds the actual intersections as lat,lon.
void write_trips_csv(std::ostream& out, const std::vector<Trip>& trips);
void write_labels_csv(std::ostream& out, const RoadGraph& ground_truth);

}  // namespace rgg
