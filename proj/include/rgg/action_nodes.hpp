#pragma once

#include <string>
#include <vector>

#include "rgg/geo.hpp"
#include "rgg/trips.hpp"

namespace rgg {

enum class ActionKind { kLoad, kDropoff };

struct ActionNode {
  ActionKind kind = ActionKind::kLoad;
  LocalCoord position{};
  std::size_t support = 0;              // contributing events
  std::vector<std::string> source_ids;  // excavator/task keys or cluster ids
};

struct ActionParams {
  double merge_radius_m = 100.0;  // same-kind nodes closer than this merge
  double dropoff_eps_m = 15.0;
  int dropoff_min_samples = 5;
  double trim_fraction = 0.1;     // per tail, per axis
};

// Loading points: events grouped by (excavator, task), each group reduced to
// a coordinate-wise trimmed mean, then groups merged by distance. Trips
// without an excavator id fall back to task-only grouping.
std::vector<ActionNode> load_nodes(const std::vector<Trip>& trips,
                                   const ActionParams& params);

// Drop-off points: all reported events clustered with DBSCAN, cluster means
// kept (noise discarded), then merged by distance.
std::vector<ActionNode> dropoff_nodes(const std::vector<Trip>& trips,
                                      const ActionParams& params);

// Coordinate-wise mean after discarding the trim_fraction most extreme
// values on each end of each axis.
LocalCoord trimmed_mean(const std::vector<LocalCoord>& points, double trim_fraction);

}  // namespace rgg
