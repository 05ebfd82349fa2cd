#pragma once

#include <iosfwd>
#include <vector>

#include "rgg/action_nodes.hpp"
#include "rgg/config.hpp"
#include "rgg/heading_grid.hpp"
#include "rgg/intersections.hpp"
#include "rgg/roads.hpp"
#include "rgg/trips.hpp"

namespace rgg {

struct PipelineStats {
  std::size_t trips_in = 0;
  std::size_t rejected_too_short = 0;
  std::size_t rejected_all_invalid = 0;
  std::size_t trips_after_split = 0;
  std::size_t points_after_interpolation = 0;
  std::size_t grid_cells = 0;
  std::size_t candidates = 0;
  std::size_t intersections = 0;
  std::size_t load_nodes = 0;
  std::size_t dropoff_nodes = 0;
  std::size_t edges = 0;
};

struct StageTimings {
  double preprocess_s = 0.0;
  double grid_s = 0.0;
  double candidates_s = 0.0;
  double validation_s = 0.0;
  double action_nodes_s = 0.0;
  double roads_s = 0.0;
  double total_s = 0.0;
};

struct PipelineResult {
  GeoCoord origin{};
  std::vector<Trip> prepared;  // cleaned, split, interpolated
  HeadingGrid grid;
  DissimilarityField field;
  std::vector<LocalCoord> candidates;
  ValidationOutcome validation;
  std::vector<ActionNode> loads;
  std::vector<ActionNode> dumps;
  RoadGraph graph;
  PipelineStats stats;
  StageTimings timings;
};

// Runs the whole inference chain: preprocessing, heading histogram,
// candidate detection, validation, load/drop-off nodes, road inference.
// Throws DataError when no trip survives preprocessing.
PipelineResult run_pipeline(std::vector<Trip> raw_trips, const AppConfig& config);

void write_report(std::ostream& out, const PipelineResult& result,
                  const AppConfig& config);

// Per-candidate validation dump (position, per-radius road counts, annulus
// cluster members) for plots and inspection.
void write_candidates_debug_json(std::ostream& out, const ValidationOutcome& outcome);

int resolve_workers(int configured);

}  // namespace rgg
