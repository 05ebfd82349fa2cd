#include "rgg/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "rgg/cluster.hpp"
#include "rgg/errors.hpp"
#include "rgg/log.hpp"
#include "rgg/parallel.hpp"

namespace rgg {

int resolve_workers(int configured) {
  if (configured > 0) return configured;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

PipelineResult run_pipeline(std::vector<Trip> raw_trips, const AppConfig& config) {
  const int workers = resolve_workers(config.workers);
  const auto t_total = std::chrono::steady_clock::now();
  PipelineResult result;
  result.stats.trips_in = raw_trips.size();

  auto t0 = std::chrono::steady_clock::now();
  result.origin = project_trips(raw_trips);

  std::vector<CleanResult> cleaned(raw_trips.size());
  parallel_for(raw_trips.size(), workers, [&](std::size_t i) {
    cleaned[i] = clean_trip(raw_trips[i], config.preprocess);
  });

  std::vector<Trip> split;
  for (auto& c : cleaned) {
    if (!c.trip) {
      if (c.reason == RejectReason::kTooShort) ++result.stats.rejected_too_short;
      if (c.reason == RejectReason::kAllInvalid) ++result.stats.rejected_all_invalid;
      continue;
    }
    for (auto& part : split_trip(*c.trip, config.preprocess)) {
      split.push_back(std::move(part));
    }
  }
  result.stats.trips_after_split = split.size();
  if (split.empty()) {
    throw DataError("no trip survived preprocessing; nothing to infer from");
  }

  result.prepared.resize(split.size());
  parallel_for(split.size(), workers, [&](std::size_t i) {
    result.prepared[i] = interpolate_trip(split[i], config.preprocess);
  });
  for (const auto& trip : result.prepared) {
    result.stats.points_after_interpolation += trip.updates.size();
  }
  result.timings.preprocess_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  result.grid = build_grid(result.prepared, config.grid_cell_size_m);
  result.field = dissimilarity(result.grid, config.candidates.neighbor_radius_m);
  result.stats.grid_cells = result.grid.cells().size();
  result.timings.grid_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  result.candidates = find_candidates(result.field, result.grid, config.candidates);
  result.stats.candidates = result.candidates.size();
  result.timings.candidates_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  std::vector<LocalCoord> all_points;
  all_points.reserve(result.stats.points_after_interpolation);
  for (const auto& trip : result.prepared) {
    for (const auto& u : trip.updates) all_points.push_back(u.local);
  }
  const SpatialIndex index(std::move(all_points));
  result.validation = validate_all(result.candidates, index, config.validation,
                                   config.candidates.merge_radius_m, workers);
  result.stats.intersections = result.validation.intersections.size();
  result.timings.validation_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  // Load/drop-off locations come from the reported events of the raw trips;
  // update filtering does not affect them.
  result.loads = load_nodes(raw_trips, config.action);
  result.dumps = dropoff_nodes(raw_trips, config.action);
  result.stats.load_nodes = result.loads.size();
  result.stats.dropoff_nodes = result.dumps.size();
  result.timings.action_nodes_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  std::vector<ActionNode> action_nodes = result.loads;
  action_nodes.insert(action_nodes.end(), result.dumps.begin(), result.dumps.end());
  result.graph = build_graph(result.prepared, result.validation.intersections,
                             action_nodes, config.roads,
                             config.preprocess.interp_spacing_m, result.origin, workers);
  result.stats.edges = result.graph.edges.size();
  result.timings.roads_s = seconds_since(t0);

  result.timings.total_s = seconds_since(t_total);
  return result;
}

void write_report(std::ostream& out, const PipelineResult& r, const AppConfig& cfg) {
  char buf[640];
  out << "road graph inference report\n";
  out << "===========================\n\n";
  std::snprintf(buf, sizeof(buf), "local origin: lat %.9f, lon %.9f\n\n",
                r.origin.lat, r.origin.lon);
  out << buf;

  out << "counts\n";
  std::snprintf(buf, sizeof(buf),
                "  trips in:             %zu\n"
                "  rejected (too short): %zu\n"
                "  rejected (invalid):   %zu\n"
                "  trips after split:    %zu\n"
                "  interpolated points:  %zu\n"
                "  grid cells:           %zu\n"
                "  candidates:           %zu\n"
                "  intersections:        %zu\n"
                "  load nodes:           %zu\n"
                "  drop-off nodes:       %zu\n"
                "  edges:                %zu\n\n",
                r.stats.trips_in, r.stats.rejected_too_short,
                r.stats.rejected_all_invalid, r.stats.trips_after_split,
                r.stats.points_after_interpolation, r.stats.grid_cells,
                r.stats.candidates, r.stats.intersections, r.stats.load_nodes,
                r.stats.dropoff_nodes, r.stats.edges);
  out << buf;

  out << "timings (s)\n";
  std::snprintf(buf, sizeof(buf),
                "  preprocess: %.3f\n  grid:       %.3f\n  candidates: %.3f\n"
                "  validation: %.3f\n  action:     %.3f\n  roads:      %.3f\n"
                "  total:      %.3f\n\n",
                r.timings.preprocess_s, r.timings.grid_s, r.timings.candidates_s,
                r.timings.validation_s, r.timings.action_nodes_s, r.timings.roads_s,
                r.timings.total_s);
  out << buf;

  out << "parameters\n";
  std::snprintf(buf, sizeof(buf),
                "  seed=%llu workers=%d\n"
                "  preprocess: endpoint_trim=%g spline_degree=%d spacing=%g "
                "min_points=%zu idle_split=%g jump_split=%g turn_split_rad=%g\n",
                static_cast<unsigned long long>(cfg.seed), cfg.workers,
                cfg.preprocess.endpoint_trim_m, cfg.preprocess.spline_degree,
                cfg.preprocess.interp_spacing_m, cfg.preprocess.min_points,
                cfg.preprocess.idle_split_s, cfg.preprocess.jump_split_m,
                cfg.preprocess.turn_split_rad);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "  grid: cell_size=%g\n  candidates: thr=%g neighbor_radius=%g "
                "merge_radius=%g\n",
                cfg.grid_cell_size_m, cfg.candidates.dissimilarity_thr,
                cfg.candidates.neighbor_radius_m, cfg.candidates.merge_radius_m);
  out << buf;
  out << "  validation: radii=";
  for (std::size_t i = 0; i < cfg.validation.radii.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s(%g,%g)", i ? "," : "",
                  cfg.validation.radii[i].inner_radius_m, cfg.validation.radii[i].width_m);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                " eps=%g min_samples=%d passing_radius=%g ext_dist=%g ext_min=%d "
                "max_points=%zu\n",
                cfg.validation.passing_eps_m, cfg.validation.passing_min_samples,
                cfg.validation.passing_radius_m, cfg.validation.ext_cluster_dist_m,
                cfg.validation.ext_cluster_min_size, cfg.validation.max_points);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "  action: merge=%g dropoff_eps=%g dropoff_min=%d trim=%g\n"
                "  roads: node_radius=%g eps=%g min_samples=%d trim_margin=%g\n",
                cfg.action.merge_radius_m, cfg.action.dropoff_eps_m,
                cfg.action.dropoff_min_samples, cfg.action.trim_fraction,
                cfg.roads.node_radius_m, cfg.roads.cluster_eps_m,
                cfg.roads.cluster_min_samples, cfg.roads.trim_margin_m);
  out << buf;
}

void write_candidates_debug_json(std::ostream& out, const ValidationOutcome& outcome) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& detail : outcome.details) {
    nlohmann::json c;
    c["candidate"] = {{"x", detail.candidate.x}, {"y", detail.candidate.y}};
    c["accepted"] = detail.accepted;
    auto& radii = c["radii"] = nlohmann::json::array();
    for (const auto& rv : detail.radii) {
      nlohmann::json r;
      r["inner_radius"] = rv.annulus.inner_radius_m;
      r["width"] = rv.annulus.width_m;
      r["road_count"] = rv.road_count;
      r["valid"] = rv.valid;
      auto& clusters = r["clusters"] = nlohmann::json::array();
      for (const auto& cluster : rv.clusters) {
        nlohmann::json cl;
        cl["counted"] = cluster.counted;
        auto& pts = cl["points"] = nlohmann::json::array();
        for (const auto& p : cluster.points) pts.push_back({p.x, p.y});
        clusters.push_back(std::move(cl));
      }
      radii.push_back(std::move(r));
    }
    doc.push_back(std::move(c));
  }
  out << doc.dump(1) << "\n";
}

}  // namespace rgg
