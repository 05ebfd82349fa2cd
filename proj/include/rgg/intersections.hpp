#pragma once

#include <cstdint>
#include <vector>

#include "rgg/cluster.hpp"
#include "rgg/geo.hpp"
#include "rgg/heading_grid.hpp"

namespace rgg {

struct CandidateParams {
  double dissimilarity_thr = 1.4;  // in the aggregated heading-field units
  double neighbor_radius_m = 20.0;
  double merge_radius_m = 15.0;  // candidate grouping distance
};

// One annulus pass: inner radius and ring width (outer = inner + width).
struct AnnulusSpec {
  double inner_radius_m = 30.0;
  double width_m = 25.0;
};

struct ValidationParams {
  std::vector<AnnulusSpec> radii{{30.0, 25.0}, {100.0, 25.0}};
  double passing_eps_m = 12.0;     // DBSCAN radius over the full disc
  int passing_min_samples = 5;
  double passing_radius_m = 15.0;  // cluster must touch the candidate this close
  double ext_cluster_dist_m = 20.0;
  int ext_cluster_min_size = 5;    // strict: a road needs size > this
  std::size_t max_points = 1000;   // disc subsample cap
  std::uint64_t seed = 0;          // subsampling seed
};

struct Intersection {
  LocalCoord position{};
  int outgoing_roads = 0;               // max road count over accepting radii
  std::vector<double> validated_at;     // inner radii that accepted
};

// Validation detail kept for debug export and plots.
struct AnnulusCluster {
  std::vector<LocalCoord> points;
  bool counted = false;  // size exceeded ext_cluster_min_size
};

struct RadiusValidation {
  AnnulusSpec annulus{};
  int road_count = 0;
  bool valid = false;
  std::vector<AnnulusCluster> clusters;
};

struct CandidateValidation {
  LocalCoord candidate{};
  std::vector<RadiusValidation> radii;
  bool accepted = false;
};

struct ValidationOutcome {
  std::vector<Intersection> intersections;
  std::vector<CandidateValidation> details;  // one entry per input candidate
};

// Collects cell centers whose dissimilarity reaches the threshold, groups
// them single-linkage at merge_radius_m, drops singleton groups, and returns
// the group centroids.
std::vector<LocalCoord> find_candidates(const DissimilarityField& field,
                                        const HeadingGrid& grid,
                                        const CandidateParams& params);

// Annulus check of one candidate at one radius. The index must cover all
// preprocessed trip points. Returns whether at least three distinct roads
// leave the candidate and how many were counted.
RadiusValidation validate_candidate(const LocalCoord& candidate,
                                    const SpatialIndex& index,
                                    const ValidationParams& params,
                                    const AnnulusSpec& annulus,
                                    std::uint64_t rng_seed);

// Runs every candidate against every configured annulus. A candidate is
// accepted when any radius accepts it; accepted candidates closer than
// merge_radius to each other are merged by centroid.
ValidationOutcome validate_all(const std::vector<LocalCoord>& candidates,
                               const SpatialIndex& index,
                               const ValidationParams& params,
                               double merge_radius, int workers = 1);

}  // namespace rgg
