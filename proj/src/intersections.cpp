#include "rgg/intersections.hpp"

#include <algorithm>
#include <random>

#include "rgg/parallel.hpp"

namespace rgg {

std::vector<LocalCoord> find_candidates(const DissimilarityField& field,
                                        const HeadingGrid& grid,
                                        const CandidateParams& params) {
  std::vector<LocalCoord> flagged;
  for (const auto& [cell, delta] : field) {
    if (delta >= params.dissimilarity_thr) flagged.push_back(grid.cell_center(cell));
  }

  std::vector<LocalCoord> candidates;
  for (const auto& group : single_linkage_groups(flagged, params.merge_radius_m)) {
    if (group.size() < 2) continue;  // lone cells are assumed spurious
    LocalCoord centroid{0.0, 0.0};
    for (const std::size_t i : group) {
      centroid.x += flagged[i].x;
      centroid.y += flagged[i].y;
    }
    centroid.x /= static_cast<double>(group.size());
    centroid.y /= static_cast<double>(group.size());
    candidates.push_back(centroid);
  }
  return candidates;
}

RadiusValidation validate_candidate(const LocalCoord& candidate,
                                    const SpatialIndex& index,
                                    const ValidationParams& params,
                                    const AnnulusSpec& annulus,
                                    std::uint64_t rng_seed) {
  RadiusValidation result;
  result.annulus = annulus;
  const double outer = annulus.inner_radius_m + annulus.width_m;

  const auto disc_indices = index.range_query(candidate, outer);
  std::vector<LocalCoord> disc;
  disc.reserve(disc_indices.size());
  for (const std::size_t i : disc_indices) disc.push_back(index.point(i));

  if (disc.size() > params.max_points) {
    std::mt19937_64 rng(rng_seed);
    std::vector<LocalCoord> sampled;
    sampled.reserve(params.max_points);
    std::sample(disc.begin(), disc.end(), std::back_inserter(sampled),
                params.max_points, rng);
    disc = std::move(sampled);
  }
  if (disc.empty()) return result;

  // Keep only points whose disc-level cluster touches the candidate; this is
  // what rejects parallel roads that pass close by without connecting.
  const auto labels = dbscan(disc, params.passing_eps_m, params.passing_min_samples);
  int n_clusters = 0;
  for (const int l : labels) n_clusters = std::max(n_clusters, l + 1);
  std::vector<char> connected(static_cast<std::size_t>(n_clusters), 0);
  for (std::size_t i = 0; i < disc.size(); ++i) {
    if (labels[i] < 0) continue;
    if (distance(disc[i], candidate) <= params.passing_radius_m) {
      connected[static_cast<std::size_t>(labels[i])] = 1;
    }
  }

  std::vector<LocalCoord> annulus_points;
  for (std::size_t i = 0; i < disc.size(); ++i) {
    if (labels[i] < 0 || !connected[static_cast<std::size_t>(labels[i])]) continue;
    const double d = distance(disc[i], candidate);
    if (d >= annulus.inner_radius_m && d <= outer) annulus_points.push_back(disc[i]);
  }

  for (const auto& group :
       single_linkage_groups(annulus_points, params.ext_cluster_dist_m)) {
    AnnulusCluster cluster;
    for (const std::size_t i : group) cluster.points.push_back(annulus_points[i]);
    cluster.counted = group.size() > static_cast<std::size_t>(params.ext_cluster_min_size);
    if (cluster.counted) ++result.road_count;
    result.clusters.push_back(std::move(cluster));
  }
  result.valid = result.road_count >= 3;
  return result;
}

ValidationOutcome validate_all(const std::vector<LocalCoord>& candidates,
                               const SpatialIndex& index,
                               const ValidationParams& params,
                               double merge_radius, int workers) {
  ValidationOutcome outcome;
  outcome.details.resize(candidates.size());

  parallel_for(candidates.size(), workers, [&](std::size_t c) {
    CandidateValidation detail;
    detail.candidate = candidates[c];
    // One derived RNG stream per candidate keeps subsampling independent of
    // the worker count.
    const std::uint64_t stream = params.seed * 0x9E3779B97F4A7C15ull + c;
    for (const auto& annulus : params.radii) {
      detail.radii.push_back(
          validate_candidate(candidates[c], index, params, annulus, stream));
      detail.accepted = detail.accepted || detail.radii.back().valid;
    }
    outcome.details[c] = std::move(detail);
  });

  std::vector<LocalCoord> accepted_pos;
  std::vector<const CandidateValidation*> accepted;
  for (const auto& detail : outcome.details) {
    if (!detail.accepted) continue;
    accepted_pos.push_back(detail.candidate);
    accepted.push_back(&detail);
  }

  for (const auto& group : single_linkage_groups(accepted_pos, merge_radius)) {
    Intersection merged;
    LocalCoord centroid{0.0, 0.0};
    for (const std::size_t i : group) {
      centroid.x += accepted_pos[i].x;
      centroid.y += accepted_pos[i].y;
      for (const auto& rv : accepted[i]->radii) {
        if (!rv.valid) continue;
        merged.outgoing_roads = std::max(merged.outgoing_roads, rv.road_count);
        if (std::find(merged.validated_at.begin(), merged.validated_at.end(),
                      rv.annulus.inner_radius_m) == merged.validated_at.end()) {
          merged.validated_at.push_back(rv.annulus.inner_radius_m);
        }
      }
    }
    merged.position = LocalCoord{centroid.x / static_cast<double>(group.size()),
                                 centroid.y / static_cast<double>(group.size())};
    std::sort(merged.validated_at.begin(), merged.validated_at.end());
    outcome.intersections.push_back(std::move(merged));
  }
  return outcome;
}

}  // namespace rgg
