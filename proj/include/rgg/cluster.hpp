#pragma once

#include <cstddef>
#include <vector>

#include "rgg/geo.hpp"

namespace rgg {

// Label assigned to points that belong to no cluster.
inline constexpr int kNoise = -1;

// Immutable balanced k-d tree over 2D points. Safe for concurrent queries
// once built.
class SpatialIndex {
 public:
  SpatialIndex() = default;
  explicit SpatialIndex(std::vector<LocalCoord> points);

  std::size_t size() const { return points_.size(); }
  const LocalCoord& point(std::size_t i) const { return points_[i]; }
  const std::vector<LocalCoord>& points() const { return points_; }

  // Indices of all points with euclidean distance <= radius from center,
  // in ascending index order.
  std::vector<std::size_t> range_query(const LocalCoord& center, double radius) const;

 private:
  void build(std::size_t lo, std::size_t hi, int depth);
  void query(std::size_t lo, std::size_t hi, int depth, const LocalCoord& center,
             double radius, std::vector<std::size_t>& out) const;

  std::vector<LocalCoord> points_;
  // Median-partitioned permutation of point indices; the node of the range
  // [lo, hi) is order_[(lo + hi) / 2].
  std::vector<std::size_t> order_;
};

// Density-based clustering. A point is core iff its eps-neighborhood
// (including itself) holds at least min_samples points; border points join
// the cluster whose core reaches them first in input order. Returns one
// label per point, contiguous from 0, with kNoise for unclustered points.
std::vector<int> dbscan(const std::vector<LocalCoord>& points, double eps,
                        int min_samples);

// Single-linkage grouping: the transitive closure of "within threshold".
// Groups are ordered by their smallest member index; members are ascending.
std::vector<std::vector<std::size_t>> single_linkage_groups(
    const std::vector<LocalCoord>& points, double threshold);

// Replaces each single-linkage group by its centroid.
std::vector<LocalCoord> merge_by_distance(const std::vector<LocalCoord>& points,
                                          double threshold);

}  // namespace rgg
