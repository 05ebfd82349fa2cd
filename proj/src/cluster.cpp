#include "rgg/cluster.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace rgg {

SpatialIndex::SpatialIndex(std::vector<LocalCoord> points)
    : points_(std::move(points)), order_(points_.size()) {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  if (!order_.empty()) build(0, order_.size(), 0);
}

void SpatialIndex::build(std::size_t lo, std::size_t hi, int depth) {
  if (hi - lo <= 1) return;
  const std::size_t mid = (lo + hi) / 2;
  const bool by_x = (depth % 2) == 0;
  std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi,
                   [&](std::size_t a, std::size_t b) {
                     const double ca = by_x ? points_[a].x : points_[a].y;
                     const double cb = by_x ? points_[b].x : points_[b].y;
                     if (ca != cb) return ca < cb;
                     return a < b;  // deterministic for duplicate coordinates
                   });
  build(lo, mid, depth + 1);
  build(mid + 1, hi, depth + 1);
}

std::vector<std::size_t> SpatialIndex::range_query(const LocalCoord& center,
                                                   double radius) const {
  std::vector<std::size_t> out;
  if (!order_.empty() && radius >= 0.0) {
    query(0, order_.size(), 0, center, radius, out);
    std::sort(out.begin(), out.end());
  }
  return out;
}

void SpatialIndex::query(std::size_t lo, std::size_t hi, int depth,
                         const LocalCoord& center, double radius,
                         std::vector<std::size_t>& out) const {
  if (lo >= hi) return;
  const std::size_t mid = (lo + hi) / 2;
  const LocalCoord& p = points_[order_[mid]];
  if (distance(p, center) <= radius) out.push_back(order_[mid]);
  const bool by_x = (depth % 2) == 0;
  const double delta = by_x ? center.x - p.x : center.y - p.y;
  if (delta <= radius) query(lo, mid, depth + 1, center, radius, out);
  if (-delta <= radius) query(mid + 1, hi, depth + 1, center, radius, out);
}

std::vector<int> dbscan(const std::vector<LocalCoord>& points, double eps,
                        int min_samples) {
  constexpr int kUnvisited = -2;
  std::vector<int> labels(points.size(), kUnvisited);
  if (points.empty()) return labels;

  const SpatialIndex index(points);
  const std::size_t min_pts = static_cast<std::size_t>(std::max(1, min_samples));
  int next_cluster = 0;
  std::deque<std::size_t> frontier;

  // Points are labeled when first reached, so each enters the frontier (and
  // runs its neighborhood query) at most once.
  auto absorb = [&](const std::vector<std::size_t>& neighbors, int cid) {
    for (const std::size_t v : neighbors) {
      if (labels[v] == kNoise) {
        labels[v] = cid;  // border point; known non-core, no expansion
      } else if (labels[v] == kUnvisited) {
        labels[v] = cid;
        frontier.push_back(v);
      }
    }
  };

  for (std::size_t i = 0; i < points.size(); ++i) {
    if (labels[i] != kUnvisited) continue;
    const auto seed_neighbors = index.range_query(points[i], eps);
    if (seed_neighbors.size() < min_pts) {
      labels[i] = kNoise;
      continue;
    }
    const int cid = next_cluster++;
    labels[i] = cid;
    frontier.clear();
    absorb(seed_neighbors, cid);
    while (!frontier.empty()) {
      const std::size_t j = frontier.front();
      frontier.pop_front();
      const auto neighbors = index.range_query(points[j], eps);
      if (neighbors.size() >= min_pts) absorb(neighbors, cid);
    }
  }
  return labels;
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Attach the larger root to the smaller, so the group representative is
    // always the smallest member index.
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

std::vector<std::vector<std::size_t>> single_linkage_groups(
    const std::vector<LocalCoord>& points, double threshold) {
  std::vector<std::vector<std::size_t>> groups;
  if (points.empty()) return groups;

  const SpatialIndex index(points);
  UnionFind uf(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const std::size_t j : index.range_query(points[i], threshold)) {
      uf.unite(i, j);
    }
  }

  std::vector<int> group_of(points.size(), -1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t root = uf.find(i);
    if (group_of[root] < 0) {
      group_of[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(i);
  }
  return groups;
}

std::vector<LocalCoord> merge_by_distance(const std::vector<LocalCoord>& points,
                                          double threshold) {
  std::vector<LocalCoord> out;
  for (const auto& group : single_linkage_groups(points, threshold)) {
    LocalCoord centroid{0.0, 0.0};
    for (const std::size_t i : group) {
      centroid.x += points[i].x;
      centroid.y += points[i].y;
    }
    centroid.x /= static_cast<double>(group.size());
    centroid.y /= static_cast<double>(group.size());
    out.push_back(centroid);
  }
  return out;
}

}  // namespace rgg
