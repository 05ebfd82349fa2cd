#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rgg/action_nodes.hpp"
#include "rgg/geo.hpp"
#include "rgg/intersections.hpp"
#include "rgg/trips.hpp"

namespace rgg {

enum class NodeKind { kIntersection, kLoad, kDropoff };

struct Node {
  std::int64_t id = 0;
  NodeKind kind = NodeKind::kIntersection;
  LocalCoord local{};
  GeoCoord geo{};
  std::optional<double> altitude{};  // input data carries none; kept optional
};

// Endpoint id for edges not attached to a node (trip start/end side).
inline constexpr std::int64_t kOpenEnd = -1;

struct Edge {
  std::int64_t id = 0;
  std::int64_t node_a = kOpenEnd;
  std::int64_t node_b = kOpenEnd;
  std::vector<LocalCoord> polyline;  // equidistant at the interpolation spacing
  std::size_t support = 0;           // segments in the dominant cluster
};

struct RoadGraph {
  GeoCoord origin{};  // local frame anchor
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  const Node* find_node(std::int64_t id) const {
    for (const auto& n : nodes) {
      if (n.id == id) return &n;
    }
    return nullptr;
  }
};

struct RoadParams {
  double node_radius_m = 30.0;   // track-to-node attachment distance
  double cluster_eps_m = 15.0;   // DBSCAN radius over pooled segment points
  int cluster_min_samples = 5;
  double trim_margin_m = 0.0;    // extra trim beyond node_radius_m
  bool random_representative = false;  // seeded draw instead of smallest trip id
  std::uint64_t seed = 0;
};

// A contiguous run of trip points between two cuts (or a trip end).
struct Segment {
  std::string trip_id;
  std::size_t seq = 0;  // position of the segment within its trip
  std::int64_t start_node = kOpenEnd;
  std::int64_t end_node = kOpenEnd;
  std::vector<LocalCoord> points;
};

// Cuts the trip at the closest point of every maximal run that stays within
// node_radius_m of a node. Cut points are shared by both adjacent segments.
std::vector<Segment> split_at_nodes(const Trip& trip, const std::vector<Node>& nodes,
                                    const RoadParams& params);

// Unordered endpoint pair; open ends sort first. OPEN-OPEN segments are
// dropped (they touch no node and cannot become edges).
using GroupKey = std::pair<std::int64_t, std::int64_t>;
std::map<GroupKey, std::vector<Segment>> group_segments(std::vector<Segment> segments);

// Turns one segment group into edges: trims points near the bounding nodes,
// clusters the pooled remainder, assigns each segment its dominant cluster,
// and emits one representative (untrimmed, re-resampled) segment per
// dominant cluster.
std::vector<Edge> infer_edges(const GroupKey& key, const std::vector<Segment>& segments,
                              const std::vector<Node>& nodes, const RoadParams& params,
                              double interp_spacing);

// Full assembly: nodes from intersections and action nodes, segments from
// all trips, edges per group. Validates the graph invariants and throws
// DataError with a diagnostic when they do not hold.
RoadGraph build_graph(const std::vector<Trip>& trips,
                      const std::vector<Intersection>& intersections,
                      const std::vector<ActionNode>& action_nodes,
                      const RoadParams& params, double interp_spacing,
                      const GeoCoord& origin, int workers = 1);

}  // namespace rgg
