#include "rgg/roads.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rgg/cluster.hpp"
#include "rgg/errors.hpp"
#include "rgg/log.hpp"
#include "rgg/parallel.hpp"

namespace rgg {

std::vector<Segment> split_at_nodes(const Trip& trip, const std::vector<Node>& nodes,
                                    const RoadParams& params) {
  const auto& u = trip.updates;
  if (u.empty()) return {};

  // One cut per maximal in-radius run per node: the run's closest point.
  struct Cut {
    std::size_t index;
    std::int64_t node;
  };
  std::vector<Cut> cuts;
  for (const auto& node : nodes) {
    std::size_t k = 0;
    while (k < u.size()) {
      if (distance(u[k].local, node.local) > params.node_radius_m) {
        ++k;
        continue;
      }
      std::size_t best = k;
      double best_d = distance(u[k].local, node.local);
      std::size_t end = k;
      while (end < u.size() &&
             distance(u[end].local, node.local) <= params.node_radius_m) {
        const double d = distance(u[end].local, node.local);
        if (d < best_d) {
          best_d = d;
          best = end;
        }
        ++end;
      }
      cuts.push_back(Cut{best, node.id});
      k = end;
    }
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) {
    if (a.index != b.index) return a.index < b.index;
    return a.node < b.node;
  });

  std::vector<Segment> segments;
  std::size_t begin = 0;
  std::int64_t begin_node = kOpenEnd;
  std::size_t seq = 0;
  auto emit = [&](std::size_t end, std::int64_t end_node) {
    Segment seg;
    seg.trip_id = trip.trip_id;
    seg.seq = seq++;
    seg.start_node = begin_node;
    seg.end_node = end_node;
    seg.points.reserve(end - begin + 1);
    for (std::size_t i = begin; i <= end; ++i) seg.points.push_back(u[i].local);
    segments.push_back(std::move(seg));
  };
  for (const auto& cut : cuts) {
    emit(cut.index, cut.node);
    begin = cut.index;  // the cut point belongs to both sides
    begin_node = cut.node;
  }
  emit(u.size() - 1, kOpenEnd);
  return segments;
}

std::map<GroupKey, std::vector<Segment>> group_segments(std::vector<Segment> segments) {
  std::map<GroupKey, std::vector<Segment>> groups;
  for (auto& seg : segments) {
    if (seg.start_node == kOpenEnd && seg.end_node == kOpenEnd) continue;
    GroupKey key{std::min(seg.start_node, seg.end_node),
                 std::max(seg.start_node, seg.end_node)};
    groups[key].push_back(std::move(seg));
  }
  return groups;
}

std::vector<Edge> infer_edges(const GroupKey& key, const std::vector<Segment>& segments,
                              const std::vector<Node>& nodes, const RoadParams& params,
                              double interp_spacing) {
  std::vector<const Node*> bounding;
  for (const std::int64_t id : {key.first, key.second}) {
    if (id == kOpenEnd) continue;
    for (const auto& node : nodes) {
      if (node.id == id) {
        bounding.push_back(&node);
        break;
      }
    }
  }
  const double trim = params.node_radius_m + params.trim_margin_m;

  // Pool the trimmed points of all segments, remembering the owner.
  std::vector<LocalCoord> pool;
  std::vector<std::size_t> owner;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    for (const auto& p : segments[s].points) {
      bool near_node = false;
      for (const Node* n : bounding) {
        if (distance(p, n->local) <= trim) {
          near_node = true;
          break;
        }
      }
      if (!near_node) {
        pool.push_back(p);
        owner.push_back(s);
      }
    }
  }
  if (pool.empty()) {
    log_debug("segment group has no points outside the node radius, skipping");
    return {};
  }

  const auto labels = dbscan(pool, params.cluster_eps_m, params.cluster_min_samples);
  int n_clusters = 0;
  for (const int l : labels) n_clusters = std::max(n_clusters, l + 1);
  if (n_clusters == 0) {
    log_warn("segment group between nodes " + std::to_string(key.first) + " and " +
             std::to_string(key.second) + " is all noise, no edge emitted");
    return {};
  }

  // Per segment: how many of its points fall into each cluster, and which
  // cluster dominates (noise never counts; ties take the smaller label).
  std::vector<std::vector<std::size_t>> seg_counts(
      segments.size(), std::vector<std::size_t>(static_cast<std::size_t>(n_clusters), 0));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (labels[i] >= 0) ++seg_counts[owner[i]][static_cast<std::size_t>(labels[i])];
  }
  std::vector<int> dominant(segments.size(), kNoise);
  for (std::size_t s = 0; s < segments.size(); ++s) {
    std::size_t best = 0;
    for (int c = 0; c < n_clusters; ++c) {
      if (seg_counts[s][static_cast<std::size_t>(c)] > best) {
        best = seg_counts[s][static_cast<std::size_t>(c)];
        dominant[s] = c;
      }
    }
  }

  std::vector<Edge> edges;
  std::mt19937_64 rng(params.seed);
  for (int c = 0; c < n_clusters; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t s = 0; s < segments.size(); ++s) {
      if (dominant[s] == c) members.push_back(s);
    }
    if (members.empty()) continue;

    // Median (lower, so it names an actual segment) of the members' point
    // counts inside this cluster.
    std::vector<std::size_t> counts;
    counts.reserve(members.size());
    for (const std::size_t s : members) {
      counts.push_back(seg_counts[s][static_cast<std::size_t>(c)]);
    }
    std::sort(counts.begin(), counts.end());
    const std::size_t median_count = counts[(counts.size() - 1) / 2];

    std::vector<std::size_t> eligible;
    for (const std::size_t s : members) {
      if (seg_counts[s][static_cast<std::size_t>(c)] == median_count) eligible.push_back(s);
    }
    std::size_t chosen;
    if (params.random_representative && eligible.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
      chosen = eligible[pick(rng)];
    } else {
      chosen = *std::min_element(eligible.begin(), eligible.end(),
                                 [&](std::size_t a, std::size_t b) {
                                   const Segment& sa = segments[a];
                                   const Segment& sb = segments[b];
                                   if (sa.trip_id != sb.trip_id) return sa.trip_id < sb.trip_id;
                                   return sa.seq < sb.seq;
                                 });
    }

    Edge edge;
    edge.node_a = segments[chosen].start_node;
    edge.node_b = segments[chosen].end_node;
    edge.polyline = resample_polyline(segments[chosen].points, interp_spacing);
    edge.support = members.size();
    if (edge.polyline.size() < 2 ||
        (edge.polyline.size() == 2 &&
         distance(edge.polyline.front(), edge.polyline.back()) == 0.0)) {
      log_debug("degenerate representative segment dropped");
      continue;
    }
    edges.push_back(std::move(edge));
  }
  return edges;
}

namespace {

void validate_graph(const RoadGraph& graph, const RoadParams& params,
                    double interp_spacing) {
  for (const auto& edge : graph.edges) {
    if (edge.polyline.size() < 2) {
      throw DataError("graph invariant violated: edge " + std::to_string(edge.id) +
                      " has fewer than 2 polyline points");
    }
    // Points sit at exact arc-length multiples of the resolution, so no
    // consecutive pair can be farther apart than the resolution. (The
    // straight-line distance may be shorter where the track bends.)
    for (std::size_t i = 1; i + 1 < edge.polyline.size(); ++i) {
      const double d = distance(edge.polyline[i - 1], edge.polyline[i]);
      if (d > 1.1 * interp_spacing) {
        std::ostringstream msg;
        msg << "graph invariant violated: edge " << edge.id << " spacing " << d
            << " exceeds the interpolation resolution " << interp_spacing;
        throw DataError(msg.str());
      }
    }
    for (const auto& [nid, terminus] :
         {std::pair{edge.node_a, edge.polyline.front()},
          std::pair{edge.node_b, edge.polyline.back()}}) {
      if (nid == kOpenEnd) continue;
      const Node* node = graph.find_node(nid);
      if (node == nullptr) {
        throw DataError("graph invariant violated: edge " + std::to_string(edge.id) +
                        " references missing node " + std::to_string(nid));
      }
      if (distance(node->local, terminus) > params.node_radius_m + 1e-6) {
        std::ostringstream msg;
        msg << "graph invariant violated: edge " << edge.id << " terminus is "
            << distance(node->local, terminus) << " m from node " << nid;
        throw DataError(msg.str());
      }
    }
  }
}

}  // namespace

RoadGraph build_graph(const std::vector<Trip>& trips,
                      const std::vector<Intersection>& intersections,
                      const std::vector<ActionNode>& action_nodes,
                      const RoadParams& params, double interp_spacing,
                      const GeoCoord& origin, int workers) {
  RoadGraph graph;
  graph.origin = origin;

  std::int64_t next_id = 0;
  for (const auto& in : intersections) {
    graph.nodes.push_back(Node{next_id++, NodeKind::kIntersection, in.position,
                               to_geo(in.position, origin), std::nullopt});
  }
  for (const auto& an : action_nodes) {
    graph.nodes.push_back(Node{
        next_id++, an.kind == ActionKind::kLoad ? NodeKind::kLoad : NodeKind::kDropoff,
        an.position, to_geo(an.position, origin), std::nullopt});
  }

  std::vector<std::vector<Segment>> per_trip(trips.size());
  parallel_for(trips.size(), workers, [&](std::size_t t) {
    per_trip[t] = split_at_nodes(trips[t], graph.nodes, params);
  });
  std::vector<Segment> segments;
  for (auto& list : per_trip) {
    segments.insert(segments.end(), std::make_move_iterator(list.begin()),
                    std::make_move_iterator(list.end()));
  }

  const auto groups = group_segments(std::move(segments));
  std::vector<const std::pair<const GroupKey, std::vector<Segment>>*> ordered;
  ordered.reserve(groups.size());
  for (const auto& entry : groups) ordered.push_back(&entry);

  std::vector<std::vector<Edge>> per_group(ordered.size());
  parallel_for(ordered.size(), workers, [&](std::size_t g) {
    per_group[g] =
        infer_edges(ordered[g]->first, ordered[g]->second, graph.nodes, params, interp_spacing);
  });

  std::int64_t edge_id = 0;
  for (auto& list : per_group) {
    for (auto& edge : list) {
      edge.id = edge_id++;
      graph.edges.push_back(std::move(edge));
    }
  }

  validate_graph(graph, params, interp_spacing);
  return graph;
}

}  // namespace rgg
