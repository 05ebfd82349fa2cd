#include "rgg/action_nodes.hpp"

#include <algorithm>
#include <map>

#include "rgg/cluster.hpp"
#include "rgg/log.hpp"

namespace rgg {

LocalCoord trimmed_mean(const std::vector<LocalCoord>& points, double trim_fraction) {
  const std::size_t n = points.size();
  const std::size_t cut = static_cast<std::size_t>(
      std::floor(trim_fraction * static_cast<double>(n)));

  auto axis_mean = [&](auto getter) {
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = getter(points[i]);
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (std::size_t i = cut; i < n - cut; ++i) sum += values[i];
    return sum / static_cast<double>(n - 2 * cut);
  };
  return LocalCoord{axis_mean([](const LocalCoord& p) { return p.x; }),
                    axis_mean([](const LocalCoord& p) { return p.y; })};
}

namespace {

// Merges same-kind nodes until no two are within merge_radius of each other.
// A single pass can still leave centroids close together, so iterate to the
// fixpoint (bounded by the node count).
std::vector<ActionNode> merge_nodes(std::vector<ActionNode> nodes, double merge_radius) {
  for (std::size_t pass = 0; pass < nodes.size() + 1; ++pass) {
    std::vector<LocalCoord> positions(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) positions[i] = nodes[i].position;
    const auto groups = single_linkage_groups(positions, merge_radius);
    if (groups.size() == nodes.size()) break;

    std::vector<ActionNode> merged;
    merged.reserve(groups.size());
    for (const auto& group : groups) {
      ActionNode out;
      out.kind = nodes[group.front()].kind;
      LocalCoord centroid{0.0, 0.0};
      for (const std::size_t i : group) {
        centroid.x += nodes[i].position.x;
        centroid.y += nodes[i].position.y;
        out.support += nodes[i].support;
        out.source_ids.insert(out.source_ids.end(), nodes[i].source_ids.begin(),
                              nodes[i].source_ids.end());
      }
      out.position = LocalCoord{centroid.x / static_cast<double>(group.size()),
                                centroid.y / static_cast<double>(group.size())};
      std::sort(out.source_ids.begin(), out.source_ids.end());
      merged.push_back(std::move(out));
    }
    nodes = std::move(merged);
  }
  return nodes;
}

}  // namespace

std::vector<ActionNode> load_nodes(const std::vector<Trip>& trips,
                                   const ActionParams& params) {
  std::map<std::string, std::vector<LocalCoord>> groups;
  bool warned_missing_excavator = false;
  for (const auto& trip : trips) {
    if (!trip.load_event) continue;
    std::string key;
    if (trip.excavator_id.empty()) {
      if (!warned_missing_excavator) {
        log_warn("load events without excavator id: grouping by task id only");
        warned_missing_excavator = true;
      }
      key = "task:" + trip.task_id;
    } else {
      key = trip.excavator_id + "/" + trip.task_id;
    }
    groups[key].push_back(trip.load_event->local);
  }

  std::vector<ActionNode> nodes;
  for (const auto& [key, events] : groups) {
    ActionNode node;
    node.kind = ActionKind::kLoad;
    node.position = trimmed_mean(events, params.trim_fraction);
    node.support = events.size();
    node.source_ids.push_back(key);
    nodes.push_back(std::move(node));
  }
  return merge_nodes(std::move(nodes), params.merge_radius_m);
}

std::vector<ActionNode> dropoff_nodes(const std::vector<Trip>& trips,
                                      const ActionParams& params) {
  std::vector<LocalCoord> events;
  for (const auto& trip : trips) {
    if (trip.dropoff_event) events.push_back(trip.dropoff_event->local);
  }
  if (events.empty()) return {};

  const auto labels = dbscan(events, params.dropoff_eps_m, params.dropoff_min_samples);
  int n_clusters = 0;
  for (const int l : labels) n_clusters = std::max(n_clusters, l + 1);

  std::vector<ActionNode> nodes(static_cast<std::size_t>(n_clusters));
  std::vector<std::size_t> counts(static_cast<std::size_t>(n_clusters), 0);
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (labels[i] < 0) continue;  // noise events are not trusted
    const auto c = static_cast<std::size_t>(labels[i]);
    nodes[c].position.x += events[i].x;
    nodes[c].position.y += events[i].y;
    ++counts[c];
  }
  for (std::size_t c = 0; c < nodes.size(); ++c) {
    nodes[c].kind = ActionKind::kDropoff;
    nodes[c].position.x /= static_cast<double>(counts[c]);
    nodes[c].position.y /= static_cast<double>(counts[c]);
    nodes[c].support = counts[c];
    nodes[c].source_ids.push_back("cluster:" + std::to_string(c));
  }
  return merge_nodes(std::move(nodes), params.merge_radius_m);
}

}  // namespace rgg
