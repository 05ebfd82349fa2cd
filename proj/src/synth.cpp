#include "rgg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <queue>
#include <random>

#include "rgg/errors.hpp"
#include "rgg/log.hpp"

namespace rgg {

namespace {

constexpr GeoCoord kDefaultAnchor{59.0, 10.0};
constexpr double kMinNodeSpacing = 30.0;   // twice the candidate merge distance
constexpr double kMinActionSpacing = 120.0;  // keeps action nodes from merging
constexpr double kMinLegSeparation = 50.0 * kPi / 180.0;

double point_segment_distance(const LocalCoord& p, const LocalCoord& a,
                              const LocalCoord& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len_sq = dx * dx + dy * dy;
  if (len_sq <= 0.0) return distance(p, a);
  double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len_sq;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, LocalCoord{a.x + t * dx, a.y + t * dy});
}

double polyline_point_distance(const std::vector<LocalCoord>& line, const LocalCoord& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < line.size(); ++i) {
    best = std::min(best, point_segment_distance(p, line[i - 1], line[i]));
  }
  return best;
}

double angle_separation(double a, double b) {
  double d = std::abs(a - b);
  while (d > kTwoPi) d -= kTwoPi;
  if (d > kPi) d = kTwoPi - d;
  return d;
}

std::vector<LocalCoord> straight_polyline(const LocalCoord& a, const LocalCoord& b,
                                          double step) {
  const double len = distance(a, b);
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / step)));
  std::vector<LocalCoord> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n);
    out.push_back(LocalCoord{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t});
  }
  return out;
}

// Gentle sinusoidal bow towards the unit normal; sagitta small enough that
// the bend radius stays far above the grid resolution.
std::vector<LocalCoord> bowed_polyline(const LocalCoord& a, const LocalCoord& b,
                                       double sagitta, double step) {
  const double len = distance(a, b);
  if (len <= 0.0) return {a, b};
  const double nx = -(b.y - a.y) / len;
  const double ny = (b.x - a.x) / len;
  const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(len / step)));
  std::vector<LocalCoord> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n);
    const double off = sagitta * std::sin(kPi * t);
    out.push_back(LocalCoord{a.x + (b.x - a.x) * t + nx * off,
                             a.y + (b.y - a.y) * t + ny * off});
  }
  return out;
}

bool segments_cross(const LocalCoord& p1, const LocalCoord& p2, const LocalCoord& q1,
                    const LocalCoord& q2) {
  auto orient = [](const LocalCoord& a, const LocalCoord& b, const LocalCoord& c) {
    const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
  };
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  return o1 != o2 && o3 != o4;
}

class SiteBuilder {
 public:
  SiteBuilder(std::uint64_t seed, double w, double h) : rng_(seed), area_w_(w), area_h_(h) {
    graph_.origin = kDefaultAnchor;
  }

  std::int64_t add_node(NodeKind kind, LocalCoord pos) {
    const std::int64_t id = static_cast<std::int64_t>(graph_.nodes.size());
    graph_.nodes.push_back(Node{id, kind, pos, to_geo(pos, graph_.origin), std::nullopt});
    legs_.emplace_back();
    return id;
  }

  void add_edge(std::int64_t a, std::int64_t b, std::vector<LocalCoord> polyline) {
    Edge e;
    e.id = static_cast<std::int64_t>(graph_.edges.size());
    e.node_a = a;
    e.node_b = b;
    e.polyline = std::move(polyline);
    e.support = 0;
    register_leg(a, e.polyline[0], e.polyline[1]);
    register_leg(b, e.polyline[e.polyline.size() - 1], e.polyline[e.polyline.size() - 2]);
    graph_.edges.push_back(std::move(e));
  }

  bool angle_ok(std::int64_t node, double dir) const {
    for (const double leg : legs_[static_cast<std::size_t>(node)]) {
      if (angle_separation(leg, dir) < kMinLegSeparation) return false;
    }
    return true;
  }

  std::size_t degree(std::int64_t node) const {
    return legs_[static_cast<std::size_t>(node)].size();
  }

  bool inside_area(const LocalCoord& p, double margin) const {
    return p.x >= margin && p.x <= area_w_ - margin && p.y >= margin &&
           p.y <= area_h_ - margin;
  }

  std::mt19937_64& rng() { return rng_; }
  RoadGraph& graph() { return graph_; }
  double area_w() const { return area_w_; }
  double area_h() const { return area_h_; }

 private:
  void register_leg(std::int64_t node, const LocalCoord& at, const LocalCoord& towards) {
    legs_[static_cast<std::size_t>(node)].push_back(heading_between(at, towards));
  }

  std::mt19937_64 rng_;
  double area_w_, area_h_;
  RoadGraph graph_;
  std::vector<std::vector<double>> legs_;
};

// Spur directions stay within a few degrees of vertical: spur traffic runs
// both ways (dead ends), and near-vertical is the axis where the direction
// fold keeps both travel directions in one tight mode.
const double kSpurDirections[] = {90.0, 87.5, 92.5, 85.0, 95.0};

bool try_place_spur(SiteBuilder& b, std::int64_t host, NodeKind kind, double length,
                    bool prefer_up, bool allow_any_direction, std::int64_t* out_id) {
  std::vector<double> dirs;
  for (const double base : kSpurDirections) {
    dirs.push_back(prefer_up ? base : base + 180.0);
  }
  for (const double base : kSpurDirections) {
    dirs.push_back(prefer_up ? base + 180.0 : base);
  }
  if (allow_any_direction) {
    for (int d = 0; d < 360; d += 15) dirs.push_back(static_cast<double>(d));
  }

  const LocalCoord host_pos = b.graph().nodes[static_cast<std::size_t>(host)].local;
  for (const double deg : dirs) {
    const double dir = deg2rad(std::fmod(deg + 360.0, 360.0));
    if (!b.angle_ok(host, dir)) continue;
    const LocalCoord end{host_pos.x + length * std::cos(dir),
                         host_pos.y + length * std::sin(dir)};
    if (!b.inside_area(end, 20.0)) continue;

    bool clear = true;
    for (const auto& node : b.graph().nodes) {
      if (node.id == host) continue;
      const double required =
          node.kind == NodeKind::kIntersection ? 100.0 : kMinActionSpacing;
      if (distance(node.local, end) < required) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;
    // The spur should not run close past unrelated geometry.
    const LocalCoord mid{(host_pos.x + end.x) / 2.0, (host_pos.y + end.y) / 2.0};
    for (const auto& edge : b.graph().edges) {
      if (edge.node_a == host || edge.node_b == host) continue;
      if (polyline_point_distance(edge.polyline, end) < 60.0 ||
          polyline_point_distance(edge.polyline, mid) < 50.0) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;

    const std::int64_t id = b.add_node(kind, end);
    b.add_edge(host, id, straight_polyline(host_pos, end, 20.0));
    if (out_id != nullptr) *out_id = id;
    return true;
  }
  return false;
}

void place_action_nodes(SiteBuilder& b, const std::vector<std::int64_t>& hosts,
                        int n_load, int n_dump) {
  std::vector<std::int64_t> rotation = hosts;
  std::shuffle(rotation.begin(), rotation.end(), b.rng());

  const double cy = b.area_h() / 2.0;
  int placed = 0;
  for (int k = 0; k < n_load + n_dump; ++k) {
    const NodeKind kind = k < n_load ? NodeKind::kLoad : NodeKind::kDropoff;
    std::uniform_real_distribution<double> len_dist(90.0, 130.0);
    const double length = len_dist(b.rng());
    bool done = false;
    for (int pass = 0; pass < 2 && !done; ++pass) {
      for (std::size_t h = 0; h < rotation.size() && !done; ++h) {
        const std::int64_t host = rotation[(static_cast<std::size_t>(placed) + h) % rotation.size()];
        const bool up = b.graph().nodes[static_cast<std::size_t>(host)].local.y >= cy;
        done = try_place_spur(b, host, kind, length, up, pass == 1, nullptr);
      }
    }
    if (!done) {
      throw DataError("generate_site: unable to place an action node spur "
                      "(area too small for the requested counts)");
    }
    ++placed;
  }
}

// Checks departure angles at both ends, planarity against every non-incident
// edge, and clearance from uninvolved nodes before committing a new road.
bool try_add_road(SiteBuilder& b, std::int64_t va, std::int64_t vb,
                  const std::vector<LocalCoord>& polyline) {
  if (va == vb || polyline.size() < 2) return false;
  const double dir_a = heading_between(polyline[0], polyline[1]);
  const double dir_b =
      heading_between(polyline[polyline.size() - 1], polyline[polyline.size() - 2]);
  if (!b.angle_ok(va, dir_a) || !b.angle_ok(vb, dir_b)) return false;

  for (const auto& p : polyline) {
    if (!b.inside_area(p, 10.0)) return false;
  }
  for (const auto& node : b.graph().nodes) {
    if (node.id == va || node.id == vb) continue;
    if (polyline_point_distance(polyline, node.local) < 80.0) return false;
  }
  for (const auto& edge : b.graph().edges) {
    const bool incident = edge.node_a == va || edge.node_b == va ||
                          edge.node_a == vb || edge.node_b == vb;
    for (std::size_t i = 1; i < edge.polyline.size(); ++i) {
      for (std::size_t k = 1; k < polyline.size(); ++k) {
        if (incident) continue;
        if (segments_cross(polyline[k - 1], polyline[k], edge.polyline[i - 1],
                           edge.polyline[i])) {
          return false;
        }
      }
    }
  }
  b.add_edge(va, vb, polyline);
  return true;
}

void add_chords_for_degree(SiteBuilder& b, const std::vector<std::int64_t>& ring) {
  const int n = static_cast<int>(ring.size());
  for (int v = 0; v < n; ++v) {
    while (b.degree(ring[static_cast<std::size_t>(v)]) < 3) {
      bool added = false;
      const std::int64_t va = ring[static_cast<std::size_t>(v)];
      const LocalCoord pa = b.graph().nodes[static_cast<std::size_t>(va)].local;

      // Straight chords to opposite-most partners first.
      for (int off = n / 2; off >= 2 && !added; --off) {
        for (const int w : {(v + off) % n, (v + n - off) % n}) {
          const std::int64_t vb = ring[static_cast<std::size_t>(w)];
          const LocalCoord pb = b.graph().nodes[static_cast<std::size_t>(vb)].local;
          if (try_add_road(b, va, vb, straight_polyline(pa, pb, 20.0))) {
            added = true;
            break;
          }
        }
      }
      // Small rings offer no straight diagonals; fall back to a strongly
      // bowed second road whose departure clears the existing legs.
      for (int off = std::max(1, n / 2); off >= 1 && !added; --off) {
        for (const int w : {(v + off) % n, (v + n - off) % n}) {
          const std::int64_t vb = ring[static_cast<std::size_t>(w)];
          const LocalCoord pb = b.graph().nodes[static_cast<std::size_t>(vb)].local;
          const double sagitta = distance(pa, pb) / 2.0;
          if (try_add_road(b, va, vb, bowed_polyline(pa, pb, sagitta, 15.0)) ||
              try_add_road(b, va, vb, bowed_polyline(pa, pb, -sagitta, 15.0))) {
            added = true;
            break;
          }
        }
      }
      if (!added) {
        throw DataError("generate_site: cannot raise intersection degree to 3 "
                        "without crossing roads (infeasible layout)");
      }
    }
  }
}

}  // namespace

RoadGraph generate_site(std::uint64_t seed, int n_intersections, int n_load,
                        int n_dump, double area_w, double area_h) {
  if (n_intersections < 0 || n_load < 0 || n_dump < 0) {
    throw DataError("generate_site: negative node count");
  }
  if (area_w <= 0.0 || area_h <= 0.0) throw DataError("generate_site: empty area");

  SiteBuilder b(seed, area_w, area_h);

  if (n_intersections == 0) {
    const int k = n_load + n_dump;
    if (k < 2) throw DataError("generate_site: a road needs at least two nodes");
    const double usable = area_h * 0.8;
    const double spacing = std::min(400.0, usable / static_cast<double>(k - 1));
    if (spacing < kMinActionSpacing) {
      throw DataError("generate_site: action nodes cannot be packed " +
                      std::to_string(spacing) + " m apart");
    }
    const double x = area_w / 2.0;
    const double y0 = (area_h - spacing * static_cast<double>(k - 1)) / 2.0;
    std::vector<std::int64_t> chain;
    for (int i = 0; i < k; ++i) {
      const NodeKind kind = i < n_load ? NodeKind::kLoad : NodeKind::kDropoff;
      chain.push_back(b.add_node(kind, LocalCoord{x, y0 + spacing * i}));
    }
    for (int i = 0; i + 1 < k; ++i) {
      b.add_edge(chain[static_cast<std::size_t>(i)], chain[static_cast<std::size_t>(i + 1)],
                 straight_polyline(b.graph().nodes[static_cast<std::size_t>(chain[i])].local,
                                   b.graph().nodes[static_cast<std::size_t>(chain[i + 1])].local,
                                   20.0));
    }
    return b.graph();
  }

  std::vector<std::int64_t> ring;
  if (n_intersections == 1) {
    if (n_load + n_dump < 3) {
      throw DataError("generate_site: a single intersection needs at least "
                      "three attached roads");
    }
    ring.push_back(b.add_node(NodeKind::kIntersection,
                              LocalCoord{area_w / 2.0, area_h / 2.0}));
  } else if (n_intersections == 2) {
    const double r = 0.3 * std::min(area_w, area_h);
    const LocalCoord pa{area_w / 2.0 - r, area_h / 2.0};
    const LocalCoord pb{area_w / 2.0 + r, area_h / 2.0};
    if (distance(pa, pb) < kMinNodeSpacing) {
      throw DataError("generate_site: intersections closer than the minimum spacing");
    }
    ring.push_back(b.add_node(NodeKind::kIntersection, pa));
    ring.push_back(b.add_node(NodeKind::kIntersection, pb));
    // Two distinct routes so both ends see well separated legs.
    b.add_edge(ring[0], ring[1], straight_polyline(pa, pb, 20.0));
    b.add_edge(ring[0], ring[1], bowed_polyline(pa, pb, distance(pa, pb) / 2.0, 15.0));
  } else {
    const double cx = area_w / 2.0;
    const double cy = area_h / 2.0;
    const double rx = 0.35 * area_w;
    const double ry = 0.35 * area_h;
    std::uniform_real_distribution<double> jitter(-0.25, 0.25);
    for (int k = 0; k < n_intersections; ++k) {
      const double theta =
          kTwoPi * (static_cast<double>(k) + jitter(b.rng())) / n_intersections;
      ring.push_back(b.add_node(
          NodeKind::kIntersection,
          LocalCoord{cx + rx * std::cos(theta), cy + ry * std::sin(theta)}));
    }
    for (int k = 0; k < n_intersections; ++k) {
      const auto& pa = b.graph().nodes[static_cast<std::size_t>(ring[k])].local;
      const auto& pb =
          b.graph()
              .nodes[static_cast<std::size_t>(ring[(k + 1) % n_intersections])]
              .local;
      const double len = distance(pa, pb);
      if (len < kMinNodeSpacing) {
        throw DataError("generate_site: intersections closer than the minimum "
                        "spacing of " + std::to_string(kMinNodeSpacing) + " m");
      }
      // Bow outward from the ring center.
      const double side =
          (pb.x - pa.x) * (cy - pa.y) - (pb.y - pa.y) * (cx - pa.x);
      const double sagitta = std::min(8.0, 0.04 * len) * (side > 0 ? -1.0 : 1.0);
      b.add_edge(ring[static_cast<std::size_t>(k)],
                 ring[static_cast<std::size_t>((k + 1) % n_intersections)],
                 bowed_polyline(pa, pb, sagitta, 20.0));
    }
  }

  place_action_nodes(b, ring, n_load, n_dump);
  add_chords_for_degree(b, ring);

  for (const std::int64_t id : ring) {
    if (b.degree(id) < 3) {
      throw DataError("generate_site: intersection " + std::to_string(id) +
                      " ended with degree " + std::to_string(b.degree(id)));
    }
  }
  return b.graph();
}

// ---------------------------------------------------------------------------
// Trip simulation
// ---------------------------------------------------------------------------

namespace {

struct RoadNet {
  std::vector<std::int64_t> node_ids;
  std::map<std::int64_t, std::size_t> node_index;
  // Per edge: dense endpoint indices, length, and allowed directions.
  struct EdgeInfo {
    std::size_t a, b;
    double length;
    bool forward = false;   // a -> b allowed
    bool backward = false;  // b -> a allowed
  };
  std::vector<EdgeInfo> edges;
  std::vector<std::vector<std::size_t>> incident;  // node -> edge indices
};

RoadNet analyze_network(const RoadGraph& g) {
  RoadNet net;
  for (const auto& node : g.nodes) {
    net.node_index[node.id] = net.node_ids.size();
    net.node_ids.push_back(node.id);
  }
  net.incident.resize(net.node_ids.size());
  for (const auto& edge : g.edges) {
    if (edge.node_a == kOpenEnd || edge.node_b == kOpenEnd) {
      throw DataError("simulate_trips: ground truth edges must join two nodes");
    }
    RoadNet::EdgeInfo info;
    info.a = net.node_index.at(edge.node_a);
    info.b = net.node_index.at(edge.node_b);
    info.length = polyline_length(edge.polyline);
    net.incident[info.a].push_back(net.edges.size());
    net.incident[info.b].push_back(net.edges.size());
    net.edges.push_back(info);
  }

  // Bridges must carry two-way traffic; everything else gets one consistent
  // direction (tree edges down, back edges up), which keeps per-road traffic
  // unidirectional and the directed graph strongly connected.
  const std::size_t n = net.node_ids.size();
  std::vector<int> disc(n, -1);
  std::vector<int> low(n, 0);
  std::vector<char> edge_done(net.edges.size(), 0);
  int timer = 0;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u,
                                                          std::size_t via_edge) {
    disc[u] = low[u] = timer++;
    for (const std::size_t e : net.incident[u]) {
      if (e == via_edge) continue;
      const std::size_t v = net.edges[e].a == u ? net.edges[e].b : net.edges[e].a;
      if (disc[v] < 0) {
        edge_done[e] = 1;
        if (net.edges[e].a == u) {
          net.edges[e].forward = true;
        } else {
          net.edges[e].backward = true;
        }
        dfs(v, e);
        low[u] = std::min(low[u], low[v]);
        if (low[v] > disc[u]) {
          net.edges[e].forward = net.edges[e].backward = true;  // bridge
        }
      } else {
        low[u] = std::min(low[u], disc[v]);
        if (!edge_done[e]) {
          edge_done[e] = 1;
          if (net.edges[e].a == u) {
            net.edges[e].forward = true;
          } else {
            net.edges[e].backward = true;
          }
        }
      }
    }
  };
  for (std::size_t u = 0; u < n; ++u) {
    if (disc[u] < 0 && !net.incident[u].empty()) dfs(u, SIZE_MAX);
  }
  return net;
}

// Deterministic directed shortest path; returns the edge sequence.
std::vector<std::size_t> shortest_path(const RoadNet& net, std::size_t from,
                                       std::size_t to) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(net.node_ids.size(), inf);
  std::vector<std::size_t> via_edge(net.node_ids.size(), SIZE_MAX);
  std::vector<std::size_t> via_node(net.node_ids.size(), SIZE_MAX);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[from] = 0.0;
  heap.emplace(0.0, from);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == to) break;
    for (const std::size_t e : net.incident[u]) {
      const auto& info = net.edges[e];
      const bool from_a = info.a == u;
      if (from_a && !info.forward) continue;
      if (!from_a && !info.backward) continue;
      const std::size_t v = from_a ? info.b : info.a;
      const double nd = d + info.length;
      if (nd < dist[v] - 1e-12) {
        dist[v] = nd;
        via_edge[v] = e;
        via_node[v] = u;
        heap.emplace(nd, v);
      }
    }
  }
  if (dist[to] == inf) {
    throw DataError("simulate_trips: no route between nodes " +
                    std::to_string(net.node_ids[from]) + " and " +
                    std::to_string(net.node_ids[to]));
  }
  std::vector<std::size_t> edges;
  for (std::size_t v = to; v != from; v = via_node[v]) edges.push_back(via_edge[v]);
  std::reverse(edges.begin(), edges.end());
  return edges;
}

// Expands an edge sequence starting at `from` into a point path.
void append_edge_path(const RoadGraph& g, const RoadNet& net, std::size_t from,
                      const std::vector<std::size_t>& edges,
                      std::vector<LocalCoord>& out, std::size_t* end_node) {
  std::size_t u = from;
  for (const std::size_t e : edges) {
    const auto& info = net.edges[e];
    const auto& poly = g.edges[e].polyline;
    const bool from_a = info.a == u;
    const std::size_t start = out.empty() ? 0 : 1;  // joint point already present
    if (from_a) {
      for (std::size_t i = start; i < poly.size(); ++i) out.push_back(poly[i]);
      u = info.b;
    } else {
      for (std::size_t i = start; i < poly.size(); ++i) {
        out.push_back(poly[poly.size() - 1 - i]);
      }
      u = info.a;
    }
  }
  if (end_node != nullptr) *end_node = u;
}

// Rounds interior corners with a small quadratic blend so simulated vehicles
// do not turn on a point. Reversals (turns close to 180 degrees) are left
// alone; they model a truck backing out the way it came in.
std::vector<LocalCoord> fillet_path(const std::vector<LocalCoord>& pts) {
  constexpr double kMinTurn = 20.0 * kPi / 180.0;
  constexpr double kMaxTurn = 150.0 * kPi / 180.0;
  constexpr double kCut = 9.0;
  if (pts.size() < 3) return pts;
  std::vector<LocalCoord> out;
  out.push_back(pts.front());
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const auto& prev = out.back();
    const auto& v = pts[i];
    const auto& next = pts[i + 1];
    const double d_in = distance(prev, v);
    const double d_out = distance(v, next);
    if (d_in <= 0.0 || d_out <= 0.0) continue;
    const double h_in = heading_between(prev, v);
    const double h_out = heading_between(v, next);
    const double turn = angle_separation(h_in, h_out);
    if (turn < kMinTurn || turn > kMaxTurn) {
      out.push_back(v);
      continue;
    }
    const double cut = std::min({kCut, 0.45 * d_in, 0.45 * d_out});
    const LocalCoord p_in{v.x - cut * std::cos(h_in), v.y - cut * std::sin(h_in)};
    const LocalCoord p_out{v.x + cut * std::cos(h_out), v.y + cut * std::sin(h_out)};
    out.push_back(p_in);
    for (const double t : {0.25, 0.5, 0.75}) {
      const double w0 = (1.0 - t) * (1.0 - t);
      const double w1 = 2.0 * (1.0 - t) * t;
      const double w2 = t * t;
      out.push_back(LocalCoord{w0 * p_in.x + w1 * v.x + w2 * p_out.x,
                               w0 * p_in.y + w1 * v.y + w2 * p_out.y});
    }
    out.push_back(p_out);
  }
  out.push_back(pts.back());
  return out;
}

struct SpeedSampler {
  double mu, sigma, cap;
  SpeedSampler(const SpeedModel& m)
      : mu(std::log(m.median_kmh)),
        sigma(std::sqrt(std::max(0.0, 2.0 * (std::log(m.mean_kmh) - std::log(m.median_kmh))))),
        cap(m.cap_kmh) {}
  double draw(std::mt19937_64& rng) const {
    std::normal_distribution<double> z(0.0, 1.0);
    return std::clamp(std::exp(mu + sigma * z(rng)), 0.8, cap);
  }
};

}  // namespace

std::vector<Trip> simulate_trips(const SiteScenario& scenario) {
  const RoadGraph& g = scenario.ground_truth;
  const RoadNet net = analyze_network(g);

  std::vector<std::size_t> loads, dumps;
  for (const auto& node : g.nodes) {
    if (node.kind == NodeKind::kLoad) loads.push_back(net.node_index.at(node.id));
    if (node.kind == NodeKind::kDropoff) dumps.push_back(net.node_index.at(node.id));
  }
  if (loads.empty() || dumps.empty()) {
    throw DataError("simulate_trips: scenario needs at least one load and one "
                    "drop-off node");
  }

  std::mt19937_64 seq_rng(scenario.seed);
  std::shuffle(loads.begin(), loads.end(), seq_rng);
  std::shuffle(dumps.begin(), dumps.end(), seq_rng);

  const SpeedSampler speed(scenario.speed);
  const GeoCoord anchor = g.origin;
  std::vector<Trip> trips;
  double clock = scenario.start_epoch_s;

  for (int k = 0; k < scenario.n_trips; ++k) {
    // Per-trip RNG stream: reproducible regardless of how other trips draw.
    std::mt19937_64 rng(scenario.seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(k) + 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t load = loads[static_cast<std::size_t>(k) % loads.size()];
    const std::size_t next_load = loads[static_cast<std::size_t>(k + 1) % loads.size()];
    const std::size_t dump = dumps[static_cast<std::size_t>(k) % dumps.size()];
    // Detour through a rotating target edge so rarely-shortest roads are
    // still driven.
    const std::size_t target_edge = net.edges.empty()
                                        ? SIZE_MAX
                                        : static_cast<std::size_t>(k) % net.edges.size();

    std::vector<LocalCoord> loaded_path;
    std::size_t pos_node = load;
    if (target_edge != SIZE_MAX) {
      const auto& info = net.edges[target_edge];
      const std::size_t tail = info.forward ? info.a : info.b;
      append_edge_path(g, net, pos_node, shortest_path(net, pos_node, tail),
                       loaded_path, &pos_node);
      append_edge_path(g, net, pos_node, {target_edge}, loaded_path, &pos_node);
    }
    append_edge_path(g, net, pos_node, shortest_path(net, pos_node, dump),
                     loaded_path, &pos_node);
    std::vector<LocalCoord> empty_path;
    append_edge_path(g, net, dump, shortest_path(net, dump, next_load), empty_path,
                     nullptr);

    const bool tunnel_trip =
        std::uniform_real_distribution<double>(0.0, 1.0)(rng) <
        scenario.noise.tunnel_trip_fraction;

    Trip trip;
    {
      char id[32];
      std::snprintf(id, sizeof(id), "t%04d", k);
      trip.trip_id = id;
    }
    trip.machine_id = "M" + std::to_string(k % 8 + 1);
    trip.driver_id = "D" + std::to_string(k % 8 + 1);
    trip.task_id = "T1";
    trip.excavator_id = "E" + std::to_string(net.node_ids[load]);

    auto emit = [&](const LocalCoord& true_pos, double speed_kmh, double heading_rad,
                    const char* event, const LocalCoord* reported) {
      if (event == nullptr) {
        if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) <
            scenario.noise.dropout_prob) {
          return;
        }
        if (tunnel_trip) {
          for (const auto& tz : scenario.noise.tunnels) {
            if (distance(true_pos, tz.center) <= tz.radius) return;
          }
        }
      }
      GpsUpdate u;
      LocalCoord pos = reported != nullptr ? *reported : true_pos;
      if (reported == nullptr && scenario.noise.jitter_sigma_m > 0.0) {
        pos.x += gauss(rng) * scenario.noise.jitter_sigma_m;
        pos.y += gauss(rng) * scenario.noise.jitter_sigma_m;
      }
      u.timestamp = clock;
      u.local = pos;
      u.geo = to_geo(pos, anchor);
      u.speed_kmh = speed_kmh;
      // Compass bearing, matching what a GPS unit would report.
      u.raw_heading_deg = std::fmod(90.0 - rad2deg(heading_rad) + 720.0, 360.0);
      if (event != nullptr) {
        TripEvent ev{clock, u.geo, pos};
        if (std::string(event) == "load") {
          trip.load_event = ev;
        } else {
          trip.dropoff_event = ev;
        }
      }
      trip.updates.push_back(u);
    };

    auto drive = [&](const std::vector<LocalCoord>& raw_path) {
      if (raw_path.size() < 2) return;
      const auto path = resample_polyline(fillet_path(raw_path), 1.0);
      const double total = polyline_length(path);
      double s = 0.0;
      double v = speed.draw(rng);
      double since_resample = 0.0;
      while (s < total) {
        clock += scenario.cadence_s;
        since_resample += scenario.cadence_s;
        if (since_resample >= 20.0) {
          v = speed.draw(rng);
          since_resample = 0.0;
        }
        s += v / 3.6 * scenario.cadence_s;
        if (s >= total) break;
        const auto idx = static_cast<std::size_t>(s);  // 1 m spacing
        const std::size_t i0 = std::min(idx, path.size() - 2);
        const double frac = s - static_cast<double>(i0);
        const LocalCoord p{path[i0].x + (path[i0 + 1].x - path[i0].x) * frac,
                           path[i0].y + (path[i0 + 1].y - path[i0].y) * frac};
        const double heading = heading_between(path[i0], path[i0 + 1]);
        emit(p, v, heading, nullptr, nullptr);
      }
    };

    const LocalCoord load_pos = g.nodes[load].local;  // dense index == position in nodes
    const LocalCoord dump_pos = g.nodes[dump].local;

    // Loading dwell: the first row carries the manually reported position.
    LocalCoord reported_load = load_pos;
    if (scenario.noise.endpoint_noise_m > 0.0) {
      reported_load.x += gauss(rng) * scenario.noise.endpoint_noise_m;
      reported_load.y += gauss(rng) * scenario.noise.endpoint_noise_m;
    }
    emit(load_pos, 0.0, 0.0, "load", &reported_load);
    for (int i = 0; i < 2; ++i) {
      clock += scenario.cadence_s;
      emit(load_pos, 0.0, 0.0, nullptr, nullptr);
    }

    drive(loaded_path);

    LocalCoord reported_dump = dump_pos;
    if (scenario.noise.endpoint_noise_m > 0.0) {
      reported_dump.x += gauss(rng) * scenario.noise.endpoint_noise_m;
      reported_dump.y += gauss(rng) * scenario.noise.endpoint_noise_m;
    }
    clock += scenario.cadence_s;
    emit(dump_pos, 0.0, 0.0, "dropoff", &reported_dump);
    clock += scenario.cadence_s;
    emit(dump_pos, 0.0, 0.0, nullptr, nullptr);

    drive(empty_path);

    clock += 60.0;  // loading pause before the next cycle
    trips.push_back(std::move(trip));
  }
  return trips;
}

void write_trips_csv(std::ostream& out, const std::vector<Trip>& trips) {
  out << "trip_id,timestamp,lat,lon,speed_kmh,heading_deg,machine_id,driver_id,"
         "task_id,excavator_id,event\n";
  char buf[256];
  for (const auto& trip : trips) {
    for (const auto& u : trip.updates) {
      const char* event = "";
      if (trip.load_event && u.timestamp == trip.load_event->timestamp) event = "load";
      if (trip.dropoff_event && u.timestamp == trip.dropoff_event->timestamp) {
        event = "dropoff";
      }
      std::snprintf(buf, sizeof(buf), "%s,%.3f,%.9f,%.9f,%.3f,%.2f,%s,%s,%s,%s,%s\n",
                    trip.trip_id.c_str(), u.timestamp, u.geo.lat, u.geo.lon,
                    u.speed_kmh, u.raw_heading_deg.value_or(0.0),
                    trip.machine_id.c_str(), trip.driver_id.c_str(),
                    trip.task_id.c_str(), trip.excavator_id.c_str(), event);
      out << buf;
    }
  }
}

void write_labels_csv(std::ostream& out, const RoadGraph& ground_truth) {
  out << "lat,lon\n";
  char buf[64];
  for (const auto& node : ground_truth.nodes) {
    if (node.kind != NodeKind::kIntersection) continue;
    std::snprintf(buf, sizeof(buf), "%.9f,%.9f\n", node.geo.lat, node.geo.lon);
    out << buf;
  }
}

}  // namespace rgg
