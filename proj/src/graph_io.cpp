#include "rgg/graph_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include "rgg/errors.hpp"

namespace rgg {

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kIntersection: return "intersection";
    case NodeKind::kLoad: return "load";
    case NodeKind::kDropoff: return "dropoff";
  }
  return "?";
}

namespace {

NodeKind node_kind_from_name(const std::string& name) {
  if (name == "intersection") return NodeKind::kIntersection;
  if (name == "load") return NodeKind::kLoad;
  if (name == "dropoff") return NodeKind::kDropoff;
  throw DataError("unknown node kind in GeoJSON: " + name);
}

}  // namespace

nlohmann::json graph_to_geojson(const RoadGraph& graph) {
  nlohmann::json doc;
  doc["type"] = "FeatureCollection";
  doc["properties"] = {{"origin_lat", graph.origin.lat},
                       {"origin_lon", graph.origin.lon},
                       {"generator", "rgg"}};
  auto& features = doc["features"] = nlohmann::json::array();

  for (const auto& node : graph.nodes) {
    nlohmann::json f;
    f["type"] = "Feature";
    f["geometry"]["type"] = "Point";
    f["geometry"]["coordinates"] = {node.geo.lon, node.geo.lat};
    f["properties"] = {{"id", node.id},
                       {"kind", node_kind_name(node.kind)},
                       {"x", node.local.x},
                       {"y", node.local.y}};
    if (node.altitude) f["properties"]["altitude"] = *node.altitude;
    features.push_back(std::move(f));
  }

  for (const auto& edge : graph.edges) {
    nlohmann::json f;
    f["type"] = "Feature";
    f["geometry"]["type"] = "LineString";
    auto& coords = f["geometry"]["coordinates"] = nlohmann::json::array();
    for (const auto& p : edge.polyline) {
      const GeoCoord geo = to_geo(p, graph.origin);
      coords.push_back({geo.lon, geo.lat});
    }
    f["properties"] = {{"id", edge.id}, {"support", edge.support}};
    if (edge.node_a != kOpenEnd) {
      f["properties"]["a"] = edge.node_a;
    } else {
      f["properties"]["a"] = nullptr;
    }
    if (edge.node_b != kOpenEnd) {
      f["properties"]["b"] = edge.node_b;
    } else {
      f["properties"]["b"] = nullptr;
    }
    features.push_back(std::move(f));
  }
  return doc;
}

RoadGraph graph_from_geojson(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection") {
    throw DataError("not a GeoJSON FeatureCollection");
  }
  RoadGraph graph;
  if (!doc.contains("properties") || !doc["properties"].contains("origin_lat")) {
    throw DataError("GeoJSON lacks the local-frame origin; cannot rebuild the graph");
  }
  graph.origin =
      GeoCoord{doc["properties"]["origin_lat"].get<double>(),
               doc["properties"]["origin_lon"].get<double>()};

  for (const auto& f : doc.value("features", nlohmann::json::array())) {
    const auto& geom = f.at("geometry");
    const auto& props = f.at("properties");
    const std::string type = geom.value("type", "");
    if (type == "Point") {
      Node node;
      node.id = props.at("id").get<std::int64_t>();
      node.kind = node_kind_from_name(props.at("kind").get<std::string>());
      node.geo = GeoCoord{geom["coordinates"][1].get<double>(),
                          geom["coordinates"][0].get<double>()};
      if (props.contains("x") && props.contains("y")) {
        node.local = LocalCoord{props["x"].get<double>(), props["y"].get<double>()};
      } else {
        node.local = to_local(node.geo, graph.origin);
      }
      if (props.contains("altitude")) node.altitude = props["altitude"].get<double>();
      graph.nodes.push_back(std::move(node));
    } else if (type == "LineString") {
      Edge edge;
      edge.id = props.at("id").get<std::int64_t>();
      edge.support = props.value("support", std::size_t{0});
      edge.node_a = props.contains("a") && !props["a"].is_null()
                        ? props["a"].get<std::int64_t>()
                        : kOpenEnd;
      edge.node_b = props.contains("b") && !props["b"].is_null()
                        ? props["b"].get<std::int64_t>()
                        : kOpenEnd;
      for (const auto& c : geom.at("coordinates")) {
        const GeoCoord geo{c[1].get<double>(), c[0].get<double>()};
        edge.polyline.push_back(to_local(geo, graph.origin));
      }
      graph.edges.push_back(std::move(edge));
    } else {
      throw DataError("unsupported GeoJSON geometry: " + type);
    }
  }
  return graph;
}

void write_geojson(std::ostream& out, const RoadGraph& graph) {
  out << graph_to_geojson(graph).dump(2) << "\n";
}

RoadGraph read_geojson(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw DataError("unparseable GeoJSON input");
  return graph_from_geojson(doc);
}

void write_dot(std::ostream& out, const RoadGraph& graph) {
  out << "graph roads {\n";
  char buf[192];
  for (const auto& node : graph.nodes) {
    std::snprintf(buf, sizeof(buf),
                  "  n%lld [kind=%s, pos=\"%.2f,%.2f\"];\n",
                  static_cast<long long>(node.id), node_kind_name(node.kind),
                  node.local.x, node.local.y);
    out << buf;
  }
  std::size_t open_count = 0;
  for (const auto& edge : graph.edges) {
    std::string a = edge.node_a != kOpenEnd
                        ? "n" + std::to_string(edge.node_a)
                        : "open" + std::to_string(open_count++);
    std::string b = edge.node_b != kOpenEnd
                        ? "n" + std::to_string(edge.node_b)
                        : "open" + std::to_string(open_count++);
    std::snprintf(buf, sizeof(buf), "  %s -- %s [label=\"e%lld\", support=%zu];\n",
                  a.c_str(), b.c_str(), static_cast<long long>(edge.id), edge.support);
    out << buf;
  }
  out << "}\n";
}

void write_nodes_csv(std::ostream& out, const RoadGraph& graph) {
  out << "id,kind,x,y,lat,lon\n";
  char buf[160];
  for (const auto& node : graph.nodes) {
    std::snprintf(buf, sizeof(buf), "%lld,%s,%.3f,%.3f,%.9f,%.9f\n",
                  static_cast<long long>(node.id), node_kind_name(node.kind),
                  node.local.x, node.local.y, node.geo.lat, node.geo.lon);
    out << buf;
  }
}

void write_edges_csv(std::ostream& out, const RoadGraph& graph) {
  out << "id,node_a,node_b,support,polyline\n";
  char buf[64];
  for (const auto& edge : graph.edges) {
    out << edge.id << ",";
    if (edge.node_a != kOpenEnd) out << edge.node_a;
    out << ",";
    if (edge.node_b != kOpenEnd) out << edge.node_b;
    out << "," << edge.support << ",";
    for (std::size_t i = 0; i < edge.polyline.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%s%.3f %.3f", i == 0 ? "" : ";",
                    edge.polyline[i].x, edge.polyline[i].y);
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace rgg
