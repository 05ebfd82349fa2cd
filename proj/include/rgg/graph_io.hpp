#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rgg/roads.hpp"

namespace rgg {

// GeoJSON FeatureCollection: nodes as Point features (kind, local x/y in the
// properties), edges as LineString features (endpoint node ids, support).
// The collection-level properties carry the local-frame origin so the graph
// can be reconstructed exactly.
nlohmann::json graph_to_geojson(const RoadGraph& graph);
RoadGraph graph_from_geojson(const nlohmann::json& doc);

void write_geojson(std::ostream& out, const RoadGraph& graph);
RoadGraph read_geojson(std::istream& in);

// Graphviz DOT with node kinds as attributes and edge support as labels.
void write_dot(std::ostream& out, const RoadGraph& graph);

// Plain tables: nodes (id,kind,x,y,lat,lon) and edges (id,node_a,node_b,
// support,polyline as "x y;x y;...").
void write_nodes_csv(std::ostream& out, const RoadGraph& graph);
void write_edges_csv(std::ostream& out, const RoadGraph& graph);

const char* node_kind_name(NodeKind kind);

}  // namespace rgg
