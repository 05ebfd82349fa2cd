#pragma once

#include <iosfwd>
#include <vector>

#include "rgg/heading_grid.hpp"
#include "rgg/intersections.hpp"
#include "rgg/roads.hpp"
#include "rgg/trips.hpp"

namespace rgg {

// Everything the debug plot can overlay; any piece may be empty.
struct PlotInputs {
  const std::vector<Trip>* trips = nullptr;
  const HeadingGrid* grid = nullptr;
  const DissimilarityField* field = nullptr;
  const std::vector<LocalCoord>* candidates = nullptr;
  const RoadGraph* graph = nullptr;
};

// Static SVG: dissimilarity heatmap under faint GPS tracks, candidate
// circles, inferred edges, and node markers.
void write_site_svg(std::ostream& out, const PlotInputs& inputs);

}  // namespace rgg
