#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "rgg/geo.hpp"
#include "rgg/trips.hpp"

namespace rgg {

struct CellIndex {
  std::int64_t i = 0;  // along x
  std::int64_t j = 0;  // along y
  auto operator<=>(const CellIndex&) const = default;
};

struct GridCell {
  double median_heading = 0.0;  // in [0, pi]
  std::size_t count = 0;
};

// Sparse 2D histogram of per-cell median normalized movement directions.
// Only cells that received at least one step are stored; indices are
// non-negative relative to the snapped lower-left origin.
class HeadingGrid {
 public:
  HeadingGrid() = default;
  HeadingGrid(LocalCoord origin, double cell_size) : origin_(origin), cell_size_(cell_size) {}

  const LocalCoord& origin() const { return origin_; }
  double cell_size() const { return cell_size_; }
  const std::map<CellIndex, GridCell>& cells() const { return cells_; }
  std::map<CellIndex, GridCell>& cells() { return cells_; }

  LocalCoord cell_center(const CellIndex& c) const {
    return LocalCoord{origin_.x + (static_cast<double>(c.i) + 0.5) * cell_size_,
                      origin_.y + (static_cast<double>(c.j) + 0.5) * cell_size_};
  }

 private:
  LocalCoord origin_{};
  double cell_size_ = 5.0;
  std::map<CellIndex, GridCell> cells_;
};

// Per-cell directional dissimilarity against stored neighbors.
using DissimilarityField = std::map<CellIndex, double>;

// Buckets every consecutive-point step of every trip into the cell holding
// the step's start point, keeping the normalized direction, and reduces each
// cell to its median. Steps with coincident endpoints contribute nothing.
HeadingGrid build_grid(const std::vector<Trip>& trips, double cell_size);

// Root of the summed squared differences between a cell's median direction
// and the medians of its data-bearing neighbors (cells whose center is
// within neighbor_radius; a cell is not its own neighbor). Cells without
// stored neighbors get 0.
DissimilarityField dissimilarity(const HeadingGrid& grid, double neighbor_radius);

// Debug table: i,j,cx,cy,median_phi,count,delta_phi.
void write_grid_csv(std::ostream& out, const HeadingGrid& grid,
                    const DissimilarityField& field);

}  // namespace rgg
