#include "rgg/heading_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace rgg {

namespace {

double median_of(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

HeadingGrid build_grid(const std::vector<Trip>& trips, double cell_size) {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  for (const auto& trip : trips) {
    for (std::size_t k = 0; k + 1 < trip.updates.size(); ++k) {
      const auto& a = trip.updates[k].local;
      const auto& b = trip.updates[k + 1].local;
      if (a.x == b.x && a.y == b.y) continue;
      min_x = std::min(min_x, a.x);
      min_y = std::min(min_y, a.y);
    }
  }
  if (!std::isfinite(min_x)) return HeadingGrid{{0.0, 0.0}, cell_size};

  const LocalCoord origin{std::floor(min_x / cell_size) * cell_size,
                          std::floor(min_y / cell_size) * cell_size};
  HeadingGrid grid(origin, cell_size);

  std::map<CellIndex, std::vector<double>> buckets;
  for (const auto& trip : trips) {
    for (std::size_t k = 0; k + 1 < trip.updates.size(); ++k) {
      const auto& a = trip.updates[k].local;
      const auto& b = trip.updates[k + 1].local;
      if (a.x == b.x && a.y == b.y) continue;
      const CellIndex cell{
          static_cast<std::int64_t>(std::floor((a.x - origin.x) / cell_size)),
          static_cast<std::int64_t>(std::floor((a.y - origin.y) / cell_size))};
      buckets[cell].push_back(normalize_heading(heading_between(a, b)));
    }
  }
  for (auto& [cell, values] : buckets) {
    grid.cells()[cell] = GridCell{median_of(values), values.size()};
  }
  return grid;
}

DissimilarityField dissimilarity(const HeadingGrid& grid, double neighbor_radius) {
  // Offsets whose center-to-center distance fits in the radius.
  std::vector<CellIndex> offsets;
  const std::int64_t reach =
      static_cast<std::int64_t>(std::floor(neighbor_radius / grid.cell_size()));
  for (std::int64_t di = -reach; di <= reach; ++di) {
    for (std::int64_t dj = -reach; dj <= reach; ++dj) {
      if (di == 0 && dj == 0) continue;
      const double d = grid.cell_size() * std::hypot(static_cast<double>(di),
                                                     static_cast<double>(dj));
      if (d <= neighbor_radius) offsets.push_back(CellIndex{di, dj});
    }
  }

  DissimilarityField field;
  const auto& cells = grid.cells();
  for (const auto& [cell, data] : cells) {
    double sum_sq = 0.0;
    for (const auto& off : offsets) {
      const auto it = cells.find(CellIndex{cell.i + off.i, cell.j + off.j});
      if (it == cells.end()) continue;
      const double diff = data.median_heading - it->second.median_heading;
      sum_sq += diff * diff;
    }
    field[cell] = std::sqrt(sum_sq);
  }
  return field;
}

void write_grid_csv(std::ostream& out, const HeadingGrid& grid,
                    const DissimilarityField& field) {
  out << "i,j,cx,cy,median_phi,count,delta_phi\n";
  char buf[160];
  for (const auto& [cell, data] : grid.cells()) {
    const LocalCoord c = grid.cell_center(cell);
    const auto it = field.find(cell);
    const double delta = it != field.end() ? it->second : 0.0;
    std::snprintf(buf, sizeof(buf), "%lld,%lld,%.3f,%.3f,%.6f,%zu,%.6f\n",
                  static_cast<long long>(cell.i), static_cast<long long>(cell.j),
                  c.x, c.y, data.median_heading, data.count, delta);
    out << buf;
  }
}

}  // namespace rgg
