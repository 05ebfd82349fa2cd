#include "rgg/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace rgg {

namespace {

struct Bounds {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void include(const LocalCoord& p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  bool valid() const { return min_x <= max_x; }
};

// Heat ramp from pale yellow to red.
void heat_color(double t, char* out, std::size_t n) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = 255;
  const int g = static_cast<int>(230.0 * (1.0 - t));
  const int b = static_cast<int>(120.0 * (1.0 - t));
  std::snprintf(out, n, "#%02x%02x%02x", r, g, b);
}

}  // namespace

void write_site_svg(std::ostream& out, const PlotInputs& in) {
  Bounds bounds;
  if (in.trips != nullptr) {
    for (const auto& trip : *in.trips) {
      for (const auto& u : trip.updates) bounds.include(u.local);
    }
  }
  if (in.grid != nullptr) {
    for (const auto& [cell, data] : in.grid->cells()) {
      bounds.include(in.grid->cell_center(cell));
    }
  }
  if (in.graph != nullptr) {
    for (const auto& node : in.graph->nodes) bounds.include(node.local);
    for (const auto& edge : in.graph->edges) {
      for (const auto& p : edge.polyline) bounds.include(p);
    }
  }
  if (!bounds.valid()) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"10\" height=\"10\"/>\n";
    return;
  }

  const double margin = 25.0;
  const double w = bounds.max_x - bounds.min_x + 2 * margin;
  const double h = bounds.max_y - bounds.min_y + 2 * margin;
  // y grows north; SVG y grows down.
  auto sx = [&](double x) { return x - bounds.min_x + margin; };
  auto sy = [&](double y) { return bounds.max_y - y + margin; };

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" viewBox=\"0 0 %.2f %.2f\">\n",
                w, h, w, h);
  out << buf;
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (in.grid != nullptr && in.field != nullptr) {
    double max_delta = 0.0;
    for (const auto& [cell, delta] : *in.field) max_delta = std::max(max_delta, delta);
    const double cs = in.grid->cell_size();
    for (const auto& [cell, delta] : *in.field) {
      if (delta <= 0.0) continue;
      const LocalCoord c = in.grid->cell_center(cell);
      char color[10];
      heat_color(max_delta > 0 ? delta / max_delta : 0.0, color, sizeof(color));
      std::snprintf(buf, sizeof(buf),
                    "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                    "fill=\"%s\" fill-opacity=\"0.8\"/>\n",
                    sx(c.x - cs / 2), sy(c.y + cs / 2), cs, cs, color);
      out << buf;
    }
  }

  if (in.trips != nullptr) {
    for (const auto& trip : *in.trips) {
      if (trip.updates.size() < 2) continue;
      out << "<polyline fill=\"none\" stroke=\"#9c9c9c\" stroke-width=\"0.7\" "
             "stroke-opacity=\"0.5\" points=\"";
      for (const auto& u : trip.updates) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", sx(u.local.x), sy(u.local.y));
        out << buf;
      }
      out << "\"/>\n";
    }
  }

  if (in.candidates != nullptr) {
    for (const auto& c : *in.candidates) {
      std::snprintf(buf, sizeof(buf),
                    "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"6\" fill=\"none\" "
                    "stroke=\"#8a2be2\" stroke-width=\"1.5\"/>\n",
                    sx(c.x), sy(c.y));
      out << buf;
    }
  }

  if (in.graph != nullptr) {
    for (const auto& edge : in.graph->edges) {
      out << "<polyline fill=\"none\" stroke=\"#1f6fd0\" stroke-width=\"2\" points=\"";
      for (const auto& p : edge.polyline) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", sx(p.x), sy(p.y));
        out << buf;
      }
      out << "\"/>\n";
    }
    for (const auto& node : in.graph->nodes) {
      const char* color = "#d02020";
      if (node.kind == NodeKind::kLoad) color = "#1fa01f";
      if (node.kind == NodeKind::kDropoff) color = "#202020";
      const double x = sx(node.local.x);
      const double y = sy(node.local.y);
      std::snprintf(buf, sizeof(buf),
                    "<path d=\"M %.2f %.2f L %.2f %.2f M %.2f %.2f L %.2f %.2f\" "
                    "stroke=\"%s\" stroke-width=\"2.5\"/>\n",
                    x - 6, y - 6, x + 6, y + 6, x - 6, y + 6, x + 6, y - 6, color);
      out << buf;
    }
  }
  out << "</svg>\n";
}

}  // namespace rgg
