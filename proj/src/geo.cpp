#include "rgg/geo.hpp"

#include <algorithm>
#include <stdexcept>

namespace rgg {

double haversine_distance(const GeoCoord& a, const GeoCoord& b) {
  const double lat1 = deg2rad(a.lat);
  const double lat2 = deg2rad(b.lat);
  const double dlat = lat2 - lat1;
  const double dlon = deg2rad(b.lon - a.lon);

  const double sin_lat = std::sin(dlat / 2.0);
  const double sin_lon = std::sin(dlon / 2.0);
  double h = sin_lat * sin_lat + std::cos(lat1) * std::cos(lat2) * sin_lon * sin_lon;
  // Guard against rounding pushing h out of [0, 1].
  h = std::clamp(h, 0.0, 1.0);
  const double c = 2.0 * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
  return kEarthRadiusM * c;
}

LocalCoord to_local(const GeoCoord& p, const GeoCoord& origin) {
  const double dx = haversine_distance(origin, GeoCoord{origin.lat, p.lon});
  const double dy = haversine_distance(origin, GeoCoord{p.lat, origin.lon});
  return LocalCoord{p.lon >= origin.lon ? dx : -dx,
                    p.lat >= origin.lat ? dy : -dy};
}

GeoCoord to_geo(const LocalCoord& p, const GeoCoord& origin) {
  // Along a meridian the central angle is exactly |dlat|.
  const double lat = origin.lat + rad2deg(p.y / kEarthRadiusM);
  // Along the origin's parallel: d = 2 R asin(cos(lat0) * sin(|dlon| / 2)).
  const double cos_lat = std::cos(deg2rad(origin.lat));
  double lon = origin.lon;
  if (cos_lat > 0.0) {
    const double s = std::clamp(std::sin(std::abs(p.x) / (2.0 * kEarthRadiusM)) / cos_lat, -1.0, 1.0);
    const double dlon = 2.0 * std::asin(s);
    lon += (p.x >= 0.0 ? 1.0 : -1.0) * rad2deg(dlon);
  }
  return GeoCoord{lat, lon};
}

double heading_between(const LocalCoord& a, const LocalCoord& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  if (dx == 0.0 && dy == 0.0) {
    throw std::invalid_argument("heading_between: coincident points");
  }
  double phi = std::atan2(dy, dx);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  return phi;
}

double normalize_heading(double phi) {
  return phi <= kPi ? phi : kTwoPi - phi;
}

}  // namespace rgg
