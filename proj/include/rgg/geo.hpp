#pragma once

#include <cmath>

namespace rgg {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Mean Earth radius of the spherical distance model, in meters.
inline constexpr double kEarthRadiusM = 6371000.0;

// Geographic position in degrees; lat in [-90, 90], lon in [-180, 180].
// (0, 0) is used as an "uncalibrated receiver" sentinel by the ingestion
// layer only; this module treats it as a regular coordinate.
struct GeoCoord {
  double lat = 0.0;
  double lon = 0.0;
};

// Planar position in meters relative to a per-dataset origin.
// x grows eastwards, y grows northwards.
struct LocalCoord {
  double x = 0.0;
  double y = 0.0;
};

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

inline double distance(const LocalCoord& a, const LocalCoord& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Great-circle distance in meters between two geographic points.
double haversine_distance(const GeoCoord& a, const GeoCoord& b);

// Projects p into the local metric frame anchored at origin. Each axis is
// an independent great-circle distance (along the origin's parallel for x,
// along the meridian for y), signed by the coordinate difference.
LocalCoord to_local(const GeoCoord& p, const GeoCoord& origin);

// Inverse of to_local. Round-trips within 1e-6 m at construction-site scale.
GeoCoord to_geo(const LocalCoord& p, const GeoCoord& origin);

// Direction of the step a -> b, measured counterclockwise from the +x axis
// (east), wrapped to [0, 2*pi). Throws std::invalid_argument when the points
// coincide; callers are expected to deduplicate first.
double heading_between(const LocalCoord& a, const LocalCoord& b);

// Folds a direction in [0, 2*pi) onto [0, pi]: phi stays put below pi,
// anything above maps to 2*pi - phi. Makes phi and 2*pi - phi equivalent,
// which collapses bi-directional traffic into a single per-cell mode.
double normalize_heading(double phi);

}  // namespace rgg
