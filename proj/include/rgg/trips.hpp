#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rgg/geo.hpp"

namespace rgg {

// One GPS position update. `local` is filled once the dataset origin is
// known (project_trips); before that it is zero.
struct GpsUpdate {
  double timestamp = 0.0;  // UTC epoch seconds, fractional allowed
  GeoCoord geo{};
  LocalCoord local{};
  double speed_kmh = 0.0;
  std::optional<double> raw_heading_deg{};
};

// A manually reported load or drop-off occurrence.
struct TripEvent {
  double timestamp = 0.0;
  GeoCoord geo{};
  LocalCoord local{};
};

// One transport cycle: from a loading until the next loading starts.
struct Trip {
  std::string trip_id;
  std::string machine_id;
  std::string driver_id;
  std::string task_id;
  std::string excavator_id;  // may be empty
  std::vector<GpsUpdate> updates;  // sorted by timestamp
  // Zero-speed updates diverted by clean_trip. They carry no movement but
  // stay available to the load/drop-off stage.
  std::vector<GpsUpdate> stationary;
  std::optional<TripEvent> load_event;
  std::optional<TripEvent> dropoff_event;
  bool endpoint_trimmed = false;  // set by clean_trip so cleaning is idempotent
};

struct PreprocessParams {
  double endpoint_trim_m = 100.0;  // driven distance dropped at each trip end
  int spline_degree = 1;
  double interp_spacing_m = 5.0;
  std::size_t min_points = 10;     // shorter trips are rejected
  double idle_split_s = 300.0;     // time gap that splits a trip
  double jump_split_m = 2000.0;    // distance gap that splits a trip
  double turn_split_rad = 0.0;     // 0 disables direction splitting
};

enum class TripFormat { kCsv, kJsonl };

struct ParseResult {
  std::vector<Trip> trips;        // in order of first appearance
  std::size_t malformed_rows = 0;
};

// Parses the raw update stream and groups rows into trips sorted by
// timestamp. Malformed rows are counted and skipped; an unusable header or
// a structurally broken stream throws ParseError.
ParseResult parse_updates(std::istream& in, TripFormat format);

// Computes the dataset origin (component-wise minimum of valid latitudes
// and longitudes) and fills the local coordinates of every update and
// event. Throws DataError when no valid coordinate exists.
GeoCoord project_trips(std::vector<Trip>& trips);

enum class RejectReason { kNone, kTooShort, kAllInvalid };

struct CleanResult {
  std::optional<Trip> trip;
  RejectReason reason = RejectReason::kNone;
};

// Drops uncalibrated (lat or lon = 0) fixes, diverts zero-speed updates to
// the stationary list, removes consecutive duplicate positions, and trims
// the trailing updates whose driven distance from the trip end is within
// endpoint_trim_m. Trips left with fewer than min_points updates are
// rejected with a reason code.
CleanResult clean_trip(const Trip& trip, const PreprocessParams& params);

// Cuts a cleaned trip between consecutive updates whenever the time gap,
// distance gap, or (if enabled) turn angle threshold is exceeded. Sub-trips
// inherit the metadata with suffixed ids; sub-trips shorter than min_points
// are dropped.
std::vector<Trip> split_trip(const Trip& trip, const PreprocessParams& params);

// Resamples the trip along its arc length at interp_spacing_m using a
// spline of degree spline_degree through the local coordinates (degree 1 is
// exact polyline resampling). First and last points are preserved exactly;
// timestamps and speeds are re-interpolated linearly by arc length.
Trip interpolate_trip(const Trip& trip, const PreprocessParams& params);

// Resamples a polyline at the given spacing; endpoints preserved exactly.
std::vector<LocalCoord> resample_polyline(const std::vector<LocalCoord>& points,
                                          double spacing);

double polyline_length(const std::vector<LocalCoord>& points);

}  // namespace rgg
