#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rgg/errors.hpp"
#include "rgg/trips.hpp"

using namespace rgg;

namespace {

Trip make_trip(const std::vector<LocalCoord>& pts, double dt = 2.0) {
  Trip t;
  t.trip_id = "t";
  t.endpoint_trimmed = true;  // bypass endpoint trimming in geometry tests
  for (std::size_t i = 0; i < pts.size(); ++i) {
    GpsUpdate u;
    u.timestamp = 1000.0 + dt * static_cast<double>(i);
    u.local = pts[i];
    u.geo = GeoCoord{59.0 + pts[i].y * 1e-5, 10.0 + pts[i].x * 1e-5};
    u.speed_kmh = 10.0;
    t.updates.push_back(u);
  }
  return t;
}

// Independent oracle: walk the polyline accumulating arc length and record
// where each multiple of the spacing lands.
std::vector<LocalCoord> arc_walk_oracle(const std::vector<LocalCoord>& pts,
                                        double spacing) {
  std::vector<LocalCoord> out{pts.front()};
  double walked = 0.0;
  double next = spacing;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double seg = distance(pts[i - 1], pts[i]);
    while (seg > 0.0 && next <= walked + seg + 1e-9) {
      const double t = (next - walked) / seg;
      out.push_back(LocalCoord{pts[i - 1].x + (pts[i].x - pts[i - 1].x) * t,
                               pts[i - 1].y + (pts[i].y - pts[i - 1].y) * t});
      next += spacing;
    }
    walked += seg;
  }
  if (distance(out.back(), pts.back()) > 1e-9) {
    out.push_back(pts.back());
  }
  return out;
}

const char* kCsv =
    "trip_id,timestamp,lat,lon,speed_kmh,heading_deg,machine_id,driver_id,task_id,excavator_id,event\n";

}  // namespace

TEST_SUITE("trips") {

TEST_CASE("parse: empty stream yields no trips") {
  std::istringstream in(kCsv);
  const auto result = parse_updates(in, TripFormat::kCsv);
  CHECK(result.trips.empty());
  CHECK(result.malformed_rows == 0);
}

TEST_CASE("parse: missing header is fatal") {
  std::istringstream in("not,a,header\n");
  CHECK_THROWS_AS(parse_updates(in, TripFormat::kCsv), ParseError);
}

TEST_CASE("parse: shuffled rows are grouped and sorted") {
  std::istringstream in(std::string(kCsv) +
                        "t1,1002,59.0002,10.0,5,,M1,D1,T1,E1,\n"
                        "t1,1000,59.0000,10.0,5,,M1,D1,T1,E1,load\n"
                        "t1,1001,59.0001,10.0,5,,M1,D1,T1,E1,\n");
  const auto result = parse_updates(in, TripFormat::kCsv);
  REQUIRE(result.trips.size() == 1);
  const Trip& t = result.trips[0];
  REQUIRE(t.updates.size() == 3);
  CHECK(t.updates[0].timestamp == 1000.0);
  CHECK(t.updates[2].timestamp == 1002.0);
  REQUIRE(t.load_event.has_value());
  CHECK(t.load_event->timestamp == 1000.0);
  CHECK(t.machine_id == "M1");
}

TEST_CASE("parse: zero coordinates are kept at parse time") {
  std::istringstream in(std::string(kCsv) + "t1,1000,0,0,5,,M1,D1,T1,E1,\n");
  const auto result = parse_updates(in, TripFormat::kCsv);
  REQUIRE(result.trips.size() == 1);
  CHECK(result.trips[0].updates.size() == 1);
  CHECK(result.malformed_rows == 0);
}

TEST_CASE("parse: malformed rows are counted, not fatal") {
  std::istringstream in(std::string(kCsv) +
                        "t1,1000,59,10,5,,M1,D1,T1,E1,\n"
                        "garbage row\n"
                        "t1,notatime,59,10,5,,M1,D1,T1,E1,\n"
                        "t1,1001,59,10,-3,,M1,D1,T1,E1,\n"
                        "t1,1002,59,10,5,,M1,D1,T1,E1,badEvent\n");
  const auto result = parse_updates(in, TripFormat::kCsv);
  CHECK(result.malformed_rows == 4);
  REQUIRE(result.trips.size() == 1);
  CHECK(result.trips[0].updates.size() == 1);
}

TEST_CASE("parse: ISO-8601 timestamps") {
  std::istringstream in(std::string(kCsv) +
                        "t1,2022-09-13T05:00:00Z,59,10,5,,M1,D1,T1,E1,\n"
                        "t1,2022-09-13T05:00:02.500Z,59.0001,10,5,,M1,D1,T1,E1,\n"
                        "t1,2022-09-13T07:00:04+02:00,59.0002,10,5,,M1,D1,T1,E1,\n");
  const auto result = parse_updates(in, TripFormat::kCsv);
  REQUIRE(result.trips.size() == 1);
  const auto& u = result.trips[0].updates;
  REQUIRE(u.size() == 3);
  CHECK(u[0].timestamp == doctest::Approx(1663045200.0));
  CHECK(u[1].timestamp == doctest::Approx(1663045202.5));
  CHECK(u[2].timestamp == doctest::Approx(1663045204.0));  // offset applied
}

TEST_CASE("parse: jsonl rows") {
  std::istringstream in(
      R"({"trip_id":"t1","timestamp":1000,"lat":59.0,"lon":10.0,"speed_kmh":4.5,"machine_id":"M1","driver_id":"D1","task_id":"T1","excavator_id":"E1","event":"load"})"
      "\n"
      R"(bad json)"
      "\n");
  const auto result = parse_updates(in, TripFormat::kJsonl);
  CHECK(result.malformed_rows == 1);
  REQUIRE(result.trips.size() == 1);
  CHECK(result.trips[0].load_event.has_value());
}

TEST_CASE("project: origin is the component-wise minimum of valid fixes") {
  std::vector<Trip> trips(1);
  trips[0].updates.resize(3);
  trips[0].updates[0].geo = {59.5, 10.5};
  trips[0].updates[1].geo = {59.2, 10.8};
  trips[0].updates[2].geo = {0.0, 0.0};  // sentinel, ignored for the origin
  for (std::size_t i = 0; i < 3; ++i) trips[0].updates[i].timestamp = 1000.0 + i;
  const GeoCoord origin = project_trips(trips);
  CHECK(origin.lat == 59.2);
  CHECK(origin.lon == 10.5);
  CHECK(trips[0].updates[1].local.x > 0.0);
  CHECK(trips[0].updates[1].local.y == doctest::Approx(0.0));
}

TEST_CASE("clean: rejects trips that end up too short") {
  PreprocessParams p;
  p.endpoint_trim_m = 0.0;
  Trip t = make_trip({{0, 0}, {5, 0}, {10, 0}});
  t.endpoint_trimmed = false;
  const auto r = clean_trip(t, p);  // min_points = 10 by default
  CHECK_FALSE(r.trip.has_value());
  CHECK(r.reason == RejectReason::kTooShort);
}

TEST_CASE("clean: zero coordinates and duplicates are dropped, stationary diverted") {
  PreprocessParams p;
  p.min_points = 2;
  p.endpoint_trim_m = 0.0;
  Trip t;
  t.trip_id = "t";
  auto push = [&](double ts, double lat, double lon, double speed) {
    GpsUpdate u;
    u.timestamp = ts;
    u.geo = {lat, lon};
    u.local = {lon * 1000.0, lat * 1000.0};
    u.speed_kmh = speed;
    t.updates.push_back(u);
  };
  push(1, 59.0, 10.0, 5);
  push(2, 0.0, 0.0, 5);    // uncalibrated
  push(3, 59.0, 10.0, 5);  // duplicate of the first kept position
  push(4, 59.1, 10.0, 0);  // stationary
  push(5, 59.2, 10.0, 5);
  const auto r = clean_trip(t, p);
  REQUIRE(r.trip.has_value());
  CHECK(r.trip->updates.size() == 2);
  CHECK(r.trip->stationary.size() == 1);
  CHECK(r.trip->updates[1].geo.lat == 59.2);
}

TEST_CASE("clean: one bogus fix among fifty") {
  PreprocessParams p;
  p.min_points = 2;
  p.endpoint_trim_m = 0.0;
  Trip t = make_trip([] {
    std::vector<LocalCoord> pts;
    for (int i = 0; i < 50; ++i) pts.push_back({i * 5.0, 0.0});
    return pts;
  }());
  t.endpoint_trimmed = false;
  t.updates[20].geo = {0.0, 0.0};
  const auto r = clean_trip(t, p);
  REQUIRE(r.trip.has_value());
  CHECK(r.trip->updates.size() == 49);
}

TEST_CASE("clean: trailing driven distance is trimmed") {
  PreprocessParams p;
  p.min_points = 2;
  // 8 points 20 m apart: cumulative-from-end = 140,120,100,80,60,40,20,0.
  Trip t = make_trip(
      {{0, 0}, {20, 0}, {40, 0}, {60, 0}, {80, 0}, {100, 0}, {120, 0}, {140, 0}});
  t.endpoint_trimmed = false;
  const auto r = clean_trip(t, p);  // endpoint_trim_m = 100
  REQUIRE(r.trip.has_value());
  // Points with cumulative distance from the end <= 100 m are removed.
  CHECK(r.trip->updates.size() == 2);
  CHECK(r.trip->updates.back().local.x == 20.0);
}

TEST_CASE("clean: idempotent") {
  PreprocessParams p;
  p.min_points = 2;
  std::vector<LocalCoord> pts;
  for (int i = 0; i < 60; ++i) pts.push_back({i * 10.0, 3.0 * ((i % 3) - 1)});
  Trip t = make_trip(pts);
  t.endpoint_trimmed = false;
  const auto once = clean_trip(t, p);
  REQUIRE(once.trip.has_value());
  const auto twice = clean_trip(*once.trip, p);
  REQUIRE(twice.trip.has_value());
  CHECK(twice.trip->updates.size() == once.trip->updates.size());
  for (std::size_t i = 0; i < once.trip->updates.size(); ++i) {
    CHECK(twice.trip->updates[i].timestamp == once.trip->updates[i].timestamp);
    CHECK(twice.trip->updates[i].local.x == once.trip->updates[i].local.x);
  }
}

TEST_CASE("split: uniform cadence stays whole") {
  PreprocessParams p;
  p.min_points = 2;
  const Trip t = make_trip({{0, 0}, {5, 0}, {10, 0}, {15, 0}}, 2.0);
  const auto parts = split_trip(t, p);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].trip_id == "t");
}

TEST_CASE("split: distance jump cuts the trip") {
  PreprocessParams p;
  p.min_points = 2;
  const Trip t = make_trip({{0, 0}, {5, 0}, {2505, 0}, {2510, 0}}, 2.0);
  const auto parts = split_trip(t, p);  // jump_split_m = 2000
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].trip_id == "t/0");
  CHECK(parts[0].updates.size() == 2);
  CHECK(parts[1].updates.size() == 2);
}

TEST_CASE("split: time gap cuts the trip") {
  PreprocessParams p;
  p.min_points = 2;
  Trip t = make_trip({{0, 0}, {5, 0}, {10, 0}, {15, 0}}, 2.0);
  t.updates[2].timestamp += 400.0;  // > 300 s gap between updates 1 and 2
  t.updates[3].timestamp += 400.0;
  const auto parts = split_trip(t, p);
  REQUIRE(parts.size() == 2);
}

TEST_CASE("split: turn splitting disabled by default") {
  PreprocessParams p;
  p.min_points = 2;
  // Sharp 180-degree turn; with turn_split_rad = 0 nothing splits.
  const Trip t = make_trip({{0, 0}, {5, 0}, {10, 0}, {5, 0.01}, {0, 0.01}});
  CHECK(split_trip(t, p).size() == 1);
  PreprocessParams p2 = p;
  p2.turn_split_rad = kPi / 2;
  CHECK(split_trip(t, p2).size() == 2);
}

TEST_CASE("split: partition preserves the update sequence") {
  PreprocessParams p;
  p.min_points = 1;
  std::vector<LocalCoord> pts;
  double x = 0.0;
  for (int i = 0; i < 100; ++i) {
    x += (i % 17 == 16) ? 2500.0 : 5.0;  // sprinkle jump splits
    pts.push_back({x, 0.0});
  }
  const Trip t = make_trip(pts);
  const auto parts = split_trip(t, p);
  std::vector<double> concat;
  for (const auto& part : parts) {
    for (const auto& u : part.updates) concat.push_back(u.local.x);
  }
  REQUIRE(concat.size() == t.updates.size());
  for (std::size_t i = 0; i < concat.size(); ++i) {
    CHECK(concat[i] == t.updates[i].local.x);
  }
}

TEST_CASE("interpolate: straight 100 m at 5 m gives 21 points") {
  PreprocessParams p;
  const Trip t = make_trip({{0, 0}, {30, 0}, {100, 0}});
  const Trip out = interpolate_trip(t, p);
  REQUIRE(out.updates.size() == 21);
  for (std::size_t i = 0; i < out.updates.size(); ++i) {
    CHECK(out.updates[i].local.x == doctest::Approx(5.0 * i));
    CHECK(out.updates[i].local.y == doctest::Approx(0.0));
  }
  // Timestamps re-interpolated by arc length.
  CHECK(out.updates.front().timestamp == t.updates.front().timestamp);
  CHECK(out.updates.back().timestamp == t.updates.back().timestamp);
}

TEST_CASE("interpolate: two-point trip") {
  PreprocessParams p;
  const Trip t = make_trip({{0, 0}, {12, 0}});
  const Trip out = interpolate_trip(t, p);
  REQUIRE(out.updates.size() == 4);  // 0, 5, 10, 12
  CHECK(out.updates[2].local.x == doctest::Approx(10.0));
  CHECK(out.updates.back().local.x == doctest::Approx(12.0));
}

TEST_CASE("interpolate: L-shaped path matches the arc-walk oracle") {
  PreprocessParams p;
  const std::vector<LocalCoord> pts{{0, 0}, {50, 0}, {50, 50}};
  const Trip out = interpolate_trip(make_trip(pts), p);
  const auto oracle = arc_walk_oracle(pts, p.interp_spacing_m);
  REQUIRE(out.updates.size() == oracle.size());
  CHECK(out.updates.size() == 21);
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    CHECK(out.updates[i].local.x == doctest::Approx(oracle[i].x));
    CHECK(out.updates[i].local.y == doctest::Approx(oracle[i].y));
  }
  // The corner is itself an output point.
  bool corner_hit = false;
  for (const auto& u : out.updates) {
    if (distance(u.local, {50, 0}) < 1e-6) corner_hit = true;
  }
  CHECK(corner_hit);
}

TEST_CASE("interpolate: spacing within 10% and length within 2% on random paths") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> turn(-0.5, 0.5);
  std::uniform_real_distribution<double> step(6.0, 30.0);
  PreprocessParams p;
  for (int round = 0; round < 50; ++round) {
    std::vector<LocalCoord> pts{{0, 0}};
    double heading = turn(rng) * 2.0;
    for (int i = 0; i < 60; ++i) {
      heading += turn(rng);
      const double len = step(rng);
      pts.push_back({pts.back().x + len * std::cos(heading),
                     pts.back().y + len * std::sin(heading)});
    }
    const Trip out = interpolate_trip(make_trip(pts), p);
    REQUIRE(out.updates.size() >= 2);
    for (std::size_t i = 1; i + 1 < out.updates.size(); ++i) {
      const double d = distance(out.updates[i - 1].local, out.updates[i].local);
      CHECK(d > 0.9 * p.interp_spacing_m);
      CHECK(d < 1.1 * p.interp_spacing_m);
    }
    std::vector<LocalCoord> out_pts;
    for (const auto& u : out.updates) out_pts.push_back(u.local);
    CHECK(polyline_length(out_pts) ==
          doctest::Approx(polyline_length(pts)).epsilon(0.02));
  }
}

TEST_CASE("interpolate: cubic spline passes through the input points") {
  PreprocessParams p;
  p.spline_degree = 3;
  p.interp_spacing_m = 2.0;
  const std::vector<LocalCoord> pts{{0, 0}, {20, 8}, {40, -3}, {60, 4}, {85, 0}};
  const Trip out = interpolate_trip(make_trip(pts), p);
  // The curve passes through every input point, so the nearest resampled
  // point can be at most half the spacing away along the curve.
  for (const auto& q : pts) {
    double best = 1e9;
    for (const auto& u : out.updates) best = std::min(best, distance(u.local, q));
    CHECK(best < 0.55 * p.interp_spacing_m);
  }
  CHECK(out.updates.front().local.x == doctest::Approx(0.0));
  CHECK(out.updates.back().local.x == doctest::Approx(85.0));
}

TEST_CASE("interpolate: degree falls back to linear when points are scarce") {
  PreprocessParams p;
  p.spline_degree = 3;
  const Trip t = make_trip({{0, 0}, {10, 0}, {20, 0}});  // 3 points < degree+1
  const Trip out = interpolate_trip(t, p);
  CHECK(out.updates.size() == 5);
}

}  // TEST_SUITE
