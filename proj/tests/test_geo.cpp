#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "rgg/geo.hpp"

using namespace rgg;

TEST_SUITE("geo") {

TEST_CASE("haversine: zero distance to itself") {
  CHECK(haversine_distance({10.0, 20.0}, {10.0, 20.0}) == doctest::Approx(0.0));
}

TEST_CASE("haversine: one degree of longitude on the equator") {
  // Closed form: d = R * dlon = 6371000 * pi/180.
  CHECK(std::abs(haversine_distance({0.0, 0.0}, {0.0, 1.0}) - 111194.9) < 0.1);
}

TEST_CASE("haversine: one degree of latitude along a meridian") {
  CHECK(std::abs(haversine_distance({0.0, 0.0}, {1.0, 0.0}) - 111194.9) < 0.1);
}

TEST_CASE("haversine: symmetric and triangle inequality on random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lat(-80.0, 80.0);
  std::uniform_real_distribution<double> lon(-179.0, 179.0);
  for (int i = 0; i < 500; ++i) {
    const GeoCoord a{lat(rng), lon(rng)};
    const GeoCoord b{lat(rng), lon(rng)};
    const GeoCoord c{lat(rng), lon(rng)};
    const double ab = haversine_distance(a, b);
    const double ba = haversine_distance(b, a);
    CHECK(ab == doctest::Approx(ba));
    CHECK(ab >= 0.0);
    const double ac = haversine_distance(a, c);
    const double cb = haversine_distance(c, b);
    CHECK(ab <= (ac + cb) * (1.0 + 1e-6) + 1e-9);
  }
}

TEST_CASE("to_local: origin maps to origin") {
  const GeoCoord origin{59.0, 10.0};
  const LocalCoord p = to_local(origin, origin);
  CHECK(p.x == doctest::Approx(0.0));
  CHECK(p.y == doctest::Approx(0.0));
}

TEST_CASE("to_local: small offsets at the equator") {
  const GeoCoord origin{0.0, 0.0};
  const LocalCoord east = to_local({0.0, 0.001}, origin);
  CHECK(std::abs(east.x - 111.19) < 0.01);
  CHECK(east.y == doctest::Approx(0.0));
  const LocalCoord north = to_local({0.001, 0.0}, origin);
  CHECK(north.x == doctest::Approx(0.0));
  CHECK(std::abs(north.y - 111.19) < 0.01);
}

TEST_CASE("to_local: monotone in both axes near the origin") {
  const GeoCoord origin{59.0, 10.0};
  double last_x = -1.0;
  for (int i = 0; i < 10; ++i) {
    const double x = to_local({59.0, 10.0 + i * 0.001}, origin).x;
    CHECK(x > last_x);
    last_x = x;
  }
  double last_y = -1.0;
  for (int i = 0; i < 10; ++i) {
    const double y = to_local({59.0 + i * 0.001, 10.0}, origin).y;
    CHECK(y > last_y);
    last_y = y;
  }
}

TEST_CASE("to_geo inverts to_local within 1e-6 m") {
  const GeoCoord origin{59.1234, 10.5678};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> off(-5000.0, 5000.0);
  for (int i = 0; i < 200; ++i) {
    const LocalCoord p{off(rng), off(rng)};
    const LocalCoord q = to_local(to_geo(p, origin), origin);
    CHECK(std::abs(q.x - p.x) < 1e-6);
    CHECK(std::abs(q.y - p.y) < 1e-6);
  }
}

TEST_CASE("heading_between: axis directions and the diagonal") {
  CHECK(heading_between({0, 0}, {1, 0}) == doctest::Approx(0.0));
  CHECK(heading_between({0, 0}, {0, 1}) == doctest::Approx(kPi / 2));
  CHECK(heading_between({0, 0}, {-1, -1}) == doctest::Approx(5 * kPi / 4));
}

TEST_CASE("heading_between: coincident points throw") {
  CHECK_THROWS_AS(heading_between({3, 4}, {3, 4}), std::invalid_argument);
}

TEST_CASE("normalize_heading: branch values") {
  CHECK(normalize_heading(kPi / 2) == doctest::Approx(kPi / 2));
  CHECK(normalize_heading(3 * kPi / 2) == doctest::Approx(kPi / 2));
  CHECK(normalize_heading(kPi) == doctest::Approx(kPi));
}

TEST_CASE("normalize_heading: range and reflection symmetry") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> phi_dist(1e-12, kTwoPi - 1e-12);
  for (int i = 0; i < 20000; ++i) {
    const double phi = phi_dist(rng);
    const double n = normalize_heading(phi);
    CHECK(n >= 0.0);
    CHECK(n <= kPi);
    CHECK(n == doctest::Approx(normalize_heading(kTwoPi - phi)));
  }
}

}  // TEST_SUITE
