#include <doctest.h>

#include <cmath>
#include <random>

#include "rgg/intersections.hpp"

using namespace rgg;

namespace {

// Traffic along a segment: `passes` replicas, laterally offset a little, at
// 2.5 m spacing. Dense enough for every clustering stage involved.
void add_line(std::vector<LocalCoord>& pts, LocalCoord a, LocalCoord b, int passes = 3) {
  const double len = distance(a, b);
  const double nx = -(b.y - a.y) / len;
  const double ny = (b.x - a.x) / len;
  const int n = static_cast<int>(len / 2.5);
  for (int pass = 0; pass < passes; ++pass) {
    const double off = (pass - passes / 2) * 0.4;
    for (int i = 0; i <= n; ++i) {
      const double t = static_cast<double>(i) / n;
      pts.push_back({a.x + (b.x - a.x) * t + nx * off, a.y + (b.y - a.y) * t + ny * off});
    }
  }
}

ValidationParams params_with_seed(std::uint64_t seed = 0) {
  ValidationParams p;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_SUITE("intersections") {

TEST_CASE("find_candidates: all-zero field yields none") {
  HeadingGrid grid({0, 0}, 5.0);
  DissimilarityField field;
  for (int i = 0; i < 5; ++i) {
    grid.cells()[CellIndex{i, 0}] = GridCell{0.3, 2};
    field[CellIndex{i, 0}] = 0.0;
  }
  CHECK(find_candidates(field, grid, CandidateParams{}).empty());
}

TEST_CASE("find_candidates: lone flagged cell is discarded") {
  HeadingGrid grid({0, 0}, 5.0);
  DissimilarityField field;
  grid.cells()[CellIndex{3, 3}] = GridCell{1.0, 2};
  field[CellIndex{3, 3}] = 5.0;
  CHECK(find_candidates(field, grid, CandidateParams{}).empty());
}

TEST_CASE("find_candidates: 2x2 flagged block merges to its centroid") {
  HeadingGrid grid({0, 0}, 5.0);
  DissimilarityField field;
  for (int i = 2; i <= 3; ++i) {
    for (int j = 2; j <= 3; ++j) {
      grid.cells()[CellIndex{i, j}] = GridCell{1.0, 2};
      field[CellIndex{i, j}] = 2.0;
    }
  }
  const auto candidates = find_candidates(field, grid, CandidateParams{});
  REQUIRE(candidates.size() == 1);
  CHECK(candidates[0].x == doctest::Approx(15.0));  // centroid of centers 12.5, 17.5
  CHECK(candidates[0].y == doctest::Approx(15.0));
}

TEST_CASE("find_candidates: threshold uses >= comparison") {
  HeadingGrid grid({0, 0}, 5.0);
  DissimilarityField field;
  grid.cells()[CellIndex{0, 0}] = GridCell{1.0, 2};
  grid.cells()[CellIndex{1, 0}] = GridCell{1.0, 2};
  field[CellIndex{0, 0}] = 1.4;
  field[CellIndex{1, 0}] = 1.4;
  CandidateParams p;
  CHECK(find_candidates(field, grid, p).size() == 1);
}

TEST_CASE("raising the threshold never flags more cells") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> delta(0.0, 4.0);
  for (int round = 0; round < 30; ++round) {
    DissimilarityField field;
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) field[CellIndex{i, j}] = delta(rng);
    }
    std::size_t last = field.size() + 1;
    for (double thr = 0.5; thr <= 4.0; thr += 0.5) {
      std::size_t flagged = 0;
      for (const auto& [cell, d] : field) {
        if (d >= thr) ++flagged;
      }
      CHECK(flagged <= last);
      last = flagged;
    }
  }
}

TEST_CASE("validate: straight road is rejected with two outgoing clusters") {
  std::vector<LocalCoord> pts;
  add_line(pts, {-100, 0}, {100, 0});
  const SpatialIndex index{pts};
  const auto r = validate_candidate({0, 0}, index, params_with_seed(),
                                    AnnulusSpec{30, 25}, 1);
  CHECK_FALSE(r.valid);
  CHECK(r.road_count == 2);
}

TEST_CASE("validate: T-junction with three dense legs is accepted") {
  std::vector<LocalCoord> pts;
  add_line(pts, {-100, 0}, {100, 0});
  add_line(pts, {0, 0}, {0, -100});
  const SpatialIndex index{pts};
  const auto r = validate_candidate({0, 0}, index, params_with_seed(),
                                    AnnulusSpec{30, 25}, 1);
  CHECK(r.valid);
  CHECK(r.road_count == 3);
}

TEST_CASE("validate: four-way crossing counts four roads") {
  std::vector<LocalCoord> pts;
  add_line(pts, {-100, 0}, {100, 0});
  add_line(pts, {0, -100}, {0, 100});
  const SpatialIndex index{pts};
  const auto r = validate_candidate({0, 0}, index, params_with_seed(),
                                    AnnulusSpec{30, 25}, 1);
  CHECK(r.valid);
  CHECK(r.road_count == 4);
}

TEST_CASE("validate: disconnected parallel road contributes nothing") {
  std::vector<LocalCoord> pts;
  add_line(pts, {-100, 0}, {100, 0});  // the road the candidate sits on
  add_line(pts, {40, -60}, {40, 60});  // parallel road, never within reach
  const SpatialIndex index{pts};
  const auto r = validate_candidate({0, 0}, index, params_with_seed(),
                                    AnnulusSpec{30, 25}, 1);
  CHECK(r.road_count == 2);  // the parallel road's clusters are filtered out
  CHECK_FALSE(r.valid);
}

TEST_CASE("validate: empty surroundings give (false, 0)") {
  const SpatialIndex index{std::vector<LocalCoord>{{1000, 1000}}};
  const auto r = validate_candidate({0, 0}, index, params_with_seed(),
                                    AnnulusSpec{30, 25}, 1);
  CHECK_FALSE(r.valid);
  CHECK(r.road_count == 0);
}

TEST_CASE("validate: invariant under rigid motion") {
  std::vector<LocalCoord> base;
  add_line(base, {-100, 0}, {100, 0});
  add_line(base, {0, 0}, {0, -100});
  add_line(base, {0, 0}, {70, 70});
  const double angle = 0.83;
  const LocalCoord shift{311.0, -207.0};
  std::vector<LocalCoord> moved;
  for (const auto& p : base) {
    moved.push_back({p.x * std::cos(angle) - p.y * std::sin(angle) + shift.x,
                     p.x * std::sin(angle) + p.y * std::cos(angle) + shift.y});
  }
  const auto r0 = validate_candidate({0, 0}, SpatialIndex{base}, params_with_seed(),
                                     AnnulusSpec{30, 25}, 1);
  const auto r1 = validate_candidate(shift, SpatialIndex{moved}, params_with_seed(),
                                     AnnulusSpec{30, 25}, 1);
  CHECK(r0.road_count == r1.road_count);
  CHECK(r0.valid == r1.valid);
}

TEST_CASE("validate: subsampling is deterministic in the seed") {
  std::vector<LocalCoord> pts;
  add_line(pts, {-120, 0}, {120, 0}, 8);
  add_line(pts, {0, -120}, {0, 120}, 8);
  REQUIRE(pts.size() > 1000);
  ValidationParams p = params_with_seed(42);
  const SpatialIndex index{pts};
  const auto a = validate_candidate({0, 0}, index, p, AnnulusSpec{30, 25}, 99);
  const auto b = validate_candidate({0, 0}, index, p, AnnulusSpec{30, 25}, 99);
  CHECK(a.road_count == b.road_count);
  REQUIRE(a.clusters.size() == b.clusters.size());
  for (std::size_t i = 0; i < a.clusters.size(); ++i) {
    CHECK(a.clusters[i].points.size() == b.clusters[i].points.size());
  }
}

TEST_CASE("validate_all: any accepting radius suffices") {
  // Legs reach only 80 m, so the [100, 125] annulus is empty, but the
  // [30, 55] one sees all three roads.
  std::vector<LocalCoord> pts;
  add_line(pts, {-80, 0}, {80, 0});
  add_line(pts, {0, 0}, {0, -80});
  const SpatialIndex index{pts};
  const auto outcome =
      validate_all({{0, 0}}, index, params_with_seed(), 15.0, 1);
  REQUIRE(outcome.intersections.size() == 1);
  CHECK(outcome.intersections[0].outgoing_roads == 3);
  CHECK(outcome.intersections[0].validated_at == std::vector<double>{30.0});
}

TEST_CASE("validate_all: candidates failing every radius are dropped") {
  std::vector<LocalCoord> pts;
  add_line(pts, {-200, 0}, {200, 0});
  const SpatialIndex index{pts};
  const auto outcome =
      validate_all({{0, 0}, {50, 0}}, index, params_with_seed(), 15.0, 1);
  CHECK(outcome.intersections.empty());
  REQUIRE(outcome.details.size() == 2);
  CHECK_FALSE(outcome.details[0].accepted);
}

TEST_CASE("validate_all: nearby accepted candidates merge by centroid") {
  std::vector<LocalCoord> pts;
  add_line(pts, {-150, 0}, {150, 0});
  add_line(pts, {0, -150}, {0, 150});
  const SpatialIndex index{pts};
  const auto outcome =
      validate_all({{-4, 0}, {4, 0}}, index, params_with_seed(), 15.0, 1);
  REQUIRE(outcome.intersections.size() == 1);
  CHECK(outcome.intersections[0].position.x == doctest::Approx(0.0));
  CHECK(outcome.intersections[0].outgoing_roads == 4);
}

}  // TEST_SUITE
