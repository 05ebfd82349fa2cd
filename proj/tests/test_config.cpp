#include <doctest.h>

#include <sstream>

#include "rgg/config.hpp"
#include "rgg/errors.hpp"

using namespace rgg;

TEST_SUITE("config") {

TEST_CASE("golden defaults match the published parameter tables") {
  const AppConfig c = default_config();
  // Data preprocessing.
  CHECK(c.preprocess.endpoint_trim_m == 100.0);
  CHECK(c.preprocess.spline_degree == 1);
  CHECK(c.preprocess.interp_spacing_m == 5.0);
  CHECK(c.preprocess.min_points == 10);
  CHECK(c.preprocess.idle_split_s == 300.0);  // 5 minutes
  CHECK(c.preprocess.jump_split_m == 2000.0);
  CHECK(c.preprocess.turn_split_rad == 0.0);  // disabled
  // Heading histogram.
  CHECK(c.grid_cell_size_m == 5.0);
  // Candidate identification.
  CHECK(c.candidates.neighbor_radius_m == 20.0);
  CHECK(c.candidates.dissimilarity_thr == 1.4);
  CHECK(c.candidates.merge_radius_m == 15.0);
  // Validation.
  REQUIRE(c.validation.radii.size() == 2);
  CHECK(c.validation.radii[0].inner_radius_m == 30.0);
  CHECK(c.validation.radii[0].width_m == 25.0);
  CHECK(c.validation.radii[1].inner_radius_m == 100.0);
  CHECK(c.validation.radii[1].width_m == 25.0);
  CHECK(c.validation.max_points == 1000);
  CHECK(c.validation.passing_eps_m == 12.0);
  CHECK(c.validation.passing_min_samples == 5);
  CHECK(c.validation.passing_radius_m == 15.0);
  CHECK(c.validation.ext_cluster_dist_m == 20.0);
  CHECK(c.validation.ext_cluster_min_size == 5);
  // Loading and drop-off nodes.
  CHECK(c.action.merge_radius_m == 100.0);
  // Road inference.
  CHECK(c.roads.node_radius_m == 30.0);
  CHECK(c.roads.cluster_eps_m == 15.0);
  CHECK(c.roads.cluster_min_samples == 5);
}

TEST_CASE("parse: empty file keeps the defaults") {
  std::istringstream in("");
  const AppConfig c = parse_config(in);
  CHECK(c.preprocess.endpoint_trim_m == 100.0);
  CHECK(c.validation.radii.size() == 2);
}

TEST_CASE("parse: overrides land in the right fields") {
  std::istringstream in(
      "[run]\n"
      "seed = 42\n"
      "workers = 3\n"
      "[preprocess]\n"
      "interp_spacing_m = 2.5\n"
      "[candidates]\n"
      "dissimilarity_thr = 2.0\n"
      "[validation]\n"
      "radii_m = 25, 60, 120\n"
      "widths_m = 20\n"
      "[roads]\n"
      "random_representative = true\n");
  const AppConfig c = parse_config(in);
  CHECK(c.seed == 42);
  CHECK(c.workers == 3);
  CHECK(c.preprocess.interp_spacing_m == 2.5);
  CHECK(c.candidates.dissimilarity_thr == 2.0);
  REQUIRE(c.validation.radii.size() == 3);
  CHECK(c.validation.radii[1].inner_radius_m == 60.0);
  CHECK(c.validation.radii[2].width_m == 20.0);
  CHECK(c.roads.random_representative);
  CHECK(c.validation.seed == 42);  // the global seed reaches the stages
}

TEST_CASE("parse: the threshold may be given in degrees") {
  std::istringstream in(
      "[candidates]\n"
      "dissimilarity_thr = 90\n"
      "dissimilarity_thr_unit = deg\n");
  const AppConfig c = parse_config(in);
  CHECK(c.candidates.dissimilarity_thr == doctest::Approx(kPi / 2));
}

TEST_CASE("parse: unknown keys are rejected") {
  std::istringstream in("[preprocess]\ntypo_key = 1\n");
  CHECK_THROWS_AS(parse_config(in), ConfigError);
}

TEST_CASE("parse: unknown sections are rejected") {
  std::istringstream in("[nosuch]\nendpoint_trim_m = 1\n");
  CHECK_THROWS_AS(parse_config(in), ConfigError);
}

TEST_CASE("parse: invariant violations are rejected") {
  {
    std::istringstream in("[preprocess]\nmin_points = 1\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  }
  {
    std::istringstream in("[preprocess]\ninterp_spacing_m = -5\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  }
  {
    std::istringstream in("[action_nodes]\ntrim_fraction = 0.5\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  }
  {
    std::istringstream in("[eval]\ntolerances_m = 30,20\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  }
}

TEST_CASE("parse: comments and blank lines are fine") {
  std::istringstream in(
      "# full-line comment\n"
      "\n"
      "[run]\n"
      "seed = 7   # trailing comment\n");
  CHECK(parse_config(in).seed == 7);
}

TEST_CASE("parse: bad numbers carry the line number") {
  std::istringstream in("[run]\nseed = banana\n");
  try {
    parse_config(in);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

}  // TEST_SUITE
