#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rgg/action_nodes.hpp"
#include "rgg/eval.hpp"
#include "rgg/heading_grid.hpp"
#include "rgg/intersections.hpp"
#include "rgg/roads.hpp"
#include "rgg/synth.hpp"
#include "rgg/trips.hpp"

namespace rgg {

struct SynthConfig {
  int n_intersections = 6;
  int n_load = 3;
  int n_dump = 2;
  int n_trips = 300;
  double area_w_m = 900.0;
  double area_h_m = 900.0;
  double cadence_s = 2.0;
  SpeedModel speed{};
  NoiseModel noise{};
};

struct EvalConfig {
  std::vector<double> tolerances_m{10.0, 20.0, 30.0, 40.0, 50.0};
  MatchStrategy strategy = MatchStrategy::kGreedy;
};

// Every tunable of every stage, with the published defaults. Parsed from a
// flat sectioned key=value file; unknown sections or keys are rejected.
struct AppConfig {
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = all hardware threads
  PreprocessParams preprocess{};
  double grid_cell_size_m = 5.0;
  CandidateParams candidates{};
  ValidationParams validation{};
  ActionParams action{};
  RoadParams roads{};
  EvalConfig eval{};
  SynthConfig synth{};
};

AppConfig default_config();

// Throws ConfigError (with a line reference) on unknown keys, bad values, or
// violated parameter invariants.
AppConfig parse_config(std::istream& in);
AppConfig load_config_file(const std::string& path);

void validate_config(const AppConfig& config);

}  // namespace rgg
