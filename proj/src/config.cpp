#include "rgg/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "rgg/errors.hpp"

namespace rgg {

AppConfig default_config() { return AppConfig{}; }

namespace {

std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double to_double(const std::string& v, std::size_t line) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end == nullptr || *end != '\0' || !std::isfinite(d)) {
    throw ConfigError("bad numeric value '" + v + "' (line " + std::to_string(line) + ")");
  }
  return d;
}

long to_int(const std::string& v, std::size_t line) {
  char* end = nullptr;
  const long d = std::strtol(v.c_str(), &end, 10);
  if (end == nullptr || *end != '\0') {
    throw ConfigError("bad integer value '" + v + "' (line " + std::to_string(line) + ")");
  }
  return d;
}

bool to_bool(const std::string& v, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("bad boolean value '" + v + "' (line " + std::to_string(line) + ")");
}

std::vector<double> to_double_list(const std::string& v, std::size_t line) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = strip(item);
    if (!item.empty()) out.push_back(to_double(item, line));
  }
  return out;
}

std::vector<TunnelZone> to_tunnels(const std::string& v, std::size_t line) {
  std::vector<TunnelZone> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = strip(item);
    if (item.empty()) continue;
    const auto parts = to_double_list(item, line);
    if (parts.size() != 3) {
      throw ConfigError("tunnel zones need x,y,radius triples (line " +
                        std::to_string(line) + ")");
    }
    out.push_back(TunnelZone{LocalCoord{parts[0], parts[1]}, parts[2]});
  }
  return out;
}

}  // namespace

AppConfig parse_config(std::istream& in) {
  AppConfig cfg = default_config();
  std::string thr_unit = "field";
  std::vector<double> radii{30.0, 100.0};
  std::vector<double> widths{25.0};

  using Setter = std::function<void(AppConfig&, const std::string&, std::size_t)>;
  const std::map<std::string, Setter> setters = {
      {"run.seed", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.seed = static_cast<std::uint64_t>(to_int(v, l));
       }},
      {"run.workers", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.workers = static_cast<int>(to_int(v, l));
       }},
      {"preprocess.endpoint_trim_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.preprocess.endpoint_trim_m = to_double(v, l);
       }},
      {"preprocess.spline_degree", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.preprocess.spline_degree = static_cast<int>(to_int(v, l));
       }},
      {"preprocess.interp_spacing_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.preprocess.interp_spacing_m = to_double(v, l);
       }},
      {"preprocess.min_points", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.preprocess.min_points = static_cast<std::size_t>(to_int(v, l));
       }},
      {"preprocess.idle_split_s", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.preprocess.idle_split_s = to_double(v, l);
       }},
      {"preprocess.jump_split_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.preprocess.jump_split_m = to_double(v, l);
       }},
      {"preprocess.turn_split_deg", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.preprocess.turn_split_rad = deg2rad(to_double(v, l));
       }},
      {"grid.cell_size_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.grid_cell_size_m = to_double(v, l);
       }},
      {"candidates.dissimilarity_thr", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.candidates.dissimilarity_thr = to_double(v, l);
       }},
      {"candidates.neighbor_radius_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.candidates.neighbor_radius_m = to_double(v, l);
       }},
      {"candidates.merge_radius_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.candidates.merge_radius_m = to_double(v, l);
       }},
      {"validation.max_points", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.validation.max_points = static_cast<std::size_t>(to_int(v, l));
       }},
      {"validation.passing_eps_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.validation.passing_eps_m = to_double(v, l);
       }},
      {"validation.passing_min_samples", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.validation.passing_min_samples = static_cast<int>(to_int(v, l));
       }},
      {"validation.passing_radius_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.validation.passing_radius_m = to_double(v, l);
       }},
      {"validation.ext_cluster_dist_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.validation.ext_cluster_dist_m = to_double(v, l);
       }},
      {"validation.ext_cluster_min_size", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.validation.ext_cluster_min_size = static_cast<int>(to_int(v, l));
       }},
      {"action_nodes.merge_radius_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.action.merge_radius_m = to_double(v, l);
       }},
      {"action_nodes.dropoff_eps_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.action.dropoff_eps_m = to_double(v, l);
       }},
      {"action_nodes.dropoff_min_samples", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.action.dropoff_min_samples = static_cast<int>(to_int(v, l));
       }},
      {"action_nodes.trim_fraction", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.action.trim_fraction = to_double(v, l);
       }},
      {"roads.node_radius_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.roads.node_radius_m = to_double(v, l);
       }},
      {"roads.cluster_eps_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.roads.cluster_eps_m = to_double(v, l);
       }},
      {"roads.cluster_min_samples", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.roads.cluster_min_samples = static_cast<int>(to_int(v, l));
       }},
      {"roads.trim_margin_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.roads.trim_margin_m = to_double(v, l);
       }},
      {"roads.random_representative", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.roads.random_representative = to_bool(v, l);
       }},
      {"eval.tolerances_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.eval.tolerances_m = to_double_list(v, l);
       }},
      {"eval.strategy", [](AppConfig& c, const std::string& v, std::size_t l) {
         if (v == "greedy") {
           c.eval.strategy = MatchStrategy::kGreedy;
         } else if (v == "hungarian") {
           c.eval.strategy = MatchStrategy::kHungarian;
         } else {
           throw ConfigError("unknown eval.strategy '" + v + "' (line " +
                             std::to_string(l) + ")");
         }
       }},
      {"synth.n_intersections", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.n_intersections = static_cast<int>(to_int(v, l));
       }},
      {"synth.n_load", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.n_load = static_cast<int>(to_int(v, l));
       }},
      {"synth.n_dump", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.n_dump = static_cast<int>(to_int(v, l));
       }},
      {"synth.n_trips", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.n_trips = static_cast<int>(to_int(v, l));
       }},
      {"synth.area_w_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.area_w_m = to_double(v, l);
       }},
      {"synth.area_h_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.area_h_m = to_double(v, l);
       }},
      {"synth.cadence_s", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.cadence_s = to_double(v, l);
       }},
      {"synth.speed_median_kmh", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.speed.median_kmh = to_double(v, l);
       }},
      {"synth.speed_mean_kmh", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.speed.mean_kmh = to_double(v, l);
       }},
      {"synth.speed_cap_kmh", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.speed.cap_kmh = to_double(v, l);
       }},
      {"synth.jitter_sigma_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.noise.jitter_sigma_m = to_double(v, l);
       }},
      {"synth.dropout_prob", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.noise.dropout_prob = to_double(v, l);
       }},
      {"synth.endpoint_noise_m", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.noise.endpoint_noise_m = to_double(v, l);
       }},
      {"synth.tunnel_zones", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.noise.tunnels = to_tunnels(v, l);
       }},
      {"synth.tunnel_trip_fraction", [](AppConfig& c, const std::string& v, std::size_t l) {
         c.synth.noise.tunnel_trip_fraction = to_double(v, l);
       }},
  };

  std::string section;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string::size_type hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = strip(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("unterminated section header (line " + std::to_string(line_no) + ")");
      }
      section = strip(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value (line " + std::to_string(line_no) + ")");
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    const std::string full = section.empty() ? key : section + "." + key;

    // Keys needing deferred assembly.
    if (full == "candidates.dissimilarity_thr_unit") {
      if (value != "field" && value != "deg") {
        throw ConfigError("dissimilarity_thr_unit must be field or deg (line " +
                          std::to_string(line_no) + ")");
      }
      thr_unit = value;
      continue;
    }
    if (full == "validation.radii_m") {
      radii = to_double_list(value, line_no);
      continue;
    }
    if (full == "validation.widths_m") {
      widths = to_double_list(value, line_no);
      continue;
    }

    const auto it = setters.find(full);
    if (it == setters.end()) {
      throw ConfigError("unknown configuration key '" + full + "' (line " +
                        std::to_string(line_no) + ")");
    }
    it->second(cfg, value, line_no);
  }

  if (thr_unit == "deg") {
    cfg.candidates.dissimilarity_thr = deg2rad(cfg.candidates.dissimilarity_thr);
  }
  if (radii.empty()) throw ConfigError("validation.radii_m must not be empty");
  if (widths.size() != 1 && widths.size() != radii.size()) {
    throw ConfigError("validation.widths_m needs one value or one per radius");
  }
  cfg.validation.radii.clear();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    cfg.validation.radii.push_back(
        AnnulusSpec{radii[i], widths.size() == 1 ? widths[0] : widths[i]});
  }
  cfg.validation.seed = cfg.seed;
  cfg.roads.seed = cfg.seed;

  validate_config(cfg);
  return cfg;
}

AppConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

void validate_config(const AppConfig& cfg) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid configuration: " + what);
  };
  require(cfg.workers >= 0, "run.workers must be >= 0");
  require(cfg.preprocess.endpoint_trim_m >= 0.0, "preprocess.endpoint_trim_m must be >= 0");
  require(cfg.preprocess.spline_degree >= 1, "preprocess.spline_degree must be >= 1");
  require(cfg.preprocess.interp_spacing_m > 0.0, "preprocess.interp_spacing_m must be > 0");
  require(cfg.preprocess.min_points >= 2, "preprocess.min_points must be >= 2");
  require(cfg.preprocess.idle_split_s > 0.0, "preprocess.idle_split_s must be > 0");
  require(cfg.preprocess.jump_split_m > 0.0, "preprocess.jump_split_m must be > 0");
  require(cfg.preprocess.turn_split_rad >= 0.0, "preprocess.turn_split_deg must be >= 0");
  require(cfg.grid_cell_size_m > 0.0, "grid.cell_size_m must be > 0");
  require(cfg.candidates.dissimilarity_thr > 0.0, "candidates.dissimilarity_thr must be > 0");
  require(cfg.candidates.neighbor_radius_m >= cfg.grid_cell_size_m,
          "candidates.neighbor_radius_m must be >= grid.cell_size_m");
  require(cfg.candidates.merge_radius_m > 0.0, "candidates.merge_radius_m must be > 0");
  for (const auto& a : cfg.validation.radii) {
    require(a.inner_radius_m > 0.0 && a.width_m > 0.0,
            "validation radii and widths must be > 0");
  }
  require(cfg.validation.passing_eps_m > 0.0, "validation.passing_eps_m must be > 0");
  require(cfg.validation.passing_min_samples >= 1,
          "validation.passing_min_samples must be >= 1");
  require(cfg.validation.passing_radius_m > 0.0, "validation.passing_radius_m must be > 0");
  require(cfg.validation.ext_cluster_dist_m > 0.0,
          "validation.ext_cluster_dist_m must be > 0");
  require(cfg.validation.ext_cluster_min_size >= 1,
          "validation.ext_cluster_min_size must be >= 1");
  require(cfg.validation.max_points >= 1, "validation.max_points must be >= 1");
  require(cfg.action.merge_radius_m > 0.0, "action_nodes.merge_radius_m must be > 0");
  require(cfg.action.dropoff_eps_m > 0.0, "action_nodes.dropoff_eps_m must be > 0");
  require(cfg.action.dropoff_min_samples >= 1,
          "action_nodes.dropoff_min_samples must be >= 1");
  require(cfg.action.trim_fraction >= 0.0 && cfg.action.trim_fraction < 0.5,
          "action_nodes.trim_fraction must be in [0, 0.5)");
  require(cfg.roads.node_radius_m > 0.0, "roads.node_radius_m must be > 0");
  require(cfg.roads.cluster_eps_m > 0.0, "roads.cluster_eps_m must be > 0");
  require(cfg.roads.cluster_min_samples >= 1, "roads.cluster_min_samples must be >= 1");
  require(cfg.roads.trim_margin_m >= 0.0, "roads.trim_margin_m must be >= 0");
  for (std::size_t i = 1; i < cfg.eval.tolerances_m.size(); ++i) {
    require(cfg.eval.tolerances_m[i] > cfg.eval.tolerances_m[i - 1],
            "eval.tolerances_m must be strictly increasing");
  }
  require(cfg.synth.n_trips >= 0, "synth.n_trips must be >= 0");
  require(cfg.synth.cadence_s > 0.0, "synth.cadence_s must be > 0");
  require(cfg.synth.noise.dropout_prob >= 0.0 && cfg.synth.noise.dropout_prob <= 1.0,
          "synth.dropout_prob must be in [0, 1]");
  require(cfg.synth.noise.tunnel_trip_fraction >= 0.0 &&
              cfg.synth.noise.tunnel_trip_fraction <= 1.0,
          "synth.tunnel_trip_fraction must be in [0, 1]");
}

}  // namespace rgg
