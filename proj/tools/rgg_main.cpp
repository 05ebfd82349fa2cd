#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rgg/config.hpp"
#include "rgg/errors.hpp"
#include "rgg/eval.hpp"
#include "rgg/graph_io.hpp"
#include "rgg/log.hpp"
#include "rgg/pipeline.hpp"
#include "rgg/plot.hpp"
#include "rgg/synth.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::int64_t seed = -1;  // -1: keep the config value
  int workers = -1;
};

rgg::AppConfig load_config(const CommonOpts& opts) {
  rgg::AppConfig cfg =
      opts.config_path.empty() ? rgg::default_config() : rgg::load_config_file(opts.config_path);
  if (opts.seed >= 0) {
    cfg.seed = static_cast<std::uint64_t>(opts.seed);
    cfg.validation.seed = cfg.seed;
    cfg.roads.seed = cfg.seed;
  }
  if (opts.workers >= 0) cfg.workers = opts.workers;
  rgg::validate_config(cfg);
  return cfg;
}

rgg::TripFormat format_of(const std::string& path) {
  return path.size() >= 6 && path.substr(path.size() - 6) == ".jsonl"
             ? rgg::TripFormat::kJsonl
             : rgg::TripFormat::kCsv;
}

std::vector<rgg::Trip> read_trips(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rgg::DataError("cannot open input file: " + path);
  auto parsed = rgg::parse_updates(in, format_of(path));
  return std::move(parsed.trips);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rgg::DataError("cannot write " + path.string());
  out << content;
}

// Labels: either lat,lon or local x,y rows. Geographic labels are projected
// into the graph's local frame.
std::vector<rgg::LocalCoord> read_labels(const std::string& path, const rgg::GeoCoord& origin) {
  std::ifstream in(path);
  if (!in) throw rgg::DataError("cannot open labels file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw rgg::DataError("empty labels file: " + path);
  while (!header.empty() && (header.back() == '\r' || header.back() == ' ')) header.pop_back();
  const bool geographic = header == "lat,lon";
  if (!geographic && header != "x,y") {
    throw rgg::DataError("labels file must start with lat,lon or x,y");
  }
  std::vector<rgg::LocalCoord> labels;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double a = 0.0, b = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%lf", &a, &b) != 2) {
      throw rgg::ParseError("bad label row", line_no);
    }
    labels.push_back(geographic ? rgg::to_local(rgg::GeoCoord{a, b}, origin)
                                : rgg::LocalCoord{a, b});
  }
  return labels;
}

std::vector<rgg::LocalCoord> read_zone(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rgg::DataError("cannot open zone file: " + path);
  std::vector<rgg::LocalCoord> poly;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "x,y") continue;
    double x = 0.0, y = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%lf", &x, &y) == 2) {
      poly.push_back(rgg::LocalCoord{x, y});
    }
  }
  return poly;
}

void export_graph_files(const rgg::RoadGraph& graph, const fs::path& dir,
                        const std::string& format) {
  {
    std::ostringstream s;
    rgg::write_geojson(s, graph);
    write_file(dir / "graph.geojson", s.str());
  }
  if (format == "dot") {
    std::ostringstream s;
    rgg::write_dot(s, graph);
    write_file(dir / "graph.dot", s.str());
  } else if (format == "csv") {
    std::ostringstream nodes, edges;
    rgg::write_nodes_csv(nodes, graph);
    rgg::write_edges_csv(edges, graph);
    write_file(dir / "nodes.csv", nodes.str());
    write_file(dir / "edges.csv", edges.str());
  }
}

int cmd_infer(const CommonOpts& opts, const std::string& input,
              const std::string& format, bool debug) {
  const rgg::AppConfig cfg = load_config(opts);
  auto trips = read_trips(input);
  const rgg::PipelineResult result = rgg::run_pipeline(std::move(trips), cfg);

  fs::create_directories(opts.out_dir);
  export_graph_files(result.graph, opts.out_dir, format);
  {
    std::ostringstream s;
    rgg::write_report(s, result, cfg);
    write_file(fs::path(opts.out_dir) / "report.txt", s.str());
  }
  if (debug) {
    std::ostringstream grid_csv;
    rgg::write_grid_csv(grid_csv, result.grid, result.field);
    write_file(fs::path(opts.out_dir) / "grid.csv", grid_csv.str());
    std::ostringstream cand;
    rgg::write_candidates_debug_json(cand, result.validation);
    write_file(fs::path(opts.out_dir) / "candidates_debug.json", cand.str());
  }
  std::cout << "inferred " << result.graph.nodes.size() << " nodes and "
            << result.graph.edges.size() << " edges -> " << opts.out_dir << "\n";
  return 0;
}

int cmd_eval(const std::string& pred_path, const std::string& labels_path,
             const std::string& out_path, const std::vector<double>& tolerances,
             const std::string& strategy_name, const std::string& zone_path) {
  std::ifstream pred_in(pred_path);
  if (!pred_in) throw rgg::DataError("cannot open predicted graph: " + pred_path);
  const rgg::RoadGraph graph = rgg::read_geojson(pred_in);

  std::vector<rgg::LocalCoord> predicted;
  for (const auto& node : graph.nodes) {
    if (node.kind == rgg::NodeKind::kIntersection) predicted.push_back(node.local);
  }
  std::vector<rgg::LocalCoord> actual = read_labels(labels_path, graph.origin);

  if (!zone_path.empty()) {
    const auto zone = read_zone(zone_path);
    predicted = rgg::filter_in_polygon(predicted, zone);
    actual = rgg::filter_in_polygon(actual, zone);
  }

  const rgg::MatchStrategy strategy = strategy_name == "hungarian"
                                          ? rgg::MatchStrategy::kHungarian
                                          : rgg::MatchStrategy::kGreedy;
  const auto curve = rgg::pr_curve(predicted, actual, tolerances, strategy);
  std::ostringstream s;
  rgg::write_pr_csv(s, curve);
  if (out_path == "-") {
    std::cout << s.str();
  } else {
    write_file(out_path, s.str());
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_synth(const CommonOpts& opts) {
  const rgg::AppConfig cfg = load_config(opts);
  rgg::SiteScenario scenario;
  scenario.seed = cfg.seed == 0 ? 1 : cfg.seed;
  scenario.ground_truth =
      rgg::generate_site(scenario.seed, cfg.synth.n_intersections, cfg.synth.n_load,
                         cfg.synth.n_dump, cfg.synth.area_w_m, cfg.synth.area_h_m);
  scenario.n_trips = cfg.synth.n_trips;
  scenario.cadence_s = cfg.synth.cadence_s;
  scenario.speed = cfg.synth.speed;
  scenario.noise = cfg.synth.noise;
  const auto trips = rgg::simulate_trips(scenario);

  fs::create_directories(opts.out_dir);
  {
    std::ostringstream s;
    rgg::write_trips_csv(s, trips);
    write_file(fs::path(opts.out_dir) / "trips.csv", s.str());
  }
  {
    std::ostringstream s;
    rgg::write_labels_csv(s, scenario.ground_truth);
    write_file(fs::path(opts.out_dir) / "labels.csv", s.str());
  }
  {
    std::ostringstream s;
    rgg::write_geojson(s, scenario.ground_truth);
    write_file(fs::path(opts.out_dir) / "ground_truth.geojson", s.str());
  }
  std::cout << "wrote " << trips.size() << " trips to " << opts.out_dir << "\n";
  return 0;
}

int cmd_export(const std::string& input, const std::string& format,
               const std::string& out_dir) {
  std::ifstream in(input);
  if (!in) throw rgg::DataError("cannot open graph: " + input);
  const rgg::RoadGraph graph = rgg::read_geojson(in);
  fs::create_directories(out_dir);
  export_graph_files(graph, out_dir, format);
  std::cout << "exported to " << out_dir << "\n";
  return 0;
}

int cmd_plot(const CommonOpts& opts, const std::string& input, const std::string& out_path) {
  const rgg::AppConfig cfg = load_config(opts);
  auto trips = read_trips(input);
  const rgg::PipelineResult result = rgg::run_pipeline(std::move(trips), cfg);
  rgg::PlotInputs inputs;
  inputs.trips = &result.prepared;
  inputs.grid = &result.grid;
  inputs.field = &result.field;
  inputs.candidates = &result.candidates;
  inputs.graph = &result.graph;
  std::ostringstream s;
  rgg::write_site_svg(s, inputs);
  write_file(out_path, s.str());
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"road graph inference from construction-vehicle GPS logs"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string input, format = "geojson", out_path;
  bool debug = false;

  auto add_common = [&](CLI::App* cmd, bool with_out_dir = true) {
    cmd->add_option("--config", common.config_path, "configuration file");
    cmd->add_option("--seed", common.seed, "override the global seed");
    cmd->add_option("--workers", common.workers, "worker threads (1 = reference path)");
    if (with_out_dir) cmd->add_option("--out", common.out_dir, "output directory");
  };

  auto* infer = app.add_subcommand("infer", "infer a road graph from trips");
  infer->add_option("--in", input, "trips file (.csv or .jsonl)")->required();
  infer->add_option("--format", format, "extra export format")
      ->check(CLI::IsMember({"geojson", "dot", "csv"}));
  infer->add_flag("--debug", debug, "write grid and validation debug files");
  add_common(infer);

  std::string labels_path, zone_path, strategy = "greedy";
  std::vector<double> tolerances{10, 20, 30, 40, 50};
  auto* eval = app.add_subcommand("eval", "precision/recall against labeled intersections");
  eval->add_option("--pred", input, "predicted graph (GeoJSON)")->required();
  eval->add_option("--labels", labels_path, "labels CSV (lat,lon or x,y)")->required();
  eval->add_option("--out", out_path, "output CSV path ('-' for stdout)")->required();
  eval->add_option("--tolerances", tolerances, "tolerance radii in meters")
      ->delimiter(',');
  eval->add_option("--strategy", strategy, "matching strategy")
      ->check(CLI::IsMember({"greedy", "hungarian"}));
  eval->add_option("--zone", zone_path, "bounding polygon CSV to scope the evaluation");

  auto* synth = app.add_subcommand("synth", "generate a synthetic site and trips");
  add_common(synth);

  auto* exp = app.add_subcommand("export", "convert a graph file");
  exp->add_option("--in", input, "graph GeoJSON")->required();
  exp->add_option("--format", format, "target format")
      ->check(CLI::IsMember({"geojson", "dot", "csv"}))
      ->required();
  exp->add_option("--out", common.out_dir, "output directory");

  auto* plot = app.add_subcommand("plot", "run inference and render a debug SVG");
  plot->add_option("--in", input, "trips file (.csv or .jsonl)")->required();
  plot->add_option("--svg", out_path, "output SVG path")->required();
  add_common(plot, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (infer->parsed()) return cmd_infer(common, input, format, debug);
    if (eval->parsed()) {
      return cmd_eval(input, labels_path, out_path, tolerances, strategy, zone_path);
    }
    if (synth->parsed()) return cmd_synth(common);
    if (exp->parsed()) return cmd_export(input, format, common.out_dir);
    if (plot->parsed()) return cmd_plot(common, input, out_path);
  } catch (const rgg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rgg::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
