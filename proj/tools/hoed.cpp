#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hoed/config.hpp"
#include "hoed/elasticity.hpp"
#include "hoed/error.hpp"
#include "hoed/io.hpp"
#include "hoed/pipeline.hpp"
#include "hoed/svg.hpp"
#include "hoed/synthetic.hpp"
#include "hoed/text.hpp"

namespace {

using namespace hoed;

void emit(const std::optional<std::string>& out, const std::string& content) {
  if (out) text::write_file(*out, content);
  else std::cout << content;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed, int jobs,
            const std::optional<std::string>& region_map, const std::optional<std::string>& out_dir) {
  auto config = load_run_config(config_path);
  if (seed) {
    if (!config.synthetic) throw Error(ErrorKind::Config, "--seed applies only to synthetic inputs");
    config.synthetic->seed = *seed;
  }
  if (region_map) config.region_map_path = *region_map;
  if (out_dir) config.output_directory = *out_dir;
  RunOptions options;
  options.jobs = jobs;
  const auto bundle = run_pipeline(config, options);
  std::cout << "bundle " << bundle.directory << "\n";
  std::cout << "config_hash " << bundle.config_hash << "\n";
  std::cout << "selected_window " << bundle.selected_window << "\n";
  for (const auto& s : bundle.stages) {
    std::cout << "stage " << s.name << " " << s.status;
    if (!s.message.empty()) std::cout << " (" << s.message << ")";
    std::cout << "\n";
  }
  std::cout << "files " << bundle.files.size() + 1 << "\n";
  return 0;
}

int cmd_simulate(const std::string& spec_path, const std::string& out, std::optional<std::uint64_t> seed) {
  auto spec = parse_synthetic_spec(text::read_file(spec_path));
  if (seed) spec.seed = *seed;
  if (spec.kind == SyntheticSpec::Kind::Oscillator) {
    std::string csv = text::csv_row({"k", "t", "epsilon"});
    for (const auto& p : generate_oscillator(spec))
      csv += text::csv_row({std::to_string(p.year), text::format_real(p.year * spec.dt), text::format_real(p.value)});
    text::write_file(out, csv);
  } else {
    text::write_file(out, write_panel_csv(generate_panel(spec)));
  }
  return 0;
}

struct WindowsArgs {
  std::string input;
  std::string x = "gdp";
  std::string y = "co2";
  std::string entity_column = "entity";
  std::string year_column = "year";
  std::vector<int> candidates{3, 5, 7, 10, 15};
  double floor = kDefaultOverfitFloor;
  int min_segment = 10;
  bool no_log = false;
  std::optional<std::string> out;
};

int cmd_windows(const WindowsArgs& a) {
  RunConfig c;
  c.input_path = a.input;
  c.schema.entity_column = a.entity_column;
  c.schema.year_column = a.year_column;
  c.x_variable = a.x;
  c.y_variable = a.y;
  c.log_inputs = !a.no_log;
  c.min_segment_length = a.min_segment;
  c.region_map_path = "none";
  const auto panel = load_config_panel(c);
  const auto xv = c.log_inputs ? "log_" + a.x : a.x;
  const auto yv = c.log_inputs ? "log_" + a.y : a.y;
  std::vector<PairedSegment> segments;
  for (auto& s : paired_segments(panel, xv, yv))
    if (static_cast<int>(s.x.size()) >= a.min_segment) segments.push_back(std::move(s));
  if (segments.empty()) throw Error(ErrorKind::InsufficientData, "no segment reaches the minimum length");
  emit(a.out, io::to_json(score_windows(segments, a.candidates, a.floor)).dump(2) + "\n");
  return 0;
}

io::Json read_json(const std::string& path) {
  try {
    return io::Json::parse(text::read_file(path));
  } catch (const io::Json::exception& e) {
    throw Error(ErrorKind::Schema, path + ": " + e.what());
  }
}

const io::Json& pick(const io::Json& j, const std::optional<std::string>& id, const std::string& what) {
  if (!j.is_object() || j.empty()) throw Error(ErrorKind::EmptyPlot, "bundle has no " + what);
  if (!id) return j.begin().value();
  if (!j.contains(*id)) throw Error(ErrorKind::Lookup, "no " + what + " for id '" + *id + "'");
  return j.at(*id);
}

int cmd_plot(const std::string& bundle, const std::string& kind_name, const std::optional<std::string>& id,
             const std::optional<std::string>& out) {
  const auto kind = svg::parse_plot_kind(kind_name);
  const auto file = [&](const std::string& name) { return bundle + "/" + name; };
  svg::PlotArtifact artifact;
  switch (kind) {
    case svg::PlotKind::Elasticity: {
      auto series = io::read_elasticity_csv(text::read_file(file("elasticity.csv")));
      if (id) std::erase_if(series, [&](const ElasticitySeries& s) { return s.entity != *id; });
      artifact = std::move(series);
      break;
    }
    case svg::PlotKind::Indicators: {
      auto frames = io::read_indicators_csv(text::read_file(file("indicators.csv")));
      if (id) std::erase_if(frames, [&](const IndicatorFrame& f) { return f.entity != *id; });
      artifact = std::move(frames);
      break;
    }
    case svg::PlotKind::Phase: {
      auto traj = io::read_phase_csv(text::read_file(file("phase.csv")));
      const auto config = parse_run_config(text::read_file(file("config.ini")), bundle);
      for (auto& t : traj) {
        t.embedding = config.embedding;
        t.standardized = config.standardize;
      }
      if (id) std::erase_if(traj, [&](const PhaseTrajectory& t) { return t.id != *id; });
      artifact = std::move(traj);
      break;
    }
    case svg::PlotKind::Scalogram: {
      const auto j = read_json(file("scalogram.json"));
      const auto& entry = pick(j, id, "scalogram");
      auto sg = io::scalogram_from_json(entry);
      sg.id = id ? *id : j.begin().key();
      artifact = std::move(sg);
      break;
    }
    case svg::PlotKind::Persistence: {
      const auto j = read_json(file("persistence.json"));
      const auto pd = io::persistence_from_json(pick(j, id, "persistence diagram"));
      emit(out, svg::render_persistence(pd, id ? *id : j.begin().key()));
      return 0;
    }
    case svg::PlotKind::Graph: artifact = io::graph_from_json(read_json(file("graph.json"))); break;
  }
  emit(out, svg::render_svg(artifact));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hoed: rolling elasticity, higher-order kinematics and energy diagnostics for panel data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hoed::kToolVersion));

  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::optional<std::string> region_map;

  std::string config_path;
  std::optional<std::string> run_out;
  auto* run = app.add_subcommand("run", "Run the full pipeline and write a diagnostics bundle");
  run->add_option("--config", config_path, "Run configuration (INI)")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the synthetic generator seed");
  run->add_option("--jobs", jobs, "Worker threads for per-entity stages")->check(CLI::Range(1, 64));
  run->add_option("--region-map", region_map, "Region map (JSON or entity,region CSV), 'builtin' or 'none'");
  run->add_option("--out", run_out, "Override the bundle directory");

  std::string spec_path, sim_out;
  auto* simulate = app.add_subcommand("simulate", "Write a synthetic panel or trajectory as CSV");
  simulate->add_option("--spec", spec_path, "INI file with a [synthetic] section")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", sim_out, "Output CSV")->required();
  simulate->add_option("--seed", seed, "Override the seed given in the --spec file");

  WindowsArgs wa;
  auto* windows = app.add_subcommand("windows", "Score candidate rolling windows on a panel CSV");
  windows->add_option("--input", wa.input, "Panel CSV")->required()->check(CLI::ExistingFile);
  windows->add_option("--x", wa.x, "Driver column")->capture_default_str();
  windows->add_option("--y", wa.y, "Response column")->capture_default_str();
  windows->add_option("--entity-column", wa.entity_column)->capture_default_str();
  windows->add_option("--year-column", wa.year_column)->capture_default_str();
  windows->add_option("--candidates", wa.candidates, "Candidate windows")->delimiter(',')->capture_default_str();
  windows->add_option("--floor", wa.floor, "Overfit floor on pooled RMSE")->capture_default_str();
  windows->add_option("--min-segment", wa.min_segment, "Shortest usable segment")->capture_default_str();
  windows->add_flag("--no-log", wa.no_log, "Use the columns as given instead of their logs");
  windows->add_option("--out", wa.out, "Write the JSON table here instead of stdout");

  std::string bundle_dir, kind;
  std::optional<std::string> plot_id, plot_out;
  auto* plot = app.add_subcommand("plot", "Render an SVG from a bundle artifact");
  plot->add_option("--bundle", bundle_dir, "Bundle directory")->required()->check(CLI::ExistingDirectory);
  plot->add_option("--kind", kind, "elasticity, indicators, phase, scalogram, persistence or graph")->required();
  plot->add_option("--id", plot_id, "Entity or group id (default: all, or the first group)");
  plot->add_option("--out", plot_out, "Output SVG (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(config_path, seed, jobs, region_map, run_out);
    if (*simulate) return cmd_simulate(spec_path, sim_out, seed);
    if (*windows) return cmd_windows(wa);
    if (*plot) return cmd_plot(bundle_dir, kind, plot_id, plot_out);
  } catch (const hoed::Error& e) {
    std::fprintf(stderr, "hoed: %s error: %s\n", std::string(hoed::to_string(e.kind())).c_str(), e.what());
    return hoed::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hoed: error: %s\n", e.what());
    return 3;
  }
  return 0;
}
