#include "hoed/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <ctime>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "hoed/causality.hpp"
#include "hoed/error.hpp"
#include "hoed/io.hpp"
#include "hoed/svg.hpp"
#include "hoed/text.hpp"
#include "hoed/topology.hpp"

namespace hoed {

namespace fs = std::filesystem;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

class BundleWriter {
 public:
  explicit BundleWriter(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& rel, std::string_view content) {
    const auto path = dir_ / rel;
    std::lock_guard lock(mu_);
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
    text::write_file(path.string(), content);
    files_[rel] = BundleFile{rel, text::sha256_hex(content), content.size()};
  }

  void write_json(const std::string& rel, const io::Json& j) { write(rel, j.dump(2) + "\n"); }

  std::vector<BundleFile> files() const {
    std::vector<BundleFile> out;
    for (const auto& [k, f] : files_) out.push_back(f);
    return out;
  }

 private:
  fs::path dir_;
  std::mutex mu_;
  std::map<std::string, BundleFile> files_;
};

// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception by index is rethrown.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& fn) {
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, 64));
  std::vector<std::exception_ptr> errors(n);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string describe(const std::exception& e) {
  if (const auto* he = dynamic_cast<const Error*>(&e)) return std::string(to_string(he->kind())) + ": " + e.what();
  return e.what();
}

template <class F>
auto fatal_stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("stage '") + name + "': " + e.what());
  }
}

Series longest_run(const Series& s) {
  Series best;
  for (auto& run : split_runs(s))
    if (run.size() > best.size()) best = std::move(run);
  return best;
}

std::string slug(const std::string& id) {
  std::string out;
  for (unsigned char c : id) {
    if (std::isalnum(c)) out += static_cast<char>(std::tolower(c));
    else if (!out.empty() && out.back() != '_') out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "series" : out;
}

// Joins "<n> skipped: first reason" style notes for the manifest.
std::string summarize(std::size_t done, const std::vector<std::string>& skipped) {
  std::string msg = std::to_string(done) + " computed";
  if (!skipped.empty()) msg += ", " + std::to_string(skipped.size()) + " skipped (first: " + skipped.front() + ")";
  return msg;
}

class StageLog {
 public:
  void record(std::string name, std::string status, std::string message = {}) {
    ok_[name] = status == "ok" || status == "partial";
    records_.push_back({std::move(name), std::move(status), std::move(message)});
  }
  bool ok(const std::string& name) const {
    const auto it = ok_.find(name);
    return it != ok_.end() && it->second;
  }
  const std::vector<StageRecord>& records() const { return records_; }

  // Runs an optional stage: returns false when it was disabled, skipped or failed.
  template <class F>
  bool run(const std::string& name, bool enabled, const std::vector<std::string>& needs, F&& f) {
    if (!enabled) {
      record(name, "disabled");
      return false;
    }
    for (const auto& n : needs)
      if (!ok(n)) {
        record(name, "skipped", "upstream stage '" + n + "' did not complete");
        return false;
      }
    try {
      std::string note = f();
      record(name, note.find(" skipped") != std::string::npos ? "partial" : "ok", note);
      return true;
    } catch (const std::exception& e) {
      record(name, "failed", describe(e));
      return false;
    }
  }

 private:
  std::vector<StageRecord> records_;
  std::map<std::string, bool> ok_;
};

RegionMap load_region_map(const RunConfig& c) {
  if (!c.region_map_path || *c.region_map_path == "builtin") return RegionMap::study_sample();
  if (*c.region_map_path == "none") return RegionMap{};
  return RegionMap::parse(text::read_file(c.resolve(*c.region_map_path)));
}

void remove_stale_outputs(const fs::path& dir) {
  const auto manifest = dir / "manifest.json";
  std::error_code ec;
  if (!fs::exists(manifest, ec)) return;
  try {
    const auto j = io::Json::parse(text::read_file(manifest.string()));
    for (const auto& f : j.at("files")) {
      const fs::path rel(f.at("path").get<std::string>());
      if (rel.is_absolute() || rel.lexically_normal().string().rfind("..", 0) == 0) continue;
      fs::remove(dir / rel, ec);
    }
  } catch (const std::exception&) {
    // An unreadable old manifest just means nothing is cleaned up.
  }
  fs::remove(manifest, ec);
}

// Per-stack results, index-aligned with the stack list.
struct EntityResults {
  std::vector<KinematicStack> stacks;
  std::vector<IndicatorFrame> frames;
  std::vector<std::optional<HamiltonianTrace>> traces;
};

using NamedSeries = std::vector<std::pair<std::string, Series>>;  // (entity, series) per stack or entity

NamedSeries named_series(const std::string& name, const EntityResults& r, const Panel& panel) {
  NamedSeries out;
  const auto from_stack = [&](auto project) {
    for (const auto& s : r.stacks) out.emplace_back(s.entity, defined_points(project(s)));
  };
  const auto from_frames = [&](std::optional<double> IndicatorRecord::*field) {
    for (const auto& f : r.frames) {
      Series s;
      for (const auto& rec : f.records)
        if (const auto v = rec.*field) s.push_back({rec.year, *v});
      out.emplace_back(f.entity, std::move(s));
    }
  };
  const auto from_traces = [&](auto project) {
    bool any = false;
    for (const auto& t : r.traces)
      if (t) {
        any = true;
        out.emplace_back(t->entity, project(*t));
      }
    if (!any) throw Error(ErrorKind::InsufficientData, "no Hamiltonian traces for column '" + name + "'");
  };

  if (name == "epsilon") {
    for (const auto& s : r.stacks) {
      Series e;
      for (const auto& p : s.points) e.push_back({p.year, p.epsilon});
      out.emplace_back(s.entity, std::move(e));
    }
  } else if (name == "velocity") from_stack([](const KinematicStack& s) { return s.velocity(); });
  else if (name == "acceleration") from_stack([](const KinematicStack& s) { return s.acceleration(); });
  else if (name == "jerk") from_stack([](const KinematicStack& s) { return s.jerk(); });
  else if (name == "power") from_frames(&IndicatorRecord::power);
  else if (name == "kei") from_frames(&IndicatorRecord::kei);
  else if (name == "inertia") from_frames(&IndicatorRecord::inertia);
  else if (name == "smoothness") from_frames(&IndicatorRecord::smoothness);
  else if (name == "drift") from_frames(&IndicatorRecord::drift);
  else if (name == "shock") from_frames(&IndicatorRecord::shock);
  else if (name == "H") from_traces([](const HamiltonianTrace& t) { return t.energy(); });
  else if (name == "system_power") from_traces([](const HamiltonianTrace& t) { return defined_points(t.system_power()); });
  else if (name == "policy_sensitivity") from_traces([](const HamiltonianTrace& t) { return defined_points(t.policy()); });
  else if (name == "marginal_response") {
    from_traces([](const HamiltonianTrace& t) {
      Series s;
      for (const auto& rec : t.records) s.push_back({rec.year, rec.marginal_response});
      return s;
    });
  } else if (panel.has_variable(name)) {
    for (const auto& e : panel.entities()) out.emplace_back(e, defined_points(panel.column(e, name)));
  } else {
    throw Error(ErrorKind::Lookup, "unknown series '" + name + "'");
  }
  return out;
}

// Group id -> members' series in stack order, reduced to the longest run of the per-year mean.
std::map<std::string, Series> group_means(const NamedSeries& series, const std::function<std::string(const std::string&)>& group_of) {
  std::map<std::string, std::vector<Series>> members;
  for (const auto& [entity, s] : series)
    if (!s.empty()) members[group_of(entity)].push_back(s);
  std::map<std::string, Series> out;
  for (const auto& [id, list] : members) {
    auto run = longest_run(mean_by_year(list));
    if (!run.empty()) out.emplace(id, std::move(run));
  }
  return out;
}

}  // namespace

Panel load_config_panel(const RunConfig& c, std::string* input_bytes) {
  Panel panel;
  std::string bytes;
  if (c.synthetic) {
    panel = generate_panel(*c.synthetic);
    bytes = write_panel_csv(panel);
  } else {
    bytes = text::read_file(c.resolve(*c.input_path));
    PanelSchema schema = c.schema;
    panel = load_panel(bytes, schema);
  }
  for (const auto& v : {c.x_variable, c.y_variable})
    if (!panel.has_variable(v)) throw Error(ErrorKind::Lookup, "input has no column '" + v + "'");
  panel = assign_regions(panel, load_region_map(c));
  if (c.log_inputs) panel = log_transform(panel, {c.x_variable, c.y_variable});
  if (input_bytes) *input_bytes = std::move(bytes);
  return panel;
}

DiagnosticsBundle run_pipeline(const RunConfig& c, const RunOptions& options) {
  const auto clock = options.clock ? options.clock : utc_timestamp;
  const std::string started = clock();
  const int jobs = options.jobs;

  DiagnosticsBundle bundle;
  const fs::path dir = c.resolve(c.output_directory);
  bundle.directory = dir.string();
  {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
      throw Error(ErrorKind::Config, "output directory " + dir.string() + " is not writable");
  }
  remove_stale_outputs(dir);
  BundleWriter writer(dir);
  StageLog log;

  const std::string canonical = canonical_config(c);
  bundle.config_hash = text::sha256_hex(canonical);
  writer.write("config.ini", canonical);

  // ingest (fatal)
  std::string input_bytes;
  const Panel panel = fatal_stage("ingest", [&] {
    auto p = load_config_panel(c, &input_bytes);
    writer.write_json("validation.json", io::to_json(validate_panel(p, c.min_segment_length)));
    if (c.synthetic) writer.write("input.csv", input_bytes);
    return p;
  });
  bundle.input_digest = text::sha256_hex(input_bytes);
  log.record("ingest", "ok", std::to_string(panel.observations.size()) + " observations");

  const std::string xv = c.log_inputs ? "log_" + c.x_variable : c.x_variable;
  const std::string yv = c.log_inputs ? "log_" + c.y_variable : c.y_variable;
  std::vector<PairedSegment> segments;
  for (auto& s : paired_segments(panel, xv, yv))
    if (static_cast<int>(s.x.size()) >= c.min_segment_length) segments.push_back(std::move(s));

  // window scoring (fatal)
  const int w = fatal_stage("windows", [&] {
    if (segments.empty())
      throw Error(ErrorKind::InsufficientData,
                  "no segment reaches min_segment_length = " + std::to_string(c.min_segment_length));
    const auto table = score_windows(segments, c.window_candidates, c.overfit_floor);
    auto j = io::to_json(table);
    if (c.window_override) j["override"] = *c.window_override;
    writer.write_json("windows.json", j);
    return c.window_override.value_or(table.selected_window);
  });
  bundle.selected_window = w;
  log.record("windows", "ok", "selected w = " + std::to_string(w));

  // rolling elasticity (fatal)
  std::vector<ElasticitySeries> elasticity = fatal_stage("elasticity", [&] {
    std::vector<std::optional<ElasticitySeries>> slots(segments.size());
    std::vector<std::string> notes(segments.size());
    parallel_for(segments.size(), jobs, [&](std::size_t i) {
      const auto& s = segments[i];
      if (static_cast<int>(s.x.size()) < w) {
        notes[i] = s.entity + ": segment shorter than w";
        return;
      }
      try {
        auto es = rolling_elasticity(s.x, s.y, w, s.entity);
        if (es.points.empty()) notes[i] = s.entity + ": no complete window";
        else slots[i] = std::move(es);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InsufficientData && e.kind() != ErrorKind::Degenerate) throw;
        notes[i] = s.entity + ": " + e.what();
      }
    });
    std::vector<ElasticitySeries> out;
    std::vector<std::string> skipped;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i]) out.push_back(std::move(*slots[i]));
      else if (!notes[i].empty()) skipped.push_back(notes[i]);
    }
    if (out.empty()) throw Error(ErrorKind::InsufficientData, "no segment produced an elasticity series");
    writer.write("elasticity.csv", io::elasticity_csv(out));
    log.record("elasticity", skipped.empty() ? "ok" : "partial", summarize(out.size(), skipped));
    return out;
  });

  log.run("ekc", c.ekc_enabled, {}, [&] {
    std::vector<double> x, y;
    for (const auto& s : segments)
      for (std::size_t i = 0; i < s.x.size(); ++i)
        if (s.x[i].value && s.y[i].value) {
          x.push_back(*s.x[i].value);
          y.push_back(*s.y[i].value);
        }
    const auto curve = ekc_curve(x, y, c.ekc_degree);
    auto j = io::to_json(curve);
    j["x"] = xv;
    j["y"] = yv;
    writer.write_json("ekc.json", j);
    return std::to_string(curve.turning_points.size()) + " turning point(s)";
  });

  EntityResults results;
  log.run("kinematics", true, {}, [&] {
    std::vector<std::string> skipped;
    for (const auto& es : elasticity)
      for (const auto& run : split_runs(es.epsilon())) {
        if (run.size() < kMinStackLength) {
          skipped.push_back(es.entity + ": run of " + std::to_string(run.size()) + " elasticity points");
          continue;
        }
        results.stacks.push_back(kinematic_stack(run, es.entity));
      }
    if (results.stacks.empty()) throw Error(ErrorKind::InsufficientData, "no elasticity run is long enough to differentiate");
    writer.write("kinematics.csv", io::kinematics_csv(results.stacks));
    return summarize(results.stacks.size(), skipped);
  });

  log.run("indicators", true, {"kinematics"}, [&] {
    results.frames.resize(results.stacks.size());
    const int drift = c.drift_window.value_or(w);
    parallel_for(results.stacks.size(), jobs,
                 [&](std::size_t i) { results.frames[i] = indicators(results.stacks[i], drift); });
    writer.write("indicators.csv", io::indicators_csv(results.frames));
    return "drift window " + std::to_string(drift);
  });

  results.traces.resize(results.stacks.size());
  log.run("hamiltonian", c.hamiltonian_enabled, {"kinematics"}, [&] {
    Alpha alpha = c.alpha;
    if (c.calibration_target) {
      std::vector<std::pair<KinematicStack, Series>> samples;
      for (const auto& s : results.stacks)
        samples.emplace_back(s, defined_points(panel.column(s.entity, *c.calibration_target)));
      if (!panel.has_variable(*c.calibration_target))
        throw Error(ErrorKind::Lookup, "calibration target '" + *c.calibration_target + "' is not an input column");
      alpha = calibrate_alpha(samples);
    }
    std::vector<std::string> notes(results.stacks.size());
    parallel_for(results.stacks.size(), jobs, [&](std::size_t i) {
      try {
        results.traces[i] = generalized_hamiltonian(results.stacks[i], alpha, c.power_scheme);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InsufficientData) throw;
        notes[i] = results.stacks[i].entity + ": " + e.what();
      }
    });
    std::vector<HamiltonianTrace> traces;
    std::vector<std::string> skipped;
    for (std::size_t i = 0; i < results.traces.size(); ++i) {
      if (results.traces[i]) traces.push_back(*results.traces[i]);
      else skipped.push_back(notes[i]);
    }
    if (traces.empty()) throw Error(ErrorKind::InsufficientData, "no stack supports the generalized Hamiltonian");
    writer.write("hamiltonian.csv", io::hamiltonian_csv(traces));
    writer.write_json("hamiltonian.json", io::hamiltonian_sidecar(alpha, c.stiffness, c.power_scheme));

    std::string classical = text::csv_row({"entity", "year", "H_classical", "residual"});
    for (const auto& s : results.stacks) {
      std::map<int, std::pair<std::optional<double>, std::optional<double>>> rows;
      for (const auto& p : classical_hamiltonian(s, c.stiffness)) rows[p.year].first = p.value;
      for (const auto& p : hamilton_residual(s, c.stiffness)) rows[p.year].second = p.value;
      for (const auto& [year, v] : rows)
        classical += text::csv_row({s.entity, std::to_string(year), text::format_real(v.first), text::format_real(v.second)});
    }
    writer.write("classical.csv", classical);
    return summarize(traces.size(), skipped);
  });

  const auto group_of = [&](const std::string& entity) {
    return c.group_by == GroupBy::Entity ? entity : panel.region_of(entity);
  };

  // Phase trajectories are rebuilt by the persistence stage too, so disabling one leaves the other intact.
  const auto trajectories = [&](std::vector<std::string>& skipped) {
    std::vector<PhaseTrajectory> out;
    for (const auto& [id, eps] : group_means(named_series("epsilon", results, panel), group_of)) {
      try {
        out.push_back(embed(eps, c.embedding, c.standardize, id));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InsufficientData) throw;
        skipped.push_back(id + ": " + e.what());
      }
    }
    if (out.empty()) throw Error(ErrorKind::InsufficientData, "no group has enough elasticity points to embed");
    return out;
  };

  std::vector<PhaseTrajectory> phase;
  log.run("phase", c.phase_enabled, {"kinematics"}, [&] {
    std::vector<std::string> skipped;
    phase = trajectories(skipped);
    io::Json metrics = io::Json::object();
    for (const auto& t : phase) {
      try {
        auto m = io::to_json(trajectory_metrics(t, c.recurrence_radius));
        m["embedding"] = t.embedding.label();
        m["points"] = t.points.size();
        metrics[t.id] = m;
      } catch (const Error& e) {
        skipped.push_back(t.id + ": " + e.what());
      }
    }
    writer.write("phase.csv", io::phase_csv(phase));
    writer.write_json("phase_metrics.json", metrics);
    return summarize(phase.size(), skipped);
  });

  std::map<std::string, Scalogram> scalograms;
  log.run("wavelet", c.wavelet_enabled, {"kinematics"}, [&] {
    const auto groups = group_means(named_series(c.wavelet_source, results, panel), group_of);
    std::vector<std::pair<std::string, Series>> items(groups.begin(), groups.end());
    std::vector<std::optional<Scalogram>> slots(items.size());
    std::vector<std::string> notes(items.size());
    parallel_for(items.size(), jobs, [&](std::size_t i) {
      const auto& [id, s] = items[i];
      try {
        slots[i] = morlet_cwt(s, dyadic_scales(s.size(), c.voices_per_octave), c.omega0, id);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InsufficientData && e.kind() != ErrorKind::Parameter) throw;
        notes[i] = id + ": " + e.what();
      }
    });
    io::Json j = io::Json::object();
    std::vector<std::string> skipped;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!slots[i]) {
        skipped.push_back(notes[i]);
        continue;
      }
      auto entry = io::to_json(*slots[i]);
      entry["source"] = c.wavelet_source;
      io::Json ridge = io::Json::array();
      for (const auto& p : dominant_scale(*slots[i])) ridge.push_back({p.year, p.scale});
      entry["dominant_scale"] = ridge;
      j[items[i].first] = entry;
      scalograms.emplace(items[i].first, std::move(*slots[i]));
    }
    if (scalograms.empty())
      throw Error(ErrorKind::InsufficientData, "no group series of '" + c.wavelet_source + "' spans 8 years");
    writer.write_json("scalogram.json", j);
    return summarize(scalograms.size(), skipped);
  });

  std::map<std::string, PersistenceDiagram> diagrams;
  log.run("persistence", c.persistence_enabled, {"kinematics"}, [&] {
    std::vector<std::string> skipped;
    const auto clouds = trajectories(skipped);
    std::vector<PersistenceDiagram> slots(clouds.size());
    parallel_for(clouds.size(), jobs, [&](std::size_t i) { slots[i] = rips_h0(clouds[i].points); });
    io::Json j = io::Json::object();
    for (std::size_t i = 0; i < clouds.size(); ++i) {
      auto entry = io::to_json(slots[i]);
      entry["summary"] = io::to_json(persistence_summary(slots[i]));
      j[clouds[i].id] = entry;
      diagrams.emplace(clouds[i].id, std::move(slots[i]));
    }
    writer.write_json("persistence.json", j);
    return summarize(diagrams.size(), skipped);
  });

  std::optional<CausalGraph> graph;
  log.run("causality", c.causality_enabled, {"kinematics"}, [&] {
    std::map<std::string, Series> frame;
    for (const auto& var : c.causal_variables) {
      NamedSeries members;
      for (auto& [entity, s] : named_series(var, results, panel)) {
        const bool keep = c.causal_scope == CausalScope::Global ||
                          (c.causal_scope == CausalScope::Region && panel.region_of(entity) == *c.causal_target) ||
                          (c.causal_scope == CausalScope::Entity && entity == *c.causal_target);
        if (keep) members.emplace_back(entity, std::move(s));
      }
      const auto means = group_means(members, [](const std::string&) { return std::string("all"); });
      if (means.empty())
        throw Error(ErrorKind::InsufficientData, "no data for '" + var + "' in scope " + to_string(c.causal_scope));
      frame[var] = means.begin()->second;
    }
    graph = build_graph(frame, c.causal_variables, c.causal_alpha, c.max_lag);
    auto j = io::to_json(*graph);
    j["scope"] = to_string(c.causal_scope);
    if (c.causal_target) j["target"] = *c.causal_target;
    writer.write_json("graph.json", j);
    writer.write("graph.dot", export_graph(*graph, "dot"));
    std::vector<std::string> skipped;
    for (const auto& u : graph->untested) skipped.push_back(u.source + "->" + u.target + ": " + u.reason);
    return std::to_string(graph->edges.size()) + " edge(s) from " + std::to_string(graph->tests.size()) +
           " test(s)" + (skipped.empty() ? "" : ", " + std::to_string(skipped.size()) + " untested");
  });

  log.run("plots", c.plots_enabled, {}, [&] {
    std::vector<std::string> skipped;
    std::size_t done = 0;
    const auto plot = [&](const std::string& name, const auto& render) {
      try {
        writer.write("plots/" + name + ".svg", render());
        ++done;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyPlot) throw;
        skipped.push_back(name + ": " + e.what());
      }
    };
    plot("elasticity", [&] { return svg::render_svg(elasticity); });
    if (log.ok("indicators")) plot("indicators", [&] { return svg::render_svg(results.frames); });
    if (log.ok("phase")) plot("phase", [&] { return svg::render_svg(phase); });
    std::set<std::string> used;
    const auto unique_slug = [&](const std::string& prefix, const std::string& id) {
      std::string s = prefix + "_" + slug(id);
      for (int k = 2; used.count(s); ++k) s = prefix + "_" + slug(id) + "_" + std::to_string(k);
      used.insert(s);
      return s;
    };
    for (const auto& [id, sg] : scalograms) plot(unique_slug("scalogram", id), [&] { return svg::render_scalogram(sg); });
    for (const auto& [id, pd] : diagrams)
      plot(unique_slug("persistence", id), [&] { return svg::render_persistence(pd, id); });
    if (graph) plot("graph", [&] { return svg::render_graph(*graph); });
    return summarize(done, skipped);
  });

  bundle.stages = log.records();
  bundle.files = writer.files();

  io::Json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["config_hash"] = bundle.config_hash;
  manifest["input_digest"] = bundle.input_digest;
  manifest["input"] = c.synthetic ? "synthetic:" + to_string(c.synthetic->kind) : *c.input_path;
  manifest["selected_window"] = w;
  manifest["started_at"] = started;
  manifest["finished_at"] = clock();
  io::Json files = io::Json::array();
  for (const auto& f : bundle.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  manifest["files"] = files;
  io::Json stages = io::Json::array();
  for (const auto& s : bundle.stages) {
    io::Json st{{"name", s.name}, {"status", s.status}};
    if (!s.message.empty()) st["message"] = s.message;
    stages.push_back(st);
  }
  manifest["stages"] = stages;
  text::write_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
  return bundle;
}

}  // namespace hoed
