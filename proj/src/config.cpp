#include "hoed/config.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hoed/error.hpp"
#include "hoed/text.hpp"

namespace hoed {

namespace pt = boost::property_tree;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

pt::ptree read_tree(std::string_view text) {
  std::istringstream in{std::string(text)};
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    config_error(std::string("config syntax: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  return tree;
}

// Reads typed values out of one section and remembers which keys were used.
class Section {
 public:
  Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

  bool present() const { return tree_ != nullptr; }

  std::optional<std::string> raw(const std::string& key) {
    used_.insert(key);
    if (!tree_) return std::nullopt;
    const auto child = tree_->get_child_optional(pt::ptree::path_type(key, '\0'));
    if (!child) return std::nullopt;
    return text::trim(child->data());
  }

  std::optional<std::string> string(const std::string& key) {
    auto v = raw(key);
    if (v && v->empty()) return std::nullopt;
    return v;
  }

  void set(const std::string& key, std::string& out) {
    if (auto v = string(key)) out = *v;
  }

  void set(const std::string& key, bool& out) {
    const auto v = string(key);
    if (!v) return;
    if (*v == "true" || *v == "yes" || *v == "on" || *v == "1") {
      out = true;
    } else if (*v == "false" || *v == "no" || *v == "off" || *v == "0") {
      out = false;
    } else {
      fail(key, "expected a boolean, got '" + *v + "'");
    }
  }

  void set(const std::string& key, int& out) {
    if (const auto v = string(key)) out = to_int(key, *v);
  }

  void set(const std::string& key, double& out) {
    if (const auto v = string(key)) out = to_real(key, *v);
  }

  void set(const std::string& key, std::optional<int>& out) {
    if (const auto v = string(key)) out = to_int(key, *v);
  }

  void set(const std::string& key, std::optional<std::string>& out) {
    if (auto v = string(key)) out = *v;
  }

  void set(const std::string& key, std::vector<std::string>& out) {
    if (const auto v = string(key)) {
      out.clear();
      for (auto& item : text::split(*v, ','))
        if (!item.empty()) out.push_back(item);
    }
  }

  void set(const std::string& key, std::vector<int>& out) {
    if (const auto v = string(key)) {
      out.clear();
      for (const auto& item : text::split(*v, ',')) out.push_back(to_int(key, item));
    }
  }

  void set(const std::string& key, std::vector<double>& out) {
    if (const auto v = string(key)) {
      out.clear();
      for (const auto& item : text::split(*v, ',')) out.push_back(to_real(key, item));
    }
  }

  void finish() const {
    if (!tree_) return;
    for (const auto& [key, child] : *tree_) {
      (void)child;
      if (!used_.count(key)) config_error("unknown key '" + key + "' in section [" + name_ + "]");
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    config_error("[" + name_ + "] " + key + ": " + msg);
  }

  int to_int(const std::string& key, const std::string& v) const {
    const auto n = text::parse_integer(v);
    if (!n || *n < INT32_MIN || *n > INT32_MAX) fail(key, "expected an integer, got '" + v + "'");
    return static_cast<int>(*n);
  }

  double to_real(const std::string& key, const std::string& v) const {
    const auto x = text::parse_real(v);
    if (!x) fail(key, "expected a finite number, got '" + v + "'");
    return *x;
  }

 private:
  std::string name_;
  const pt::ptree* tree_;
  std::set<std::string> used_;
};

class Document {
 public:
  explicit Document(std::string_view text) : tree_(read_tree(text)) {
    for (const auto& [key, child] : tree_)
      if (child.empty() && !child.data().empty()) config_error("key '" + key + "' is outside any section");
  }

  Section section(const std::string& name) {
    known_.insert(name);
    const auto child = tree_.get_child_optional(pt::ptree::path_type(name, '\0'));
    return Section(name, child ? &*child : nullptr);
  }

  void finish() const {
    for (const auto& [key, child] : tree_) {
      (void)child;
      if (!known_.count(key)) config_error("unknown section [" + key + "]");
    }
  }

 private:
  pt::ptree tree_;
  std::set<std::string> known_;
};

std::vector<VarCoupling> parse_couplings(Section& s, const std::vector<std::string>& names) {
  std::vector<VarCoupling> out;
  const auto v = s.string("couplings");
  if (!v) return out;
  const auto index = [&](const std::string& name) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    s.fail("couplings", "unknown variable '" + name + "'");
  };
  for (const auto& item : text::split(*v, ',')) {
    if (item.empty()) continue;
    // source>target:coefficient:lag
    const auto arrow = item.find('>');
    const auto parts = text::split(arrow == std::string::npos ? std::string_view{} : std::string_view(item).substr(arrow + 1), ':');
    if (arrow == std::string::npos || parts.size() != 3)
      s.fail("couplings", "expected source>target:coefficient:lag, got '" + item + "'");
    VarCoupling c;
    c.source = index(text::trim(item.substr(0, arrow)));
    c.target = index(parts[0]);
    c.coefficient = s.to_real("couplings", parts[1]);
    c.lag = s.to_int("couplings", parts[2]);
    out.push_back(c);
  }
  return out;
}

SyntheticSpec read_synthetic(Section& s) {
  SyntheticSpec spec;
  const auto kind = s.string("kind");
  if (!kind) s.fail("kind", "missing");
  try {
    spec.kind = parse_synthetic_kind(*kind);
  } catch (const Error& e) {
    s.fail("kind", e.what());
  }
  if (const auto seed = s.string("seed")) {
    const auto n = text::parse_integer(*seed);
    if (!n || *n < 0) s.fail("seed", "expected a non-negative integer, got '" + *seed + "'");
    spec.seed = static_cast<std::uint64_t>(*n);
  }
  s.set("noise_sigma", spec.noise_sigma);
  s.set("amplitude", spec.amplitude);
  s.set("angular_frequency", spec.angular_frequency);
  s.set("phase", spec.phase);
  s.set("dt", spec.dt);
  s.set("periods", spec.periods);
  s.set("entities", spec.entities);
  s.set("years", spec.years);
  s.set("start_year", spec.start_year);
  s.set("study_entity_names", spec.study_entity_names);
  s.set("intercept", spec.intercept);
  s.set("slope", spec.slope);
  s.set("ekc_coefficients", spec.ekc_coefficients);
  s.set("log_x_low", spec.log_x_low);
  s.set("log_x_high", spec.log_x_high);
  s.set("variables", spec.variable_names);
  if (s.raw("couplings")) spec.couplings = parse_couplings(s, spec.variable_names);
  s.set("burn_in", spec.burn_in);
  try {
    validate(spec);
  } catch (const Error& e) {
    config_error(std::string("[synthetic] ") + e.what());
  }
  return spec;
}

void read_alpha(Section& s, Alpha& alpha) {
  std::vector<double> w;
  s.set("alpha", w);
  if (w.empty()) return;
  if (w.size() != 3) s.fail("alpha", "expected three weights (power, inertia, kei)");
  alpha.power = w[0];
  alpha.inertia = w[1];
  alpha.kei = w[2];
}

}  // namespace

std::string to_string(GroupBy g) { return g == GroupBy::Region ? "region" : "entity"; }

std::string to_string(CausalScope s) {
  switch (s) {
    case CausalScope::Global: return "global";
    case CausalScope::Region: return "region";
    case CausalScope::Entity: return "entity";
  }
  return "global";
}

std::string RunConfig::resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return p.string();
  return (std::filesystem::path(base_directory) / p).lexically_normal().string();
}

RunConfig parse_run_config(std::string_view text, const std::string& base_directory) {
  Document doc(text);
  RunConfig c;
  c.base_directory = base_directory;

  auto input = doc.section("input");
  input.set("path", c.input_path);
  input.set("entity_column", c.schema.entity_column);
  input.set("year_column", c.schema.year_column);
  input.set("x", c.x_variable);
  input.set("y", c.y_variable);
  input.set("log", c.log_inputs);
  input.finish();

  auto synthetic = doc.section("synthetic");
  if (synthetic.present()) c.synthetic = read_synthetic(synthetic);
  synthetic.finish();
  if (c.input_path && c.synthetic) config_error("give either [input] path or a [synthetic] section, not both");
  if (!c.input_path && !c.synthetic) config_error("one of [input] path or a [synthetic] section is required");
  if (c.synthetic && c.synthetic->kind == SyntheticSpec::Kind::Oscillator)
    config_error("the oscillator generator yields a trajectory, not a panel; use `hoed simulate`");
  if (c.x_variable == c.y_variable) config_error("[input] x and y must differ");

  auto windows = doc.section("windows");
  windows.set("candidates", c.window_candidates);
  windows.set("selected", c.window_override);
  windows.set("overfit_floor", c.overfit_floor);
  windows.set("min_segment_length", c.min_segment_length);
  windows.finish();
  if (c.window_candidates.empty()) config_error("[windows] candidates must not be empty");
  for (int w : c.window_candidates)
    if (w < 3) config_error("[windows] candidates must be >= 3");
  if (c.window_override && *c.window_override < 3) config_error("[windows] selected must be >= 3");
  if (c.overfit_floor < 0) config_error("[windows] overfit_floor must be >= 0");
  if (c.min_segment_length < 1) config_error("[windows] min_segment_length must be >= 1");

  auto kin = doc.section("kinematics");
  kin.set("drift_window", c.drift_window);
  kin.finish();
  if (c.drift_window && *c.drift_window < 1) config_error("[kinematics] drift_window must be >= 1");

  auto ekc = doc.section("ekc");
  ekc.set("enabled", c.ekc_enabled);
  ekc.set("degree", c.ekc_degree);
  ekc.finish();
  if (c.ekc_degree != 2 && c.ekc_degree != 3) config_error("[ekc] degree must be 2 or 3");

  auto ham = doc.section("hamiltonian");
  ham.set("enabled", c.hamiltonian_enabled);
  read_alpha(ham, c.alpha);
  ham.set("calibration_target", c.calibration_target);
  ham.set("stiffness", c.stiffness);
  if (const auto scheme = ham.string("system_power")) {
    if (*scheme == "central") c.power_scheme = PowerScheme::Central;
    else if (*scheme == "forward") c.power_scheme = PowerScheme::Forward;
    else ham.fail("system_power", "expected central or forward");
  }
  ham.finish();
  if (c.stiffness < 0) config_error("[hamiltonian] stiffness must be >= 0");

  auto agg = doc.section("aggregation");
  if (const auto g = agg.string("group_by")) {
    if (*g == "region") c.group_by = GroupBy::Region;
    else if (*g == "entity") c.group_by = GroupBy::Entity;
    else agg.fail("group_by", "expected region or entity");
  }
  agg.finish();

  auto phase = doc.section("phase");
  phase.set("enabled", c.phase_enabled);
  if (const auto e = phase.string("embedding")) {
    if (*e == "direct") c.embedding.kind = Embedding::Kind::Direct;
    else if (*e == "delay") c.embedding.kind = Embedding::Kind::Delay;
    else phase.fail("embedding", "expected direct or delay");
  }
  phase.set("delay", c.embedding.delay);
  phase.set("dimension", c.embedding.dimension);
  phase.set("standardize", c.standardize);
  phase.set("recurrence_radius", c.recurrence_radius);
  phase.finish();
  if (c.embedding.delay < 1 || c.embedding.dimension < 1) config_error("[phase] delay and dimension must be >= 1");
  if (!(c.recurrence_radius > 0)) config_error("[phase] recurrence_radius must be > 0");

  auto wav = doc.section("wavelet");
  wav.set("enabled", c.wavelet_enabled);
  wav.set("source", c.wavelet_source);
  wav.set("omega0", c.omega0);
  wav.set("voices_per_octave", c.voices_per_octave);
  wav.finish();
  if (c.omega0 < 5) config_error("[wavelet] omega0 must be >= 5");
  if (c.voices_per_octave < 1) config_error("[wavelet] voices_per_octave must be >= 1");

  auto pers = doc.section("persistence");
  pers.set("enabled", c.persistence_enabled);
  pers.finish();

  auto causal = doc.section("causality");
  causal.set("enabled", c.causality_enabled);
  causal.set("variables", c.causal_variables);
  causal.set("alpha", c.causal_alpha);
  causal.set("max_lag", c.max_lag);
  if (const auto s = causal.string("scope")) {
    if (*s == "global") c.causal_scope = CausalScope::Global;
    else if (*s == "region") c.causal_scope = CausalScope::Region;
    else if (*s == "entity") c.causal_scope = CausalScope::Entity;
    else causal.fail("scope", "expected global, region or entity");
  }
  causal.set("target", c.causal_target);
  causal.finish();
  if (!(c.causal_alpha > 0 && c.causal_alpha < 1)) config_error("[causality] alpha must lie in (0, 1)");
  if (c.max_lag < 1) config_error("[causality] max_lag must be >= 1");
  if (c.causal_scope != CausalScope::Global && !c.causal_target)
    config_error("[causality] scope " + to_string(c.causal_scope) + " needs a target");

  auto regions = doc.section("regions");
  regions.set("map", c.region_map_path);
  regions.finish();

  auto out = doc.section("output");
  out.set("directory", c.output_directory);
  out.set("plots", c.plots_enabled);
  out.finish();

  doc.finish();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::string content;
  try {
    content = text::read_file(path);
  } catch (const Error& e) {
    config_error(e.what());
  }
  auto dir = std::filesystem::path(path).parent_path().string();
  if (dir.empty()) dir = ".";
  return parse_run_config(content, dir);
}

SyntheticSpec parse_synthetic_spec(std::string_view text) {
  Document doc(text);
  auto s = doc.section("synthetic");
  if (!s.present()) config_error("spec file lacks a [synthetic] section");
  auto spec = read_synthetic(s);
  s.finish();
  doc.finish();
  return spec;
}

namespace {

class IniWriter {
 public:
  void section(const std::string& name) {
    if (!out_.empty()) out_ += '\n';
    out_ += "[" + name + "]\n";
  }
  void kv(const std::string& key, const std::string& value) { out_ += key + " = " + value + "\n"; }
  void kv(const std::string& key, double value) { kv(key, text::format_real(value)); }
  void kv(const std::string& key, int value) { kv(key, std::to_string(value)); }
  void kv(const std::string& key, bool value) { kv(key, std::string(value ? "true" : "false")); }
  void kv(const std::string& key, const char* value) { kv(key, std::string(value)); }
  template <class T>
  void list(const std::string& key, const std::vector<T>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ", ";
      if constexpr (std::is_same_v<T, std::string>) s += values[i];
      else if constexpr (std::is_same_v<T, int>) s += std::to_string(values[i]);
      else s += text::format_real(values[i]);
    }
    kv(key, s);
  }
  std::string str() const { return out_; }

 private:
  std::string out_;
};

}  // namespace

std::string canonical_config(const RunConfig& c) {
  IniWriter w;
  w.section("input");
  if (c.input_path) w.kv("path", *c.input_path);
  w.kv("entity_column", c.schema.entity_column);
  w.kv("year_column", c.schema.year_column);
  w.kv("x", c.x_variable);
  w.kv("y", c.y_variable);
  w.kv("log", c.log_inputs);

  if (c.synthetic) {
    const auto& s = *c.synthetic;
    w.section("synthetic");
    w.kv("kind", to_string(s.kind));
    w.kv("seed", std::to_string(s.seed));
    w.kv("noise_sigma", s.noise_sigma);
    w.kv("entities", s.entities);
    w.kv("years", s.years);
    w.kv("start_year", s.start_year);
    w.kv("study_entity_names", s.study_entity_names);
    switch (s.kind) {
      case SyntheticSpec::Kind::LoglinearPanel:
        w.kv("intercept", s.intercept);
        w.kv("slope", s.slope);
        break;
      case SyntheticSpec::Kind::EkcPanel:
        w.list("ekc_coefficients", s.ekc_coefficients);
        w.kv("log_x_low", s.log_x_low);
        w.kv("log_x_high", s.log_x_high);
        break;
      case SyntheticSpec::Kind::VarChain: {
        w.list("variables", s.variable_names);
        std::vector<std::string> couplings;
        for (const auto& k : s.couplings)
          couplings.push_back(s.variable_names.at(k.source) + ">" + s.variable_names.at(k.target) + ":" +
                              text::format_real(k.coefficient) + ":" + std::to_string(k.lag));
        w.list("couplings", couplings);
        w.kv("burn_in", s.burn_in);
        break;
      }
      case SyntheticSpec::Kind::Oscillator: break;
    }
  }

  w.section("windows");
  w.list("candidates", c.window_candidates);
  if (c.window_override) w.kv("selected", *c.window_override);
  w.kv("overfit_floor", c.overfit_floor);
  w.kv("min_segment_length", c.min_segment_length);

  w.section("kinematics");
  if (c.drift_window) w.kv("drift_window", *c.drift_window);

  w.section("ekc");
  w.kv("enabled", c.ekc_enabled);
  w.kv("degree", c.ekc_degree);

  w.section("hamiltonian");
  w.kv("enabled", c.hamiltonian_enabled);
  w.list("alpha", std::vector<double>{c.alpha.power, c.alpha.inertia, c.alpha.kei});
  if (c.calibration_target) w.kv("calibration_target", *c.calibration_target);
  w.kv("stiffness", c.stiffness);
  w.kv("system_power", c.power_scheme == PowerScheme::Central ? "central" : "forward");

  w.section("aggregation");
  w.kv("group_by", to_string(c.group_by));

  w.section("phase");
  w.kv("enabled", c.phase_enabled);
  w.kv("embedding", c.embedding.kind == Embedding::Kind::Direct ? "direct" : "delay");
  w.kv("delay", c.embedding.delay);
  w.kv("dimension", c.embedding.dimension);
  w.kv("standardize", c.standardize);
  w.kv("recurrence_radius", c.recurrence_radius);

  w.section("wavelet");
  w.kv("enabled", c.wavelet_enabled);
  w.kv("source", c.wavelet_source);
  w.kv("omega0", c.omega0);
  w.kv("voices_per_octave", c.voices_per_octave);

  w.section("persistence");
  w.kv("enabled", c.persistence_enabled);

  w.section("causality");
  w.kv("enabled", c.causality_enabled);
  w.list("variables", c.causal_variables);
  w.kv("alpha", c.causal_alpha);
  w.kv("max_lag", c.max_lag);
  w.kv("scope", to_string(c.causal_scope));
  if (c.causal_target) w.kv("target", *c.causal_target);

  w.section("regions");
  w.kv("map", c.region_map_path.value_or("builtin"));

  w.section("output");
  w.kv("plots", c.plots_enabled);
  return w.str();
}

}  // namespace hoed
