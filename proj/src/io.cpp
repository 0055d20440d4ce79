#include "hoed/io.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "hoed/error.hpp"
#include "hoed/text.hpp"

namespace hoed::io {

using text::format_real;

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
Json number_or_null(const std::optional<double>& v) { return v ? number_or_null(*v) : Json(nullptr); }

Json to_json(const ValidationReport& report) {
  Json segments = Json::object();
  for (const auto& [entity, segs] : report.segments) {
    Json arr = Json::array();
    for (const auto& s : segs)
      arr.push_back({{"start", s.start}, {"end", s.end}, {"length", s.length()}, {"usable", s.usable}});
    segments[entity] = arr;
  }
  Json dropped = Json::array();
  for (const auto& d : report.dropped) dropped.push_back({{"line", d.line}, {"reason", d.reason}});
  return {{"segments", segments},
          {"dropped", dropped},
          {"missingness", report.missingness},
          {"nonpositive_under_log", report.nonpositive_under_log},
          {"input_rows", report.input_rows},
          {"retained_rows", report.retained_rows}};
}

Json to_json(const WindowMetricsTable& table) {
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"w", r.window},
                    {"feasible", r.feasible},
                    {"rmse", r.feasible ? number_or_null(r.rmse) : Json(nullptr)},
                    {"mae", r.feasible ? number_or_null(r.mae) : Json(nullptr)},
                    {"r2", r.feasible ? number_or_null(r.r2) : Json(nullptr)},
                    {"windows", r.windows},
                    {"observations", r.observations}});
  }
  return {{"rows", rows},
          {"selected_w", table.selected_window},
          {"overfit_floor", table.overfit_floor},
          {"floor_fallback", table.floor_fallback}};
}

Json to_json(const FitResult& fit) {
  return {{"degree", fit.degree}, {"coefficients", fit.coefficients}, {"rmse", fit.rmse},
          {"mae", fit.mae},       {"r2", fit.r2},                     {"n", fit.n}};
}

Json to_json(const EkcCurve& curve) {
  Json j = to_json(curve.fit);
  j["turning_points"] = curve.turning_points;
  return j;
}

Json to_json(const Alpha& alpha) {
  return {{"alpha1", alpha.power},
          {"alpha2", alpha.inertia},
          {"alpha3", alpha.kei},
          {"provenance", alpha.provenance == Alpha::Provenance::Default ? "default" : "calibrated"},
          {"calibration_r2", number_or_null(alpha.calibration_r2)}};
}

Json hamiltonian_sidecar(const Alpha& alpha, double stiffness, PowerScheme scheme) {
  return {{"alpha", to_json(alpha)},
          {"k", stiffness},
          {"mode", "generalized"},
          {"system_power", scheme == PowerScheme::Central ? "central" : "forward"},
          {"provenance", alpha.provenance == Alpha::Provenance::Default ? "default" : "calibrated"}};
}

Json to_json(const PhaseMetrics& m) {
  return {{"path_length", m.path_length},
          {"bounding_box_area", m.bounding_box_area},
          {"recurrence_rate", m.recurrence_rate},
          {"recurrence_radius", m.radius},
          {"net_displacement", m.net_displacement}};
}

Json to_json(const Scalogram& sg) {
  Json power = Json::array();
  for (double p : sg.power) power.push_back(number_or_null(p));
  return {{"times", sg.times}, {"scales", sg.scales}, {"power", power}, {"coi", sg.coi}, {"omega0", sg.omega0}};
}

Json to_json(const PersistenceDiagram& pd) {
  Json pairs = Json::array();
  for (const auto& p : pd.pairs) pairs.push_back({p.birth, p.death});
  Json inf = Json::array();
  for (double b : pd.infinite_births) inf.push_back({b, nullptr});
  return {{"degree", pd.degree}, {"pairs", pairs}, {"infinite", inf}, {"n_points", pd.n_points}};
}

Json to_json(const PersistenceSummary& s) {
  return {{"total_persistence", s.total_persistence}, {"max_death", s.max_death}, {"finite_pairs", s.finite_pairs}};
}

Json to_json(const CausalGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"source", e.source},
                     {"target", e.target},
                     {"p_value", e.p_value},
                     {"lag", e.lag},
                     {"f_statistic", number_or_null(e.f_statistic)}});
  Json tests = Json::array();
  for (const auto& t : g.tests)
    tests.push_back({{"source", t.source},
                     {"target", t.target},
                     {"p_value", t.p_value},
                     {"lag", t.lag},
                     {"f_statistic", number_or_null(t.f_statistic)},
                     {"n_effective", t.n_effective}});
  Json untested = Json::array();
  for (const auto& u : g.untested) untested.push_back({{"source", u.source}, {"target", u.target}, {"reason", u.reason}});
  return {{"nodes", g.nodes},   {"edges", edges},         {"tests", tests},
          {"untested", untested}, {"alpha_level", g.alpha_level}, {"max_lag", g.max_lag}};
}

std::string elasticity_csv(const std::vector<ElasticitySeries>& series) {
  std::string out = text::csv_row({"entity", "year", "window", "epsilon", "window_r2"});
  for (const auto& s : series)
    for (const auto& p : s.points)
      out += text::csv_row({s.entity, std::to_string(p.year), std::to_string(s.window), format_real(p.epsilon),
                            format_real(p.r2)});
  return out;
}

std::string kinematics_csv(const std::vector<KinematicStack>& stacks) {
  std::string out = text::csv_row({"entity", "year", "epsilon", "velocity", "acceleration", "jerk"});
  for (const auto& s : stacks)
    for (const auto& p : s.points)
      out += text::csv_row({s.entity, std::to_string(p.year), format_real(p.epsilon), format_real(p.velocity),
                            format_real(p.acceleration), format_real(p.jerk)});
  return out;
}

std::string indicators_csv(const std::vector<IndicatorFrame>& frames) {
  std::string out = text::csv_row({"entity", "year", "power", "kei", "inertia", "smoothness", "drift", "shock"});
  for (const auto& f : frames)
    for (const auto& r : f.records)
      out += text::csv_row({f.entity, std::to_string(r.year), format_real(r.power), format_real(r.kei),
                            format_real(r.inertia), format_real(r.smoothness), format_real(r.drift),
                            format_real(r.shock)});
  return out;
}

std::string hamiltonian_csv(const std::vector<HamiltonianTrace>& traces) {
  std::string out =
      text::csv_row({"entity", "year", "H", "system_power", "marginal_response", "policy_sensitivity"});
  for (const auto& t : traces)
    for (const auto& r : t.records)
      out += text::csv_row({t.entity, std::to_string(r.year), format_real(r.energy), format_real(r.system_power),
                            format_real(r.marginal_response), format_real(r.policy_sensitivity)});
  return out;
}

std::string phase_csv(const std::vector<PhaseTrajectory>& trajectories) {
  std::size_t m = 0;
  for (const auto& t : trajectories) m = std::max(m, t.dimension());
  std::vector<std::string> header{"entity", "year"};
  for (std::size_t c = 1; c <= m; ++c) header.push_back("c" + std::to_string(c));
  std::string out = text::csv_row(header);
  for (const auto& t : trajectories)
    for (std::size_t i = 0; i < t.points.size(); ++i) {
      std::vector<std::string> row{t.id, std::to_string(t.years[i])};
      for (std::size_t c = 0; c < m; ++c)
        row.push_back(c < t.points[i].size() ? format_real(t.points[i][c]) : std::string("NA"));
      out += text::csv_row(row);
    }
  return out;
}

namespace {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw Error(ErrorKind::Schema, "CSV lacks column '" + name + "'");
  }
};

CsvTable read_table(std::string_view csv, std::size_t min_columns) {
  auto records = text::parse_csv(csv);
  if (records.empty()) throw Error(ErrorKind::EmptyInput, "artifact CSV is empty");
  CsvTable t;
  t.header = records.front();
  if (t.header.size() < min_columns) throw Error(ErrorKind::Schema, "artifact CSV has too few columns");
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != t.header.size()) throw Error(ErrorKind::Schema, "ragged artifact CSV row");
    t.rows.push_back(std::move(records[r]));
  }
  return t;
}

int to_year(const std::string& s) {
  const auto v = text::parse_integer(s);
  if (!v) throw Error(ErrorKind::Schema, "bad year '" + s + "' in artifact CSV");
  return static_cast<int>(*v);
}

std::optional<double> to_maybe(const std::string& s) { return s == "NA" ? std::nullopt : text::parse_real(s); }

double to_real(const std::string& s) {
  const auto v = to_maybe(s);
  if (!v) throw Error(ErrorKind::Schema, "bad number '" + s + "' in artifact CSV");
  return *v;
}

}  // namespace

std::vector<ElasticitySeries> read_elasticity_csv(std::string_view csv) {
  const auto t = read_table(csv, 5);
  const auto ce = t.column("entity"), cy = t.column("year"), cw = t.column("window"), cv = t.column("epsilon"),
             cr = t.column("window_r2");
  std::vector<ElasticitySeries> out;
  for (const auto& row : t.rows) {
    if (out.empty() || out.back().entity != row[ce]) {
      out.emplace_back();
      out.back().entity = row[ce];
      out.back().window = to_year(row[cw]);
    }
    out.back().points.push_back({to_year(row[cy]), to_real(row[cv]), 0.0, to_real(row[cr])});
  }
  return out;
}

std::vector<IndicatorFrame> read_indicators_csv(std::string_view csv) {
  const auto t = read_table(csv, 8);
  const auto ce = t.column("entity"), cy = t.column("year");
  const std::size_t cols[] = {t.column("power"),      t.column("kei"),   t.column("inertia"),
                              t.column("smoothness"), t.column("drift"), t.column("shock")};
  std::vector<IndicatorFrame> out;
  for (const auto& row : t.rows) {
    if (out.empty() || out.back().entity != row[ce]) {
      out.emplace_back();
      out.back().entity = row[ce];
    }
    IndicatorRecord r;
    r.year = to_year(row[cy]);
    r.power = to_maybe(row[cols[0]]);
    r.kei = to_maybe(row[cols[1]]);
    r.inertia = to_maybe(row[cols[2]]);
    r.smoothness = to_maybe(row[cols[3]]);
    r.drift = to_maybe(row[cols[4]]);
    r.shock = to_maybe(row[cols[5]]);
    out.back().records.push_back(r);
  }
  return out;
}

std::vector<PhaseTrajectory> read_phase_csv(std::string_view csv) {
  const auto t = read_table(csv, 3);
  const auto ce = t.column("entity"), cy = t.column("year");
  std::vector<PhaseTrajectory> out;
  for (const auto& row : t.rows) {
    if (out.empty() || out.back().id != row[ce]) {
      out.emplace_back();
      out.back().id = row[ce];
    }
    std::vector<double> p;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == ce || c == cy) continue;
      if (const auto v = to_maybe(row[c])) p.push_back(*v);
    }
    out.back().years.push_back(to_year(row[cy]));
    out.back().points.push_back(std::move(p));
  }
  return out;
}

Scalogram scalogram_from_json(const Json& j) {
  try {
    Scalogram sg;
    sg.times = j.at("times").get<std::vector<int>>();
    sg.scales = j.at("scales").get<std::vector<double>>();
    sg.coi = j.at("coi").get<std::vector<double>>();
    sg.omega0 = j.at("omega0").get<double>();
    for (const auto& p : j.at("power")) sg.power.push_back(p.is_null() ? 0.0 : p.get<double>());
    if (sg.power.size() != sg.times.size() * sg.scales.size() || sg.coi.size() != sg.times.size())
      throw Error(ErrorKind::Schema, "scalogram JSON dimensions disagree");
    return sg;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Schema, std::string("scalogram JSON: ") + e.what());
  }
}

PersistenceDiagram persistence_from_json(const Json& j) {
  try {
    PersistenceDiagram pd;
    pd.degree = j.at("degree").get<int>();
    for (const auto& p : j.at("pairs")) pd.pairs.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    for (const auto& p : j.at("infinite")) pd.infinite_births.push_back(p.at(0).get<double>());
    pd.n_points = j.value("n_points", pd.pairs.size() + pd.infinite_births.size());
    return pd;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Schema, std::string("persistence JSON: ") + e.what());
  }
}

CausalGraph graph_from_json(const Json& j) {
  try {
    CausalGraph g;
    g.nodes = j.at("nodes").get<std::vector<std::string>>();
    g.alpha_level = j.at("alpha_level").get<double>();
    g.max_lag = j.at("max_lag").get<int>();
    for (const auto& e : j.at("edges")) {
      CausalEdge edge{e.at("source").get<std::string>(), e.at("target").get<std::string>(),
                      e.at("p_value").get<double>(), e.at("lag").get<int>(), 0.0};
      edge.f_statistic = e.at("f_statistic").is_null() ? std::numeric_limits<double>::infinity()
                                                        : e.at("f_statistic").get<double>();
      g.edges.push_back(std::move(edge));
    }
    if (j.contains("tests"))
      for (const auto& t : j.at("tests")) {
        GrangerResult r;
        r.source = t.at("source").get<std::string>();
        r.target = t.at("target").get<std::string>();
        r.lag = t.at("lag").get<int>();
        r.f_statistic = t.at("f_statistic").is_null() ? std::numeric_limits<double>::infinity()
                                                      : t.at("f_statistic").get<double>();
        r.p_value = t.at("p_value").get<double>();
        r.n_effective = t.at("n_effective").get<std::size_t>();
        g.tests.push_back(std::move(r));
      }
    if (j.contains("untested"))
      for (const auto& u : j.at("untested"))
        g.untested.push_back({u.at("source").get<std::string>(), u.at("target").get<std::string>(),
                              u.at("reason").get<std::string>()});
    return g;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Schema, std::string("graph JSON: ") + e.what());
  }
}

}  // namespace hoed::io
