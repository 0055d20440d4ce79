#include "hoed/panel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "hoed/error.hpp"
#include "hoed/text.hpp"

namespace hoed {

std::size_t Panel::variable_index(std::string_view name) const {
  const auto it = std::find(variables.begin(), variables.end(), name);
  if (it == variables.end()) throw Error(ErrorKind::Lookup, "unknown variable '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - variables.begin());
}

bool Panel::has_variable(std::string_view name) const {
  return std::find(variables.begin(), variables.end(), name) != variables.end();
}

std::vector<std::string> Panel::entities() const {
  std::vector<std::string> out;
  for (const auto& o : observations)
    if (out.empty() || out.back() != o.entity) out.push_back(o.entity);
  return out;
}

std::string Panel::region_of(std::string_view entity) const {
  for (const auto& o : observations)
    if (o.entity == entity) return o.region;
  return {};
}

MaybeSeries Panel::column(std::string_view entity, std::string_view variable) const {
  const auto idx = variable_index(variable);
  MaybeSeries out;
  for (const auto& o : observations)
    if (o.entity == entity) out.push_back({o.year, o.values[idx]});
  return out;
}

namespace {

bool is_missing_token(const std::string& t) { return t.empty() || t == "NA"; }

std::size_t find_column(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? header.size() : static_cast<std::size_t>(it - header.begin());
}

}  // namespace

Panel load_panel(std::string_view csv, const PanelSchema& schema) {
  const auto records = text::parse_csv(csv);
  if (records.empty()) throw Error(ErrorKind::EmptyInput, "input CSV is empty");

  std::vector<std::string> header;
  for (const auto& h : records.front()) header.push_back(text::trim(h));

  const auto entity_col = find_column(header, schema.entity_column);
  const auto year_col = find_column(header, schema.year_column);
  std::vector<std::string> missing_cols;
  if (entity_col == header.size()) missing_cols.push_back(schema.entity_column);
  if (year_col == header.size()) missing_cols.push_back(schema.year_column);

  std::vector<std::string> vars = schema.variables;
  if (vars.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (i != entity_col && i != year_col) vars.push_back(header[i]);
  }
  std::vector<std::size_t> var_cols;
  for (const auto& v : vars) {
    const auto c = find_column(header, v);
    if (c == header.size()) missing_cols.push_back(v);
    var_cols.push_back(c);
  }
  if (!missing_cols.empty()) {
    std::string msg = "missing mandated column(s):";
    for (const auto& c : missing_cols) msg += " " + c;
    throw Error(ErrorKind::Schema, msg);
  }
  if (vars.size() < 2) throw Error(ErrorKind::Schema, "schema needs at least two numeric variable columns");
  if (std::set<std::string>(vars.begin(), vars.end()).size() != vars.size())
    throw Error(ErrorKind::Schema, "variable columns are not unique");

  Panel panel;
  panel.variables = vars;
  panel.input_rows = records.size() - 1;
  if (panel.input_rows == 0) throw Error(ErrorKind::EmptyInput, "input CSV has a header but no data rows");

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::size_t line = r + 1;
    if (rec.size() != header.size()) {
      panel.dropped.push_back({line, "expected " + std::to_string(header.size()) + " fields, found " +
                                         std::to_string(rec.size())});
      continue;
    }
    Observation obs;
    obs.entity = text::trim(rec[entity_col]);
    if (obs.entity.empty()) {
      panel.dropped.push_back({line, "empty entity"});
      continue;
    }
    const auto year = text::parse_integer(rec[year_col]);
    if (!year || *year < -100000 || *year > 100000) {
      panel.dropped.push_back({line, "unparsable year '" + text::trim(rec[year_col]) + "'"});
      continue;
    }
    obs.year = static_cast<int>(*year);
    obs.values.reserve(vars.size());
    for (const auto c : var_cols) {
      const std::string cell = text::trim(rec[c]);
      obs.values.push_back(is_missing_token(cell) ? std::nullopt : text::parse_real(cell));
    }
    panel.observations.push_back(std::move(obs));
  }

  std::sort(panel.observations.begin(), panel.observations.end(),
            [](const Observation& a, const Observation& b) {
              return std::tie(a.entity, a.year) < std::tie(b.entity, b.year);
            });

  std::vector<std::string> offenders;
  for (std::size_t i = 1; i < panel.observations.size(); ++i) {
    const auto& a = panel.observations[i - 1];
    const auto& b = panel.observations[i];
    if (a.entity == b.entity && a.year == b.year) {
      std::string key = b.entity + "/" + std::to_string(b.year);
      if (offenders.empty() || offenders.back() != key) offenders.push_back(std::move(key));
    }
  }
  if (!offenders.empty()) {
    std::string msg = "duplicate (entity, year) keys:";
    for (const auto& o : offenders) msg += " " + o;
    throw Error(ErrorKind::Duplicate, msg);
  }
  return panel;
}

std::string write_panel_csv(const Panel& panel) {
  std::vector<std::string> header{"entity", "year"};
  header.insert(header.end(), panel.variables.begin(), panel.variables.end());
  std::string out = text::csv_row(header);
  for (const auto& o : panel.observations) {
    std::vector<std::string> row{o.entity, std::to_string(o.year)};
    for (const auto& v : o.values) row.push_back(text::format_real(v));
    out += text::csv_row(row);
  }
  return out;
}

Panel log_transform(const Panel& panel, const std::vector<std::string>& vars) {
  Panel out = panel;
  for (const auto& var : vars) {
    const auto src = panel.variable_index(var);
    const std::string name = "log_" + var;
    std::size_t dst = 0;
    if (out.has_variable(name)) {
      dst = out.variable_index(name);
    } else {
      dst = out.variables.size();
      out.variables.push_back(name);
      for (auto& o : out.observations) o.values.emplace_back();
    }
    std::size_t nonpositive = 0;
    for (auto& o : out.observations) {
      const auto& v = o.values[src];
      if (v && *v > 0.0) {
        o.values[dst] = std::log(*v);
      } else {
        if (v) ++nonpositive;
        o.values[dst] = std::nullopt;
      }
    }
    out.nonpositive_under_log[name] = nonpositive;
  }
  return out;
}

RegionMap::RegionMap(std::map<std::string, std::string> entity_to_region) : map_(std::move(entity_to_region)) {
  for (const auto& [entity, region] : map_)
    if (region.empty()) throw Error(ErrorKind::Parameter, "empty region name for entity '" + entity + "'");
}

const std::string& RegionMap::region_of(const std::string& entity) const {
  static const std::string unassigned(kUnassignedRegion);
  const auto it = map_.find(entity);
  return it == map_.end() ? unassigned : it->second;
}

Panel assign_regions(const Panel& panel, const RegionMap& map) {
  Panel out = panel;
  for (auto& o : out.observations) o.region = map.region_of(o.entity);
  return out;
}

ValidationReport validate_panel(const Panel& panel, int min_segment_length) {
  if (min_segment_length < 1) throw Error(ErrorKind::Parameter, "min_segment_length must be >= 1");
  ValidationReport report;
  report.input_rows = panel.input_rows;
  report.retained_rows = panel.observations.size();
  report.dropped = panel.dropped;
  report.nonpositive_under_log = panel.nonpositive_under_log;
  for (std::size_t v = 0; v < panel.variables.size(); ++v) {
    std::size_t missing = 0;
    for (const auto& o : panel.observations)
      if (!o.values[v]) ++missing;
    report.missingness[panel.variables[v]] = missing;
  }
  for (std::size_t i = 0; i < panel.observations.size(); ++i) {
    const auto& o = panel.observations[i];
    auto& segs = report.segments[o.entity];
    const bool extends = i > 0 && panel.observations[i - 1].entity == o.entity &&
                         panel.observations[i - 1].year + 1 == o.year;
    if (extends) {
      segs.back().end = o.year;
    } else {
      segs.push_back({o.year, o.year, true});
    }
  }
  for (auto& [entity, segs] : report.segments)
    for (auto& s : segs) s.usable = s.length() >= min_segment_length;
  return report;
}

}  // namespace hoed
