#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hoed/series.hpp"

namespace hoed {

/// One (entity, year) row. `values` is aligned with Panel::variables; std::nullopt marks a missing cell.
struct Observation {
  std::string entity;
  int year = 0;
  std::vector<std::optional<double>> values;
  std::string region;  ///< empty until assign_regions runs

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct DroppedRow {
  std::size_t line = 0;  ///< 1-based line in the source, header is line 1
  std::string reason;
  friend bool operator==(const DroppedRow&, const DroppedRow&) = default;
};

/// Long-format annual panel. Observations are sorted by (entity, year) and keys are unique.
struct Panel {
  std::vector<std::string> variables;
  std::vector<Observation> observations;

  // Ingest bookkeeping, carried into the ValidationReport.
  std::size_t input_rows = 0;
  std::vector<DroppedRow> dropped;
  std::map<std::string, std::size_t> nonpositive_under_log;

  std::size_t variable_index(std::string_view name) const;  // throws Lookup
  bool has_variable(std::string_view name) const;
  std::vector<std::string> entities() const;
  std::string region_of(std::string_view entity) const;

  /// Values of one variable for one entity, in year order, missing cells included.
  MaybeSeries column(std::string_view entity, std::string_view variable) const;
};

/// Column mapping for load_panel.
struct PanelSchema {
  std::string entity_column = "entity";
  std::string year_column = "year";
  std::vector<std::string> variables;  ///< empty selects every other column
};

Panel load_panel(std::string_view csv, const PanelSchema& schema = {});
std::string write_panel_csv(const Panel& panel);

/// Adds log_<var> columns. Non-positive or missing inputs give missing outputs.
Panel log_transform(const Panel& panel, const std::vector<std::string>& vars);

inline constexpr std::string_view kUnassignedRegion = "UNASSIGNED";

class RegionMap {
 public:
  RegionMap() = default;
  explicit RegionMap(std::map<std::string, std::string> entity_to_region);

  const std::string& region_of(const std::string& entity) const;
  const std::map<std::string, std::string>& entries() const { return map_; }

  /// The six-region country grouping of the GDP/CO2 study sample.
  static RegionMap study_sample();
  /// Either {"Region": ["Entity", ...]} JSON or an entity,region CSV (detected from content).
  static RegionMap parse(std::string_view content);

 private:
  std::map<std::string, std::string> map_;
};

Panel assign_regions(const Panel& panel, const RegionMap& map);

struct Segment {
  int start = 0;
  int end = 0;
  bool usable = true;
  int length() const { return end - start + 1; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct ValidationReport {
  std::map<std::string, std::vector<Segment>> segments;
  std::size_t input_rows = 0;
  std::size_t retained_rows = 0;
  std::vector<DroppedRow> dropped;
  std::map<std::string, std::size_t> missingness;
  std::map<std::string, std::size_t> nonpositive_under_log;
};

/// Maximal consecutive-year segments per entity; segments shorter than min_segment_length are unusable.
ValidationReport validate_panel(const Panel& panel, int min_segment_length);

}  // namespace hoed
