#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hoed {

/// One observation of an annual series.
struct Point {
  int year = 0;
  double value = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

using Series = std::vector<Point>;

/// Observation whose value may be absent (boundary of a stencil, singular ratio, ...).
struct MaybePoint {
  int year = 0;
  std::optional<double> value;
  friend bool operator==(const MaybePoint&, const MaybePoint&) = default;
};

using MaybeSeries = std::vector<MaybePoint>;

/// Throws Spacing unless years advance by exactly one.
void require_unit_spacing(const Series& series, const std::string& what);

/// Splits a series with strictly increasing years into maximal consecutive-year runs.
std::vector<Series> split_runs(const Series& series);

/// Keeps only the defined entries.
Series defined_points(const MaybeSeries& series);

std::vector<double> values_of(const Series& series);
std::vector<int> years_of(const Series& series);

/// Inner join on year; both inputs must have strictly increasing years.
std::pair<Series, Series> align(const Series& a, const Series& b);

/// Per-year arithmetic mean over whichever members have that year.
Series mean_by_year(const std::vector<Series>& members);

}  // namespace hoed
