#include "hoed/series.hpp"

#include <map>

#include "hoed/error.hpp"

namespace hoed {

void require_unit_spacing(const Series& series, const std::string& what) {
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i].year != series[i - 1].year + 1) {
      throw Error(ErrorKind::Spacing, what + ": years " + std::to_string(series[i - 1].year) + " and " +
                                          std::to_string(series[i].year) + " are not consecutive");
    }
  }
}

std::vector<Series> split_runs(const Series& series) {
  std::vector<Series> runs;
  for (const auto& p : series) {
    if (runs.empty() || runs.back().back().year + 1 != p.year) runs.emplace_back();
    runs.back().push_back(p);
  }
  return runs;
}

Series defined_points(const MaybeSeries& series) {
  Series out;
  for (const auto& p : series)
    if (p.value) out.push_back({p.year, *p.value});
  return out;
}

std::vector<double> values_of(const Series& series) {
  std::vector<double> v;
  v.reserve(series.size());
  for (const auto& p : series) v.push_back(p.value);
  return v;
}

std::vector<int> years_of(const Series& series) {
  std::vector<int> v;
  v.reserve(series.size());
  for (const auto& p : series) v.push_back(p.year);
  return v;
}

std::pair<Series, Series> align(const Series& a, const Series& b) {
  Series ra, rb;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].year < b[j].year) {
      ++i;
    } else if (b[j].year < a[i].year) {
      ++j;
    } else {
      ra.push_back(a[i++]);
      rb.push_back(b[j++]);
    }
  }
  return {std::move(ra), std::move(rb)};
}

Series mean_by_year(const std::vector<Series>& members) {
  std::map<int, std::pair<double, std::size_t>> acc;
  for (const auto& m : members)
    for (const auto& p : m) {
      auto& [sum, count] = acc[p.year];
      sum += p.value;
      ++count;
    }
  Series out;
  out.reserve(acc.size());
  for (const auto& [year, sc] : acc) out.push_back({year, sc.first / static_cast<double>(sc.second)});
  return out;
}

}  // namespace hoed
