#include "hoed/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hoed/error.hpp"

namespace hoed {

PersistenceDiagram rips_h0(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw Error(ErrorKind::InsufficientData, "persistence needs at least one point");
  const auto dim = points.front().size();
  for (const auto& p : points)
    if (p.size() != dim) throw Error(ErrorKind::Shape, "points differ in dimension");

  const auto n = points.size();
  const auto dist = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = points[a][k] - points[b][k];
      s += d * d;
    }
    return std::sqrt(s);
  };

  // Dense Prim: every component merge in the Rips filtration happens at an MST edge length.
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(n, false);
  std::vector<double> deaths;
  deaths.reserve(n - 1);
  best[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t next = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!in_tree[i] && (next == n || best[i] < best[next])) next = i;
    in_tree[next] = true;
    if (step > 0) deaths.push_back(best[next]);
    for (std::size_t i = 0; i < n; ++i)
      if (!in_tree[i]) best[i] = std::min(best[i], dist(next, i));
  }
  std::sort(deaths.begin(), deaths.end());

  PersistenceDiagram pd;
  pd.n_points = n;
  for (double d : deaths) pd.pairs.push_back({0.0, d});
  pd.infinite_births.push_back(0.0);
  return pd;
}

PersistenceSummary persistence_summary(const PersistenceDiagram& diagram) {
  PersistenceSummary s;
  for (const auto& p : diagram.pairs) {
    s.total_persistence += p.death - p.birth;
    s.max_death = std::max(s.max_death, p.death);
    ++s.finite_pairs;
  }
  return s;
}

}  // namespace hoed
