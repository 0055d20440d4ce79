#pragma once

#include <cstddef>
#include <vector>

namespace hoed {

struct PersistencePair {
  double birth = 0.0;
  double death = 0.0;
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

/// Degree-0 diagram: finite pairs sorted by death, plus the births of the essential classes.
struct PersistenceDiagram {
  int degree = 0;
  std::vector<PersistencePair> pairs;
  std::vector<double> infinite_births;
  std::size_t n_points = 0;
};

/// H0 persistence of the Euclidean Vietoris-Rips filtration (minimum spanning tree edge lengths).
PersistenceDiagram rips_h0(const std::vector<std::vector<double>>& points);

struct PersistenceSummary {
  double total_persistence = 0.0;
  double max_death = 0.0;
  std::size_t finite_pairs = 0;
};

PersistenceSummary persistence_summary(const PersistenceDiagram& diagram);

}  // namespace hoed
