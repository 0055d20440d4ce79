#pragma once

#include <string>
#include <vector>

#include "hoed/kinematics.hpp"
#include "hoed/series.hpp"

namespace hoed {

/// Direct (eps, d eps/dt) plane, or a delay embedding (x_t, x_{t-tau}, ..., x_{t-(m-1)tau}).
struct Embedding {
  enum class Kind { Direct, Delay };
  Kind kind = Kind::Direct;
  int delay = 1;
  int dimension = 2;

  std::string label() const;  ///< "direct(eps,v)" or "delay(tau,m)"
};

struct PhaseTrajectory {
  std::string id;  ///< entity or region
  Embedding embedding;
  bool standardized = true;
  std::vector<int> years;
  std::vector<std::vector<double>> points;

  std::size_t dimension() const { return points.empty() ? 0 : points.front().size(); }
};

/// Direct mode differentiates the series itself; delay mode needs (m-1)tau + 1 samples.
PhaseTrajectory embed(const Series& series, const Embedding& spec, bool standardize = true, std::string id = {});

/// Direct (eps, v) plane from a kinematic stack's own velocity field.
PhaseTrajectory embed(const KinematicStack& stack, bool standardize = true);

/// Per-coordinate z-score; a coordinate with zero spread becomes 0.
void standardize_coordinates(std::vector<std::vector<double>>& points);

struct PhaseMetrics {
  double path_length = 0.0;
  double bounding_box_area = 0.0;  ///< product of per-coordinate extents
  double recurrence_rate = 0.0;    ///< pairs i < j, j - i >= 2, within the radius
  double net_displacement = 0.0;
  double radius = 0.0;
};

PhaseMetrics trajectory_metrics(const PhaseTrajectory& trajectory, double recurrence_radius);

}  // namespace hoed
