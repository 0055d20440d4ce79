#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hoed/elasticity.hpp"
#include "hoed/series.hpp"

namespace hoed {

/// Central-difference derivative of the given order (1, 2 or 3) on a unit-spaced series.
/// Samples are `dt` time units apart; points where the stencil does not fit are left undefined.
MaybeSeries differentiate(const Series& series, int order, double dt = 1.0);

struct KinematicPoint {
  int year = 0;
  double epsilon = 0.0;
  std::optional<double> velocity;
  std::optional<double> acceleration;
  std::optional<double> jerk;
};

/// Elasticity and its first three time derivatives over one gap-free run.
struct KinematicStack {
  std::string entity;
  double dt = 1.0;
  std::vector<KinematicPoint> points;

  MaybeSeries velocity() const;
  MaybeSeries acceleration() const;
  MaybeSeries jerk() const;
};

inline constexpr std::size_t kMinStackLength = 6;

KinematicStack kinematic_stack(const Series& epsilon, std::string entity = {}, double dt = 1.0);
KinematicStack kinematic_stack(const ElasticitySeries& es);

struct IndicatorRecord {
  int year = 0;
  std::optional<double> power;
  std::optional<double> kei;
  std::optional<double> inertia;
  std::optional<double> smoothness;  ///< undefined where |velocity + epsilon| < kSmoothnessGuard
  std::optional<double> drift;
  std::optional<double> shock;
};

struct IndicatorFrame {
  std::string entity;
  std::vector<IndicatorRecord> records;
};

inline constexpr double kSmoothnessGuard = 1e-9;

/// Power, KEI, Inertia, Smoothness, Drift (over `drift_window` samples) and Shock.
IndicatorFrame indicators(const KinematicStack& stack, int drift_window);

}  // namespace hoed
