#include "hoed/kinematics.hpp"

#include <cmath>

#include "hoed/error.hpp"

namespace hoed {

MaybeSeries differentiate(const Series& series, int order, double dt) {
  if (order < 1 || order > 3) throw Error(ErrorKind::Parameter, "derivative order must be 1, 2 or 3");
  if (!(dt > 0.0)) throw Error(ErrorKind::Parameter, "sample spacing must be positive");
  if (series.size() < static_cast<std::size_t>(order) + 2)
    throw Error(ErrorKind::InsufficientData, "order-" + std::to_string(order) + " derivative needs " +
                                                 std::to_string(order + 2) + " samples, got " +
                                                 std::to_string(series.size()));
  require_unit_spacing(series, "differentiate");

  const auto n = series.size();
  const std::size_t reach = order == 3 ? 2 : 1;
  MaybeSeries out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].year = series[i].year;
    if (i < reach || i + reach >= n) continue;
    const auto f = [&](int k) { return series[i + k].value; };
    switch (order) {
      case 1: out[i].value = (f(1) - f(-1)) / (2.0 * dt); break;
      case 2: out[i].value = (f(1) - 2.0 * f(0) + f(-1)) / (dt * dt); break;
      default: out[i].value = (f(2) - 2.0 * f(1) + 2.0 * f(-1) - f(-2)) / (2.0 * dt * dt * dt); break;
    }
  }
  return out;
}

namespace {

MaybeSeries project(const KinematicStack& s, std::optional<double> KinematicPoint::*field) {
  MaybeSeries out;
  out.reserve(s.points.size());
  for (const auto& p : s.points) out.push_back({p.year, p.*field});
  return out;
}

}  // namespace

MaybeSeries KinematicStack::velocity() const { return project(*this, &KinematicPoint::velocity); }
MaybeSeries KinematicStack::acceleration() const { return project(*this, &KinematicPoint::acceleration); }
MaybeSeries KinematicStack::jerk() const { return project(*this, &KinematicPoint::jerk); }

KinematicStack kinematic_stack(const Series& epsilon, std::string entity, double dt) {
  if (epsilon.size() < kMinStackLength)
    throw Error(ErrorKind::InsufficientData, "kinematic stack needs " + std::to_string(kMinStackLength) +
                                                 " consecutive elasticity points, got " +
                                                 std::to_string(epsilon.size()));
  const auto v = differentiate(epsilon, 1, dt);
  const auto a = differentiate(epsilon, 2, dt);
  const auto j = differentiate(epsilon, 3, dt);
  KinematicStack stack;
  stack.entity = std::move(entity);
  stack.dt = dt;
  stack.points.reserve(epsilon.size());
  for (std::size_t i = 0; i < epsilon.size(); ++i)
    stack.points.push_back({epsilon[i].year, epsilon[i].value, v[i].value, a[i].value, j[i].value});
  return stack;
}

KinematicStack kinematic_stack(const ElasticitySeries& es) { return kinematic_stack(es.epsilon(), es.entity); }

IndicatorFrame indicators(const KinematicStack& stack, int drift_window) {
  if (drift_window < 1) throw Error(ErrorKind::Parameter, "drift window must be >= 1");
  IndicatorFrame frame;
  frame.entity = stack.entity;
  const auto& pts = stack.points;
  const auto w = static_cast<std::size_t>(drift_window);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    IndicatorRecord r;
    r.year = p.year;
    if (p.acceleration) r.power = *p.acceleration * *p.acceleration;
    if (p.velocity) r.kei = 0.5 * *p.velocity * *p.velocity;
    if (p.jerk) r.inertia = p.epsilon * *p.jerk;
    if (p.acceleration && p.velocity) {
      const double denom = *p.velocity + p.epsilon;
      if (std::abs(denom) >= kSmoothnessGuard) r.smoothness = *p.acceleration / denom;
    }
    if (i >= w && pts[i - w].year == p.year - drift_window)
      r.drift = (p.epsilon - pts[i - w].epsilon) / static_cast<double>(drift_window);
    if (i >= 1 && p.acceleration && pts[i - 1].acceleration && pts[i - 1].year + 1 == p.year)
      r.shock = *p.acceleration - *pts[i - 1].acceleration;
    if (r.power || r.kei || r.inertia || r.smoothness || r.drift || r.shock) frame.records.push_back(r);
  }
  return frame;
}

}  // namespace hoed
