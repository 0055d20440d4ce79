#include "hoed/phase_space.hpp"

#include <algorithm>
#include <cmath>

#include "hoed/error.hpp"

namespace hoed {

std::string Embedding::label() const {
  if (kind == Kind::Direct) return "direct(eps,v)";
  return "delay(" + std::to_string(delay) + "," + std::to_string(dimension) + ")";
}

void standardize_coordinates(std::vector<std::vector<double>>& points) {
  if (points.empty()) return;
  const auto m = points.front().size();
  const auto n = static_cast<double>(points.size());
  for (std::size_t c = 0; c < m; ++c) {
    double mean = 0.0;
    for (const auto& p : points) mean += p[c];
    mean /= n;
    double var = 0.0;
    for (const auto& p : points) var += (p[c] - mean) * (p[c] - mean);
    const double sd = std::sqrt(var / n);
    for (auto& p : points) p[c] = sd > 0.0 ? (p[c] - mean) / sd : 0.0;
  }
}

PhaseTrajectory embed(const Series& series, const Embedding& spec, bool standardize, std::string id) {
  PhaseTrajectory traj;
  traj.id = std::move(id);
  traj.embedding = spec;
  traj.standardized = standardize;
  if (spec.kind == Embedding::Kind::Direct) {
    traj.embedding.delay = 1;
    traj.embedding.dimension = 2;
    if (series.size() < 3) throw Error(ErrorKind::InsufficientData, "direct embedding needs 3 samples");
    const auto v = differentiate(series, 1);
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (!v[i].value) continue;
      traj.years.push_back(series[i].year);
      traj.points.push_back({series[i].value, *v[i].value});
    }
  } else {
    if (spec.delay < 1 || spec.dimension < 1) throw Error(ErrorKind::Parameter, "delay and dimension must be >= 1");
    require_unit_spacing(series, "delay embedding");
    const auto span = static_cast<std::size_t>(spec.dimension - 1) * static_cast<std::size_t>(spec.delay);
    if (series.size() < span + 1)
      throw Error(ErrorKind::InsufficientData, spec.label() + " needs " + std::to_string(span + 1) + " samples");
    for (std::size_t t = span; t < series.size(); ++t) {
      std::vector<double> p;
      for (int k = 0; k < spec.dimension; ++k) p.push_back(series[t - static_cast<std::size_t>(k * spec.delay)].value);
      traj.years.push_back(series[t].year);
      traj.points.push_back(std::move(p));
    }
  }
  if (standardize) standardize_coordinates(traj.points);
  return traj;
}

PhaseTrajectory embed(const KinematicStack& stack, bool standardize) {
  PhaseTrajectory traj;
  traj.id = stack.entity;
  traj.standardized = standardize;
  for (const auto& p : stack.points) {
    if (!p.velocity) continue;
    traj.years.push_back(p.year);
    traj.points.push_back({p.epsilon, *p.velocity});
  }
  if (traj.points.empty()) throw Error(ErrorKind::InsufficientData, "stack has no defined velocity");
  if (standardize) standardize_coordinates(traj.points);
  return traj;
}

namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

PhaseMetrics trajectory_metrics(const PhaseTrajectory& trajectory, double recurrence_radius) {
  if (!(recurrence_radius > 0.0)) throw Error(ErrorKind::Parameter, "recurrence radius must be > 0");
  const auto& pts = trajectory.points;
  if (pts.size() < 2) throw Error(ErrorKind::InsufficientData, "trajectory metrics need 2 points");
  const auto m = pts.front().size();
  for (const auto& p : pts)
    if (p.size() != m) throw Error(ErrorKind::Shape, "trajectory points differ in dimension");

  PhaseMetrics metrics;
  metrics.radius = recurrence_radius;
  for (std::size_t i = 1; i < pts.size(); ++i) metrics.path_length += distance(pts[i - 1], pts[i]);
  metrics.net_displacement = distance(pts.front(), pts.back());
  metrics.bounding_box_area = 1.0;
  for (std::size_t c = 0; c < m; ++c) {
    const auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                              [c](const auto& a, const auto& b) { return a[c] < b[c]; });
    metrics.bounding_box_area *= (*hi)[c] - (*lo)[c];
  }
  std::size_t pairs = 0, close = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 2; j < pts.size(); ++j) {
      ++pairs;
      if (distance(pts[i], pts[j]) <= recurrence_radius) ++close;
    }
  metrics.recurrence_rate = pairs ? static_cast<double>(close) / static_cast<double>(pairs) : 0.0;
  return metrics;
}

}  // namespace hoed
