#include "hoed/hamiltonian.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <map>

#include "hoed/error.hpp"

namespace hoed {

namespace {

void require_stiffness(double k) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw Error(ErrorKind::Parameter, "stiffness k must be finite and >= 0");
}

}  // namespace

Series classical_hamiltonian(const KinematicStack& stack, double stiffness) {
  require_stiffness(stiffness);
  Series out;
  for (const auto& p : stack.points)
    if (p.velocity) out.push_back({p.year, 0.5 * *p.velocity * *p.velocity + 0.5 * stiffness * p.epsilon * p.epsilon});
  return out;
}

Series hamilton_residual(const KinematicStack& stack, double stiffness) {
  require_stiffness(stiffness);
  Series out;
  for (const auto& p : stack.points)
    if (p.acceleration) out.push_back({p.year, *p.acceleration + stiffness * p.epsilon});
  return out;
}

double hamiltonian_value(double epsilon, double velocity, double acceleration, double jerk, const Alpha& alpha) {
  return alpha.power * acceleration * acceleration + alpha.inertia * epsilon * jerk -
         alpha.kei * 0.5 * velocity * velocity;
}

Series HamiltonianTrace::energy() const {
  Series s;
  for (const auto& r : records) s.push_back({r.year, r.energy});
  return s;
}

MaybeSeries HamiltonianTrace::system_power() const {
  MaybeSeries s;
  for (const auto& r : records) s.push_back({r.year, r.system_power});
  return s;
}

MaybeSeries HamiltonianTrace::policy() const {
  MaybeSeries s;
  for (const auto& r : records) s.push_back({r.year, r.policy_sensitivity});
  return s;
}

HamiltonianTrace generalized_hamiltonian(const KinematicStack& stack, const Alpha& alpha, PowerScheme scheme) {
  HamiltonianTrace trace;
  trace.entity = stack.entity;
  trace.alpha = alpha;
  trace.scheme = scheme;
  trace.dt = stack.dt;
  for (const auto& p : stack.points) {
    if (!p.velocity || !p.acceleration || !p.jerk) continue;
    HamiltonianRecord r;
    r.year = p.year;
    r.energy = hamiltonian_value(p.epsilon, *p.velocity, *p.acceleration, *p.jerk, alpha);
    r.marginal_response = alpha.inertia * *p.jerk;
    trace.records.push_back(r);
  }
  if (trace.records.size() < 3)
    throw Error(ErrorKind::InsufficientData, "generalized Hamiltonian needs 3 years with velocity, acceleration "
                                             "and jerk defined, got " + std::to_string(trace.records.size()));
  auto& rec = trace.records;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (scheme == PowerScheme::Central) {
      if (i >= 1 && i + 1 < rec.size() && rec[i - 1].year + 1 == rec[i].year && rec[i].year + 1 == rec[i + 1].year)
        rec[i].system_power = (rec[i + 1].energy - rec[i - 1].energy) / (2.0 * stack.dt);
    } else if (i + 1 < rec.size() && rec[i].year + 1 == rec[i + 1].year) {
      rec[i].system_power = (rec[i + 1].energy - rec[i].energy) / stack.dt;
    }
  }
  try {
    const auto ps = policy_sensitivity(trace, stack, alpha);
    std::size_t k = 0;
    for (auto& r : rec) {
      while (k < ps.size() && ps[k].year < r.year) ++k;
      if (k < ps.size() && ps[k].year == r.year) r.policy_sensitivity = ps[k].value;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InsufficientData) throw;
  }
  return trace;
}

namespace {

struct CalibrationRows {
  std::vector<std::array<double, 3>> x;
  std::vector<double> y;
};

void collect_rows(const KinematicStack& stack, const Series& target, CalibrationRows& rows) {
  std::map<int, double> by_year;
  for (const auto& p : target) by_year[p.year] = p.value;
  for (const auto& p : stack.points) {
    if (!p.velocity || !p.acceleration || !p.jerk) continue;
    const auto it = by_year.find(p.year);
    if (it == by_year.end()) continue;
    rows.x.push_back({*p.acceleration * *p.acceleration, p.epsilon * *p.jerk, -0.5 * *p.velocity * *p.velocity});
    rows.y.push_back(it->second);
  }
}

Alpha solve_calibration(const CalibrationRows& rows) {
  const auto n = rows.y.size();
  if (n < 6)
    throw Error(ErrorKind::InsufficientData, "alpha calibration needs 6 overlapping years, got " + std::to_string(n));
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd target(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) design(static_cast<Eigen::Index>(i), c) = rows.x[i][static_cast<std::size_t>(c)];
    target(static_cast<Eigen::Index>(i)) = rows.y[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) throw Error(ErrorKind::Degenerate, "Power, Inertia and KEI regressors are collinear");
  const Eigen::VectorXd coef = qr.solve(target);
  const double ssr = (target - design * coef).squaredNorm();
  const double sst = (target.array() - target.mean()).square().sum();
  Alpha alpha{coef(0), coef(1), coef(2), Alpha::Provenance::Calibrated, sst > 0.0 ? 1.0 - ssr / sst : 1.0};
  return alpha;
}

}  // namespace

Alpha calibrate_alpha(const KinematicStack& stack, const Series& target) {
  CalibrationRows rows;
  collect_rows(stack, target, rows);
  return solve_calibration(rows);
}

Alpha calibrate_alpha(const std::vector<std::pair<KinematicStack, Series>>& samples) {
  CalibrationRows rows;
  for (const auto& [stack, target] : samples) collect_rows(stack, target, rows);
  return solve_calibration(rows);
}

Series marginal_response(const KinematicStack& stack, const Alpha& alpha) {
  Series out;
  for (const auto& p : stack.points)
    if (p.jerk) out.push_back({p.year, alpha.inertia * *p.jerk});
  return out;
}

Series policy_sensitivity(const HamiltonianTrace& trace, const KinematicStack& stack, const Alpha& alpha) {
  std::map<int, double> energy;
  for (const auto& r : trace.records) energy[r.year] = r.energy;
  const auto& pts = stack.points;
  const double dt = stack.dt;
  Series out;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& prev = pts[i - 1];
    const auto& next = pts[i + 1];
    if (prev.year + 1 != p.year || p.year + 1 != next.year) continue;
    if (!p.velocity || !p.acceleration || !p.jerk) continue;
    if (!prev.acceleration || !next.acceleration || !prev.jerk || !next.jerk) continue;
    const auto h_prev = energy.find(prev.year);
    const auto h_next = energy.find(next.year);
    if (h_prev == energy.end() || h_next == energy.end()) continue;

    const double dH = (h_next->second - h_prev->second) / (2.0 * dt);
    const double a_dot = (*next.acceleration - *prev.acceleration) / (2.0 * dt);
    const double j_dot = (*next.jerk - *prev.jerk) / (2.0 * dt);
    const double v = *p.velocity, a = *p.acceleration, j = *p.jerk;
    const double chain = alpha.inertia * j * v + (-alpha.kei * v) * a + 2.0 * alpha.power * a * a_dot +
                         alpha.inertia * p.epsilon * j_dot;
    out.push_back({p.year, dH - chain});
  }
  if (out.empty())
    throw Error(ErrorKind::InsufficientData, "policy sensitivity needs a year with dH, a' and j' defined");
  return out;
}

}  // namespace hoed
