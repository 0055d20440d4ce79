#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../support/check.hpp"
#include "../support/generators.hpp"
#include "hoed/hamiltonian.hpp"
#include "hoed/synthetic.hpp"

using namespace hoed;
using hoed::testing::rel_err;

namespace {

KinematicStack oscillator_stack(double dt, double periods = 10.0) {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::Oscillator;
  spec.dt = dt;
  spec.periods = periods;
  return kinematic_stack(generate_oscillator(spec), "osc", dt);
}

double relative_drift(const Series& h) {
  double lo = h.front().value, hi = lo;
  for (const auto& p : h) {
    lo = std::min(lo, p.value);
    hi = std::max(hi, p.value);
  }
  return (hi - lo) / std::abs(h.front().value);
}

KinematicStack polynomial_stack(const std::vector<double>& c, int n, double dt) {
  Series s;
  for (int i = 0; i < n; ++i) s.push_back({i, testing::Gen::horner(c, i * dt)});
  return kinematic_stack(s, "poly", dt);
}

Alpha weights(double p, double i, double k) {
  Alpha a;
  a.power = p;
  a.inertia = i;
  a.kei = k;
  return a;
}

}  // namespace

TEST_CASE("classical energy of the unit oscillator is conserved to second order") {
  const auto coarse = classical_hamiltonian(oscillator_stack(0.01), 1.0);
  for (const auto& p : coarse) CHECK(std::abs(p.value - 0.5) < 1e-4);
  const double d1 = relative_drift(coarse);
  const double d2 = relative_drift(classical_hamiltonian(oscillator_stack(0.005), 1.0));
  CHECK(d1 < 1e-3);
  CHECK(d1 / d2 >= 3.5);

  const auto residual = hamilton_residual(oscillator_stack(0.01), 1.0);
  for (const auto& p : residual) CHECK(std::abs(p.value) < 1e-4);
  CHECK_ERROR_KIND(classical_hamiltonian(oscillator_stack(0.01, 1.0), -1.0), ErrorKind::Parameter);
}

TEST_CASE("generalized Hamiltonian selector weights") {
  testing::Gen gen(8);
  const auto stack = gen.random_stack(20);
  const auto frame = indicators(stack, 3);
  const auto power = generalized_hamiltonian(stack, weights(1, 0, 0));
  const auto inertia = generalized_hamiltonian(stack, weights(0, 1, 0));
  const auto kei = generalized_hamiltonian(stack, weights(0, 0, 1));
  for (std::size_t i = 0; i < frame.records.size(); ++i) {
    CHECK(power.records[i].energy == *frame.records[i].power);
    CHECK(inertia.records[i].energy == *frame.records[i].inertia);
    CHECK(kei.records[i].energy == -*frame.records[i].kei);
  }
}

TEST_CASE("generalized Hamiltonian is linear in its weights") {
  testing::Gen gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto stack = gen.random_stack(10);
    const auto a = weights(gen.uniform(-2, 2), gen.uniform(-2, 2), gen.uniform(-2, 2));
    const auto b = weights(gen.uniform(-2, 2), gen.uniform(-2, 2), gen.uniform(-2, 2));
    const auto ha = generalized_hamiltonian(stack, a), hb = generalized_hamiltonian(stack, b);
    const auto hab = generalized_hamiltonian(stack, a + b);
    for (std::size_t i = 0; i < hab.records.size(); ++i)
      CHECK(std::abs(hab.records[i].energy - ha.records[i].energy - hb.records[i].energy) < 1e-12);
  }
}

TEST_CASE("marginal response matches a symmetric difference of H in epsilon") {
  testing::Gen gen(4);
  int checked = 0;
  while (checked < 500) {
    const double eps = gen.uniform(-2, 2), v = gen.uniform(-1, 1), a = gen.uniform(-1, 1), j = gen.uniform(-1, 1);
    if (std::abs(j) <= 1e-3) continue;
    const auto alpha = weights(gen.uniform(0.1, 3), gen.uniform(0.1, 3), gen.uniform(0.1, 3));
    KinematicStack s;
    s.points.push_back({0, eps, v, a, j});
    const double analytic = marginal_response(s, alpha).at(0).value;
    const double h = 1e-5;
    const double fd = (hamiltonian_value(eps + h, v, a, j, alpha) - hamiltonian_value(eps - h, v, a, j, alpha)) / (2 * h);
    CHECK(std::abs(fd - analytic) <= 1e-6 * std::abs(analytic));
    ++checked;
  }
}

TEST_CASE("system power schemes") {
  testing::Gen gen(13);
  const auto stack = gen.random_stack(15);
  const auto central = generalized_hamiltonian(stack, Alpha{});
  CHECK_FALSE(central.records.front().system_power);
  CHECK_FALSE(central.records.back().system_power);
  const auto& r = central.records;
  CHECK(*r[5].system_power == (r[6].energy - r[4].energy) / 2.0);

  const auto fwd = generalized_hamiltonian(stack, Alpha{}, PowerScheme::Forward);
  double sum = 0.0;
  for (const auto& rec : fwd.records)
    if (rec.system_power) sum += *rec.system_power;
  const double span = fwd.records.back().energy - fwd.records.front().energy;
  CHECK(std::abs(sum - span) < 1e-12 * std::max(1.0, std::abs(span)) * fwd.records.size());
}

TEST_CASE("generalized Hamiltonian errors") {
  testing::Gen gen(1);
  CHECK_ERROR_KIND(generalized_hamiltonian(gen.random_stack(2), Alpha{}), ErrorKind::InsufficientData);
}

TEST_CASE("calibrate_alpha recovers planted weights") {
  testing::Gen gen(17);
  const auto stack = gen.random_stack(30);
  const auto frame = indicators(stack, 3);
  Series target, power_only;
  for (const auto& r : frame.records) {
    target.push_back({r.year, 2 * *r.power + 3 * *r.inertia - *r.kei});
    power_only.push_back({r.year, *r.power});
  }
  const auto a = calibrate_alpha(stack, target);
  CHECK(std::abs(a.power - 2) < 1e-9);
  CHECK(std::abs(a.inertia - 3) < 1e-9);
  CHECK(std::abs(a.kei - 1) < 1e-9);
  CHECK(std::abs(*a.calibration_r2 - 1) < 1e-12);
  CHECK(a.provenance == Alpha::Provenance::Calibrated);
  const auto p = calibrate_alpha(stack, power_only);
  CHECK(std::abs(p.power - 1) < 1e-9);
  CHECK(std::abs(p.inertia) < 1e-9);
  CHECK(std::abs(p.kei) < 1e-9);

  const auto noise = normal_noise(target.size(), 0.01, 11);
  auto noisy = target;
  for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i].value += noise[i];
  const auto n = calibrate_alpha(stack, noisy);
  CHECK(std::abs(n.power - 2) < 0.1);
  CHECK(std::abs(n.inertia - 3) < 0.1);
  CHECK(std::abs(n.kei - 1) < 0.1);

  std::vector<std::pair<KinematicStack, Series>> pooled{{stack, target}, {gen.random_stack(10), Series{}}};
  CHECK(std::abs(calibrate_alpha(pooled).inertia - 3) < 1e-9);
}

TEST_CASE("calibrate_alpha errors") {
  testing::Gen gen(2);
  const auto stack = gen.random_stack(5);
  Series target;
  for (const auto& p : stack.points) target.push_back({p.year, 1.0});
  CHECK_ERROR_KIND(calibrate_alpha(stack, target), ErrorKind::InsufficientData);

  // A linear trajectory has a = j = 0 so Power and Inertia columns vanish.
  Series lin, t2;
  for (int i = 0; i < 12; ++i) {
    lin.push_back({i, 0.5 * i});
    t2.push_back({i, 1.0});
  }
  CHECK_ERROR_KIND(calibrate_alpha(kinematic_stack(lin), t2), ErrorKind::Degenerate);
}

TEST_CASE("policy sensitivity on polynomial and smooth trajectories") {
  testing::Gen gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = gen.polynomial(2, 2.0);
    const auto alpha = weights(gen.uniform(0, 2), gen.uniform(0, 2), gen.uniform(0, 2));
    const auto stack = polynomial_stack(c, 20, 1.0);
    const auto trace = generalized_hamiltonian(stack, alpha);
    for (const auto& p : policy_sensitivity(trace, stack, alpha)) CHECK(std::abs(p.value) < 1e-10);
  }

  // Cubic: the central dH picks up -alpha_kei * (dt^2 / 2) v''' v contributions that leave eps(t)
  // with a closed-form residual -3 alpha_kei c3 dt^2 a_t (every other term cancels exactly).
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = gen.polynomial(3, 1.0);
    const double dt = gen.uniform(0.1, 1.0);
    const auto alpha = weights(gen.uniform(0, 2), gen.uniform(0, 2), gen.uniform(0, 2));
    const auto stack = polynomial_stack(c, 20, dt);
    const auto trace = generalized_hamiltonian(stack, alpha);
    const auto ps = policy_sensitivity(trace, stack, alpha);
    double fmax = 0.0;
    for (const auto& q : stack.points) fmax = std::max(fmax, std::abs(q.epsilon));
    // Rounding in the jerk difference grows like |eps| / dt^4 and enters H through a product.
    const double tol = 1e-14 * (1 + fmax) * (1 + fmax) / (dt * dt * dt * dt);
    for (const auto& p : ps) {
      const double t = p.year * dt;
      const double a = 2 * c[2] + 6 * c[3] * t;
      const double expected = -3.0 * alpha.kei * c[3] * dt * dt * a;
      CHECK(std::abs(p.value - expected) < tol);
    }
  }

  Series wave;
  for (int t = 0; t < 120; ++t) wave.push_back({t, std::cos(0.2 * t)});
  const auto ws = kinematic_stack(wave);
  const auto tr = generalized_hamiltonian(ws, Alpha{});
  double worst = 0.0;
  for (const auto& p : tr.policy()) if (p.value) worst = std::max(worst, std::abs(*p.value));
  CHECK(worst > 0.0);
  CHECK(worst < 5e-3);
}
