#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hoed/kinematics.hpp"
#include "hoed/series.hpp"

namespace hoed {

/// Weights of H = w_power * Power + w_inertia * Inertia - w_kei * KEI.
struct Alpha {
  enum class Provenance { Default, Calibrated };

  double power = 1.0;
  double inertia = 1.0;
  double kei = 1.0;
  Provenance provenance = Provenance::Default;
  std::optional<double> calibration_r2;

  Alpha operator+(const Alpha& o) const {
    Alpha sum;
    sum.power = power + o.power;
    sum.inertia = inertia + o.inertia;
    sum.kei = kei + o.kei;
    return sum;
  }
};

inline constexpr double kDefaultStiffness = 1.0;

/// H = v^2/2 + k eps^2/2 wherever the velocity is defined.
Series classical_hamiltonian(const KinematicStack& stack, double stiffness);

/// a + k eps: zero for a unit-mass oscillator with the quadratic potential.
Series hamilton_residual(const KinematicStack& stack, double stiffness);

/// Generalized energy at one state.
double hamiltonian_value(double epsilon, double velocity, double acceleration, double jerk, const Alpha& alpha);

enum class PowerScheme { Central, Forward };

struct HamiltonianRecord {
  int year = 0;
  double energy = 0.0;                       ///< System Energy, H
  std::optional<double> system_power;        ///< dH/dt
  double marginal_response = 0.0;            ///< dH/d(eps) at fixed (v, a, j)
  std::optional<double> policy_sensitivity;  ///< explicit-time part of dH/dt
};

struct HamiltonianTrace {
  std::string entity;
  Alpha alpha;
  PowerScheme scheme = PowerScheme::Central;
  double dt = 1.0;
  std::vector<HamiltonianRecord> records;

  Series energy() const;
  MaybeSeries system_power() const;
  MaybeSeries policy() const;
};

/// H per year where (v, a, j) are defined; needs three such years.
HamiltonianTrace generalized_hamiltonian(const KinematicStack& stack, const Alpha& alpha,
                                         PowerScheme scheme = PowerScheme::Central);

/// No-intercept least squares of `target` on [Power, Inertia, -KEI] over overlapping years.
Alpha calibrate_alpha(const KinematicStack& stack, const Series& target);

/// Pooled calibration across several stacks (targets aligned by year per stack).
Alpha calibrate_alpha(const std::vector<std::pair<KinematicStack, Series>>& samples);

Series marginal_response(const KinematicStack& stack, const Alpha& alpha);

/// dH/dt minus every chain-rule contribution through (eps, v, a, j), with v' = a and eps' = v.
/// dH, a' and j' are central differences; the result is defined where all three are.
Series policy_sensitivity(const HamiltonianTrace& trace, const KinematicStack& stack, const Alpha& alpha);

}  // namespace hoed
