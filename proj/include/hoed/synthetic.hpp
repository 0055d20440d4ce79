#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hoed/panel.hpp"
#include "hoed/series.hpp"

namespace hoed {

/// Seeded generator: std::mt19937_64 for bits, 53-bit uniforms, Box-Muller normals.
/// Changing any of these changes every seeded expectation in the test suites.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  ///< [0, 1)
  double normal();   ///< standard normal

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct VarCoupling {
  std::size_t source = 0;
  std::size_t target = 0;
  double coefficient = 0.0;
  int lag = 1;
};

struct SyntheticSpec {
  enum class Kind { Oscillator, LoglinearPanel, EkcPanel, VarChain };

  Kind kind = Kind::LoglinearPanel;
  std::uint64_t seed = 1;
  double noise_sigma = 0.0;

  // oscillator: eps_k = amplitude cos(omega k dt + phase)
  double amplitude = 1.0;
  double angular_frequency = 1.0;
  double phase = 0.0;
  double dt = 0.01;
  double periods = 10.0;

  // panels
  int entities = 10;
  int years = 40;
  int start_year = 1980;
  bool study_entity_names = false;  ///< name entities after study-sample countries, spread over regions

  // loglinear_panel: log y = intercept + slope log x + noise
  double intercept = 2.0;
  double slope = 0.8;

  // ekc_panel: log y = sum_k ekc[k] (log x)^k + noise
  std::vector<double> ekc_coefficients{1.0, 2.0, -0.5};  ///< vertex at log x = 2
  double log_x_low = 0.5;
  double log_x_high = 3.5;

  // var_chain
  std::vector<std::string> variable_names{"A", "B", "C"};
  std::vector<VarCoupling> couplings{{0, 1, 0.8, 1}, {1, 2, 0.8, 1}};
  int burn_in = 50;
};

std::string to_string(SyntheticSpec::Kind kind);
SyntheticSpec::Kind parse_synthetic_kind(const std::string& name);

/// Throws Parameter for invalid specs (sigma < 0, fewer than 10 years, ...).
void validate(const SyntheticSpec& spec);

/// eps trajectory of the oscillator kind; years hold the sample index.
Series generate_oscillator(const SyntheticSpec& spec);

/// Panels carry level columns `gdp` and `co2` (panels) or the chain's variable names (var_chain).
Panel generate_panel(const SyntheticSpec& spec);

/// i.i.d. N(0, sigma^2) draws, handy for oracles and tests.
std::vector<double> normal_noise(std::size_t n, double sigma, std::uint64_t seed);

}  // namespace hoed
