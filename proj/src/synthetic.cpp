#include "hoed/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <tuple>

#include "hoed/error.hpp"

namespace hoed {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::vector<double> normal_noise(std::size_t n, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = sigma * rng.normal();
  return out;
}

std::string to_string(SyntheticSpec::Kind kind) {
  switch (kind) {
    case SyntheticSpec::Kind::Oscillator: return "oscillator";
    case SyntheticSpec::Kind::LoglinearPanel: return "loglinear_panel";
    case SyntheticSpec::Kind::EkcPanel: return "ekc_panel";
    case SyntheticSpec::Kind::VarChain: return "var_chain";
  }
  return "unknown";
}

SyntheticSpec::Kind parse_synthetic_kind(const std::string& name) {
  for (auto k : {SyntheticSpec::Kind::Oscillator, SyntheticSpec::Kind::LoglinearPanel, SyntheticSpec::Kind::EkcPanel,
                 SyntheticSpec::Kind::VarChain})
    if (to_string(k) == name) return k;
  throw Error(ErrorKind::Parameter, "unknown synthetic kind '" + name + "'");
}

void validate(const SyntheticSpec& spec) {
  const auto fail = [](const std::string& m) { throw Error(ErrorKind::Parameter, "synthetic spec: " + m); };
  if (!(spec.noise_sigma >= 0.0)) fail("noise sigma must be >= 0");
  switch (spec.kind) {
    case SyntheticSpec::Kind::Oscillator:
      if (!(spec.dt > 0.0)) fail("dt must be > 0");
      if (!(spec.angular_frequency > 0.0)) fail("angular frequency must be > 0");
      if (!(spec.periods > 0.0)) fail("periods must be > 0");
      if (spec.periods * 2.0 * std::numbers::pi / (spec.angular_frequency * spec.dt) < 10.0)
        fail("oscillator needs at least 10 samples");
      break;
    case SyntheticSpec::Kind::LoglinearPanel:
    case SyntheticSpec::Kind::EkcPanel:
      if (spec.entities < 1) fail("need at least one entity");
      if (spec.years < 10) fail("need at least 10 years");
      if (spec.kind == SyntheticSpec::Kind::EkcPanel &&
          (spec.ekc_coefficients.size() < 3 || spec.ekc_coefficients.size() > 4))
        fail("ekc coefficients must list b0, b1, b2 and optionally b3");
      if (spec.kind == SyntheticSpec::Kind::EkcPanel && !(spec.log_x_high > spec.log_x_low))
        fail("log x range is empty");
      break;
    case SyntheticSpec::Kind::VarChain:
      if (spec.years < 10) fail("need at least 10 years");
      if (spec.variable_names.size() < 2) fail("var chain needs at least two variables");
      if (spec.burn_in < 0) fail("burn-in must be >= 0");
      for (const auto& c : spec.couplings) {
        if (c.source >= spec.variable_names.size() || c.target >= spec.variable_names.size())
          fail("coupling refers to an unknown variable");
        if (c.lag < 1) fail("coupling lag must be >= 1");
      }
      break;
  }
}

Series generate_oscillator(const SyntheticSpec& spec) {
  if (spec.kind != SyntheticSpec::Kind::Oscillator) throw Error(ErrorKind::Parameter, "spec is not an oscillator");
  validate(spec);
  const auto n = static_cast<int>(std::llround(spec.periods * 2.0 * std::numbers::pi / (spec.angular_frequency * spec.dt)));
  Rng rng(spec.seed);
  Series out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = k * spec.dt;
    double v = spec.amplitude * std::cos(spec.angular_frequency * t + spec.phase);
    if (spec.noise_sigma > 0.0) v += spec.noise_sigma * rng.normal();
    out.push_back({k, v});
  }
  return out;
}

namespace {

std::vector<std::string> entity_names(const SyntheticSpec& spec) {
  std::vector<std::string> names;
  if (spec.study_entity_names) {
    // Round-robin over regions so every region is represented.
    std::map<std::string, std::vector<std::string>> by_region;
    const auto sample = RegionMap::study_sample();
    for (const auto& [entity, region] : sample.entries()) by_region[region].push_back(entity);
    std::size_t row = 0;
    while (names.size() < static_cast<std::size_t>(spec.entities)) {
      bool any = false;
      for (const auto& [region, members] : by_region) {
        if (row < members.size() && names.size() < static_cast<std::size_t>(spec.entities)) {
          names.push_back(members[row]);
          any = true;
        }
      }
      if (!any) throw Error(ErrorKind::Parameter, "synthetic spec: more entities than study-sample countries");
      ++row;
    }
    return names;
  }
  for (int e = 0; e < spec.entities; ++e) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "E%03d", e + 1);
    names.emplace_back(buf);
  }
  return names;
}

}  // namespace

Panel generate_panel(const SyntheticSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  Panel panel;
  if (spec.kind == SyntheticSpec::Kind::Oscillator)
    throw Error(ErrorKind::Parameter, "oscillator specs generate a trajectory, not a panel");

  if (spec.kind == SyntheticSpec::Kind::VarChain) {
    panel.variables = spec.variable_names;
    const auto k = spec.variable_names.size();
    const auto total = static_cast<std::size_t>(spec.burn_in + spec.years);
    std::vector<std::vector<double>> x(total, std::vector<double>(k, 0.0));
    for (std::size_t t = 0; t < total; ++t) {
      for (std::size_t v = 0; v < k; ++v) x[t][v] = spec.noise_sigma * rng.normal();
      for (const auto& c : spec.couplings)
        if (t >= static_cast<std::size_t>(c.lag)) x[t][c.target] += c.coefficient * x[t - static_cast<std::size_t>(c.lag)][c.source];
    }
    for (int y = 0; y < spec.years; ++y) {
      Observation o;
      o.entity = "chain";
      o.year = spec.start_year + y;
      for (double v : x[static_cast<std::size_t>(spec.burn_in + y)]) o.values.emplace_back(v);
      panel.observations.push_back(std::move(o));
    }
    panel.input_rows = panel.observations.size();
    return panel;
  }

  panel.variables = {"gdp", "co2"};
  const auto names = entity_names(spec);
  const double m = static_cast<double>(spec.entities);
  for (int e = 0; e < spec.entities; ++e) {
    const double frac = (e + 0.5) / m;
    for (int y = 0; y < spec.years; ++y) {
      double log_x = 0.0, log_y = 0.0;
      const double t = static_cast<double>(y);
      if (spec.kind == SyntheticSpec::Kind::LoglinearPanel) {
        log_x = 6.0 + 4.0 * frac + (0.02 + 0.03 * frac) * t + 0.05 * std::sin(0.7 * t + e);
        log_y = spec.intercept + spec.slope * log_x;
      } else {
        // Drift across the full range with an entity-specific wobble so elasticity accelerates.
        const double u = t / (spec.years - 1);
        const double span = spec.log_x_high - spec.log_x_low;
        log_x = spec.log_x_low + span * u + 0.03 * span * std::sin(2.0 * std::numbers::pi * (1.5 + frac) * u + 3.0 * frac);
        double p = 1.0;
        for (double c : spec.ekc_coefficients) {
          log_y += c * p;
          p *= log_x;
        }
      }
      if (spec.noise_sigma > 0.0) log_y += spec.noise_sigma * rng.normal();
      Observation o;
      o.entity = names[static_cast<std::size_t>(e)];
      o.year = spec.start_year + y;
      o.values = {std::exp(log_x), std::exp(log_y)};
      panel.observations.push_back(std::move(o));
    }
  }
  std::sort(panel.observations.begin(), panel.observations.end(), [](const Observation& a, const Observation& b) {
    return std::tie(a.entity, a.year) < std::tie(b.entity, b.year);
  });
  panel.input_rows = panel.observations.size();
  return panel;
}

}  // namespace hoed
