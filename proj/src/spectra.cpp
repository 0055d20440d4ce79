#include "hoed/spectra.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "hoed/error.hpp"

namespace hoed {

double morlet_fourier_factor(double omega0) {
  return 4.0 * std::numbers::pi / (omega0 + std::sqrt(2.0 + omega0 * omega0));
}

std::vector<double> dyadic_scales(std::size_t n, int voices, double dt) {
  if (voices < 1) throw Error(ErrorKind::Parameter, "voices per octave must be >= 1");
  const double smin = 2.0 * dt;
  const double smax = static_cast<double>(n) * dt / 4.0;
  std::vector<double> scales;
  for (int k = 0;; ++k) {
    const double s = smin * std::exp2(static_cast<double>(k) / voices);
    if (s > smax * (1.0 + 1e-12)) break;
    scales.push_back(s);
  }
  if (scales.empty()) scales.push_back(smin);
  return scales;
}

namespace {

void check_inputs(const Series& series, const std::vector<double>& scales, double omega0) {
  if (scales.empty()) throw Error(ErrorKind::Parameter, "empty scale set");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0) || !std::isfinite(scales[i])) throw Error(ErrorKind::Parameter, "scales must be positive");
    if (i > 0 && !(scales[i] > scales[i - 1])) throw Error(ErrorKind::Parameter, "scales must be strictly increasing");
  }
  if (!(omega0 >= 5.0)) throw Error(ErrorKind::Parameter, "Morlet omega0 must be >= 5");
  if (series.size() < 8) throw Error(ErrorKind::InsufficientData, "wavelet transform needs 8 samples");
  require_unit_spacing(series, "wavelet transform");
}

}  // namespace

std::vector<std::complex<double>> morlet_coefficients(const Series& series, const std::vector<double>& scales,
                                                      double omega0) {
  check_inputs(series, scales, omega0);
  const auto n = series.size();
  std::vector<double> x = values_of(series);
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  for (auto& v : x) v -= mean;

  const double norm = std::pow(std::numbers::pi, -0.25);
  std::vector<std::complex<double>> coef(scales.size() * n);
  for (std::size_t si = 0; si < scales.size(); ++si) {
    const double s = scales[si];
    const double amp = norm / std::sqrt(s);
    for (std::size_t tau = 0; tau < n; ++tau) {
      std::complex<double> acc = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const double u = (static_cast<double>(t) - static_cast<double>(tau)) / s;
        const double envelope = std::exp(-0.5 * u * u);
        acc += x[t] * envelope * std::complex<double>(std::cos(omega0 * u), -std::sin(omega0 * u));
      }
      coef[si * n + tau] = amp * acc;
    }
  }
  return coef;
}

Scalogram morlet_cwt(const Series& series, const std::vector<double>& scales, double omega0, std::string id) {
  const auto coef = morlet_coefficients(series, scales, omega0);
  Scalogram sg;
  sg.id = std::move(id);
  sg.times = years_of(series);
  sg.scales = scales;
  sg.omega0 = omega0;
  sg.power.resize(coef.size());
  for (std::size_t i = 0; i < coef.size(); ++i) sg.power[i] = std::norm(coef[i]);
  const auto n = series.size();
  sg.coi.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    sg.coi[i] = static_cast<double>(std::min(i, n - 1 - i)) / std::numbers::sqrt2;
  return sg;
}

std::vector<ScalePoint> dominant_scale(const Scalogram& scalogram) {
  std::vector<ScalePoint> out;
  for (std::size_t t = 0; t < scalogram.times.size(); ++t) {
    std::size_t best = scalogram.scales.size();
    double best_power = 0.0;
    for (std::size_t s = 0; s < scalogram.scales.size(); ++s) {
      if (!scalogram.inside_coi(s, t)) continue;
      if (scalogram.at(s, t) > best_power) {
        best_power = scalogram.at(s, t);
        best = s;
      }
    }
    if (best < scalogram.scales.size()) out.push_back({scalogram.times[t], scalogram.scales[best]});
  }
  return out;
}

}  // namespace hoed
