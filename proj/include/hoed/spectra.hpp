#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "hoed/series.hpp"

namespace hoed {

inline constexpr double kDefaultOmega0 = 6.0;
inline constexpr int kDefaultVoicesPerOctave = 8;

/// Morlet scale-to-Fourier-period factor, 4 pi / (w0 + sqrt(2 + w0^2)).
double morlet_fourier_factor(double omega0);

/// Dyadic grid 2 dt * 2^(k / voices) up to n dt / 4.
std::vector<double> dyadic_scales(std::size_t n, int voices = kDefaultVoicesPerOctave, double dt = 1.0);

/// Scale x time map of |W|^2. Power is row-major: power[s * times.size() + t].
struct Scalogram {
  std::string id;
  std::vector<int> times;
  std::vector<double> scales;
  std::vector<double> power;
  double omega0 = kDefaultOmega0;
  std::vector<double> coi;  ///< largest trustworthy scale per time

  double at(std::size_t scale_index, std::size_t time_index) const {
    return power[scale_index * times.size() + time_index];
  }
  bool inside_coi(std::size_t scale_index, std::size_t time_index) const {
    return scales[scale_index] <= coi[time_index];
  }
};

/// Complex Morlet coefficients of the zero-meaned series, same layout as Scalogram::power.
std::vector<std::complex<double>> morlet_coefficients(const Series& series, const std::vector<double>& scales,
                                                      double omega0 = kDefaultOmega0);

Scalogram morlet_cwt(const Series& series, const std::vector<double>& scales, double omega0 = kDefaultOmega0,
                     std::string id = {});

struct ScalePoint {
  int year = 0;
  double scale = 0.0;
  friend bool operator==(const ScalePoint&, const ScalePoint&) = default;
};

/// Scale of maximal in-COI power per time; ties go to the smaller scale, zero-power times are skipped.
std::vector<ScalePoint> dominant_scale(const Scalogram& scalogram);

}  // namespace hoed
