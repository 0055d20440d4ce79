#pragma once

// Hand-rolled generators for the property suites. Each suite seeds its own Gen so cases are
// reproducible and independent of the library's synthetic RNG.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hoed/kinematics.hpp"
#include "hoed/series.hpp"

namespace hoed::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double normal(double sigma = 1.0) { return std::normal_distribution<double>(0.0, sigma)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Log-uniform magnitude with a random sign, so cases span several orders of magnitude.
  double signed_magnitude(double lo_exp, double hi_exp) {
    const double m = std::pow(10.0, uniform(lo_exp, hi_exp));
    return coin() ? m : -m;
  }

  std::vector<double> polynomial(int degree, double scale = 1.0) {
    std::vector<double> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = uniform(-scale, scale);
    return c;
  }

  Series sampled(const std::vector<double>& coeffs, int n, int start_year, double t0 = 0.0) {
    Series s;
    for (int i = 0; i < n; ++i) s.push_back({start_year + i, horner(coeffs, t0 + i)});
    return s;
  }

  std::vector<std::vector<double>> cloud(std::size_t n, std::size_t dim, double spread = 1.0) {
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (auto& p : pts)
      for (auto& v : p) v = uniform(-spread, spread);
    return pts;
  }

  /// A stack with every derivative defined, values drawn independently.
  KinematicStack random_stack(std::size_t n, int start_year = 2000) {
    KinematicStack s;
    s.entity = "gen";
    for (std::size_t i = 0; i < n; ++i) {
      KinematicPoint p;
      p.year = start_year + static_cast<int>(i);
      p.epsilon = uniform(-2, 2);
      p.velocity = uniform(-1, 1);
      p.acceleration = uniform(-1, 1);
      p.jerk = uniform(-1, 1);
      s.points.push_back(p);
    }
    return s;
  }

  static double horner(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
    return v;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hoed::testing
