#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hoed/panel.hpp"
#include "hoed/series.hpp"

namespace hoed {

/// Least-squares polynomial fit y ~ b0 + b1 x + ... + bd x^d.
struct FitResult {
  int degree = 1;
  std::vector<double> coefficients;  ///< b0 .. bd
  std::vector<double> residuals;     ///< y - fitted, in input order
  double rmse = 0.0;
  double mae = 0.0;
  double r2 = 1.0;
  std::size_t n = 0;

  double intercept() const { return coefficients.at(0); }
  double slope() const { return coefficients.at(1); }
  double evaluate(double x) const;
};

/// Needs n >= degree + 2 and at least degree + 1 distinct x values.
FitResult ols_fit(std::span<const double> x, std::span<const double> y, int degree);

struct ElasticityPoint {
  int year = 0;        ///< last year of the window
  double epsilon = 0;  ///< window slope of log y on log x
  double intercept = 0;
  double r2 = 0;
};

struct ElasticitySeries {
  std::string entity;
  int window = 0;
  std::vector<ElasticityPoint> points;
  std::size_t omitted_missing = 0;     ///< windows skipped because a value was missing
  std::size_t omitted_degenerate = 0;  ///< windows skipped for zero x-variance

  Series epsilon() const;
};

/// Trailing-window rolling slope over one gap-free segment. `x` and `y` must share years.
ElasticitySeries rolling_elasticity(const MaybeSeries& x, const MaybeSeries& y, int window,
                                    std::string entity = {});

/// Paired x/y values of one entity over one consecutive-year segment.
struct PairedSegment {
  std::string entity;
  MaybeSeries x;
  MaybeSeries y;
};

/// Splits every entity of the panel into consecutive-year segments of (x_var, y_var).
std::vector<PairedSegment> paired_segments(const Panel& panel, const std::string& x_var,
                                           const std::string& y_var);

inline constexpr double kDefaultOverfitFloor = 1e-8;

struct WindowMetrics {
  int window = 0;
  bool feasible = false;
  double rmse = 0.0;
  double mae = 0.0;
  double r2 = 0.0;
  std::size_t windows = 0;       ///< fitted windows pooled
  std::size_t observations = 0;  ///< in-window residuals pooled
};

struct WindowMetricsTable {
  std::vector<WindowMetrics> rows;
  int selected_window = 0;
  double overfit_floor = kDefaultOverfitFloor;
  /// True when no feasible candidate cleared the floor and the smallest feasible one was taken.
  bool floor_fallback = false;
};

/// Pooled in-window residual metrics for each candidate window, and the selected window.
WindowMetricsTable score_windows(const std::vector<PairedSegment>& segments, const std::vector<int>& candidates,
                                 double overfit_floor = kDefaultOverfitFloor);

struct EkcCurve {
  FitResult fit;
  std::vector<double> turning_points;  ///< real derivative roots inside [min x, max x], ascending
};

EkcCurve ekc_curve(std::span<const double> x, std::span<const double> y, int degree);

}  // namespace hoed
