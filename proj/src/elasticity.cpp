#include "hoed/elasticity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

#include "hoed/error.hpp"

namespace hoed {

double FitResult::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

FitResult ols_fit(std::span<const double> x, std::span<const double> y, int degree) {
  if (degree < 1) throw Error(ErrorKind::Parameter, "polynomial degree must be >= 1");
  if (x.size() != y.size())
    throw Error(ErrorKind::Shape, "x has " + std::to_string(x.size()) + " values, y has " + std::to_string(y.size()));
  const auto n = x.size();
  const auto p = static_cast<std::size_t>(degree) + 1;
  if (n < p + 1)
    throw Error(ErrorKind::InsufficientData,
                "degree " + std::to_string(degree) + " fit needs " + std::to_string(p + 1) + " points");
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw Error(ErrorKind::Parameter, "non-finite input to fit");
  if (std::set<double>(x.begin(), x.end()).size() < p)
    throw Error(ErrorKind::Degenerate, "design has fewer than " + std::to_string(p) + " distinct x values");

  // Fit in z = (x - c) / h so the Vandermonde columns stay O(1).
  const double c = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double h = 0.0;
  for (double xi : x) h = std::max(h, std::abs(xi - c));

  Eigen::MatrixXd design(n, p);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (x[i] - c) / h;
    double zk = 1.0;
    for (std::size_t k = 0; k < p; ++k, zk *= z) design(i, k) = zk;
    rhs(i) = y[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (static_cast<std::size_t>(qr.rank()) < p) throw Error(ErrorKind::Degenerate, "rank-deficient design matrix");
  const Eigen::VectorXd a = qr.solve(rhs);

  FitResult fit;
  fit.degree = degree;
  fit.n = n;
  fit.coefficients.assign(p, 0.0);
  // b_j = sum_{k>=j} a_k h^-k C(k, j) (-c)^(k-j)
  for (std::size_t j = 0; j < p; ++j) {
    double acc = 0.0;
    for (std::size_t k = j; k < p; ++k) {
      double binom = 1.0;
      for (std::size_t m = 0; m < j; ++m) binom = binom * static_cast<double>(k - m) / static_cast<double>(m + 1);
      acc += a(static_cast<Eigen::Index>(k)) / std::pow(h, static_cast<double>(k)) * binom *
             std::pow(-c, static_cast<double>(k - j));
    }
    fit.coefficients[j] = acc;
  }

  const Eigen::VectorXd resid = rhs - design * a;
  fit.residuals.assign(resid.data(), resid.data() + n);
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double ssr = 0.0, sae = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ssr += fit.residuals[i] * fit.residuals[i];
    sae += std::abs(fit.residuals[i]);
    sst += (y[i] - ybar) * (y[i] - ybar);
  }
  fit.rmse = std::sqrt(ssr / static_cast<double>(n));
  fit.mae = sae / static_cast<double>(n);
  fit.r2 = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
  return fit;
}

Series ElasticitySeries::epsilon() const {
  Series s;
  s.reserve(points.size());
  for (const auto& p : points) s.push_back({p.year, p.epsilon});
  return s;
}

namespace {

void require_paired(const MaybeSeries& x, const MaybeSeries& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::Shape, "x and y series differ in length");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].year != y[i].year) throw Error(ErrorKind::Shape, "x and y series are not aligned on years");
    if (i > 0 && x[i].year != x[i - 1].year + 1)
      throw Error(ErrorKind::Spacing, "rolling window crosses a gap after year " + std::to_string(x[i - 1].year));
  }
}

}  // namespace

ElasticitySeries rolling_elasticity(const MaybeSeries& x, const MaybeSeries& y, int window, std::string entity) {
  if (window < 3) throw Error(ErrorKind::Parameter, "rolling window must be >= 3");
  require_paired(x, y);
  const auto n = x.size();
  const auto w = static_cast<std::size_t>(window);
  if (n < w)
    throw Error(ErrorKind::InsufficientData, "segment of " + std::to_string(n) + " years is shorter than window " +
                                                 std::to_string(window));
  ElasticitySeries out;
  out.entity = std::move(entity);
  out.window = window;
  std::vector<double> wx(w), wy(w);
  for (std::size_t end = w - 1; end < n; ++end) {
    bool complete = true;
    for (std::size_t k = 0; k < w; ++k) {
      const auto& xi = x[end + 1 - w + k].value;
      const auto& yi = y[end + 1 - w + k].value;
      if (!xi || !yi) {
        complete = false;
        break;
      }
      wx[k] = *xi;
      wy[k] = *yi;
    }
    if (!complete) {
      ++out.omitted_missing;
      continue;
    }
    try {
      const auto fit = ols_fit(wx, wy, 1);
      out.points.push_back({x[end].year, fit.slope(), fit.intercept(), fit.r2});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Degenerate) throw;
      ++out.omitted_degenerate;
    }
  }
  return out;
}

std::vector<PairedSegment> paired_segments(const Panel& panel, const std::string& x_var, const std::string& y_var) {
  const auto xi = panel.variable_index(x_var);
  const auto yi = panel.variable_index(y_var);
  std::vector<PairedSegment> out;
  for (std::size_t i = 0; i < panel.observations.size(); ++i) {
    const auto& o = panel.observations[i];
    const bool extends = i > 0 && panel.observations[i - 1].entity == o.entity &&
                         panel.observations[i - 1].year + 1 == o.year;
    if (!extends) out.push_back({o.entity, {}, {}});
    out.back().x.push_back({o.year, o.values[xi]});
    out.back().y.push_back({o.year, o.values[yi]});
  }
  return out;
}

WindowMetricsTable score_windows(const std::vector<PairedSegment>& segments, const std::vector<int>& candidates,
                                 double overfit_floor) {
  if (candidates.empty()) throw Error(ErrorKind::Parameter, "no candidate windows");
  for (int w : candidates)
    if (w < 3) throw Error(ErrorKind::Parameter, "candidate window " + std::to_string(w) + " is below 3");

  // Canonical order keeps the pooled sums independent of the caller's entity order.
  std::vector<const PairedSegment*> ordered;
  for (const auto& s : segments) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(), [](const PairedSegment* a, const PairedSegment* b) {
    const int ya = a->x.empty() ? 0 : a->x.front().year;
    const int yb = b->x.empty() ? 0 : b->x.front().year;
    return std::tie(a->entity, ya) < std::tie(b->entity, yb);
  });

  WindowMetricsTable table;
  table.overfit_floor = overfit_floor;
  std::size_t degenerate = 0;
  for (int w : candidates) {
    WindowMetrics row;
    row.window = w;
    std::vector<double> pooled_y, pooled_resid;
    for (const auto* seg : ordered) {
      if (seg->x.size() < static_cast<std::size_t>(w)) continue;
      const auto es = rolling_elasticity(seg->x, seg->y, w, seg->entity);
      degenerate += es.omitted_degenerate;
      const int first_year = seg->x.front().year;
      for (const auto& pt : es.points) {
        const auto end = static_cast<std::size_t>(pt.year - first_year);
        for (std::size_t k = end + 1 - static_cast<std::size_t>(w); k <= end; ++k) {
          const double xv = *seg->x[k].value;
          const double yv = *seg->y[k].value;
          pooled_y.push_back(yv);
          pooled_resid.push_back(yv - (pt.intercept + pt.epsilon * xv));
        }
        ++row.windows;
      }
    }
    row.observations = pooled_y.size();
    if (row.windows > 0) {
      const double m = static_cast<double>(pooled_y.size());
      const double ybar = std::accumulate(pooled_y.begin(), pooled_y.end(), 0.0) / m;
      double ssr = 0.0, sae = 0.0, sst = 0.0;
      for (std::size_t i = 0; i < pooled_y.size(); ++i) {
        ssr += pooled_resid[i] * pooled_resid[i];
        sae += std::abs(pooled_resid[i]);
        sst += (pooled_y[i] - ybar) * (pooled_y[i] - ybar);
      }
      row.feasible = true;
      row.rmse = std::sqrt(ssr / m);
      row.mae = sae / m;
      row.r2 = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
    }
    table.rows.push_back(row);
  }

  const WindowMetrics* best = nullptr;
  const WindowMetrics* smallest_feasible = nullptr;
  for (const auto& row : table.rows) {
    if (!row.feasible) continue;
    if (!smallest_feasible || row.window < smallest_feasible->window) smallest_feasible = &row;
    if (row.rmse < overfit_floor) continue;
    if (!best || row.rmse < best->rmse || (row.rmse == best->rmse && row.window < best->window)) best = &row;
  }
  if (!smallest_feasible && degenerate > 0)
    throw Error(ErrorKind::Degenerate, "every complete window has a constant driver");
  if (!smallest_feasible) throw Error(ErrorKind::InsufficientData, "no candidate window fits any segment");
  if (best) {
    table.selected_window = best->window;
  } else {
    table.selected_window = smallest_feasible->window;
    table.floor_fallback = true;
  }
  return table;
}

namespace {

// Real roots of c0 + c1 x + c2 x^2 where the derivative changes sign.
std::vector<double> sign_changing_roots(double c0, double c1, double c2) {
  std::vector<double> roots;
  if (c2 == 0.0) {
    if (c1 != 0.0) roots.push_back(-c0 / c1);
    return roots;
  }
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc <= 1e-12 * (c1 * c1 + std::abs(4.0 * c2 * c0))) return roots;
  const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1 == 0.0 ? 1.0 : c1));
  roots.push_back(q / c2);
  roots.push_back(c0 / q);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

EkcCurve ekc_curve(std::span<const double> x, std::span<const double> y, int degree) {
  if (degree != 2 && degree != 3) throw Error(ErrorKind::Parameter, "EKC curve degree must be 2 or 3");
  EkcCurve curve{ols_fit(x, y, degree), {}};
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it, hi = *hi_it;
  const double reach = std::max({std::abs(lo), std::abs(hi), hi - lo});
  double yscale = 0.0;
  for (double v : y) yscale = std::max(yscale, std::abs(v));
  const double tol = 1e-11 * std::max(yscale, 1e-300);

  // Terms whose contribution over the observed range is at rounding level are dropped.
  std::vector<double> b = curve.fit.coefficients;
  for (std::size_t k = 1; k < b.size(); ++k)
    if (std::abs(b[k]) * std::pow(reach, static_cast<double>(k)) <= tol) b[k] = 0.0;

  const double d0 = b[1];
  const double d1 = 2.0 * b[2];
  const double d2 = degree == 3 ? 3.0 * b[3] : 0.0;
  for (double r : sign_changing_roots(d0, d1, d2))
    if (r >= lo && r <= hi) curve.turning_points.push_back(r);
  return curve;
}

}  // namespace hoed
