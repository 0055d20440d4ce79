#include "hoed/causality.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "hoed/error.hpp"
#include "hoed/io.hpp"

namespace hoed {

namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 100000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::Parameter, "incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::Parameter, "incomplete beta needs 0 <= x <= 1");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_distribution_sf(double f, double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw Error(ErrorKind::Parameter, "F distribution needs positive degrees of freedom");
  if (std::isnan(f)) throw Error(ErrorKind::Parameter, "F statistic is NaN");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  return regularized_incomplete_beta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * f));
}

bool is_effectively_constant(const std::vector<double>& values) {
  if (values.empty()) return true;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double scale = std::max({1.0, std::abs(*lo), std::abs(*hi)});
  return *hi - *lo <= 1e-12 * scale;
}

namespace {

// Residual sum of squares of y[start..) on an intercept, `own` lags of y and `cross` lags of x.
double lagged_rss(const std::vector<double>& x, const std::vector<double>& y, std::size_t start, int own, int cross) {
  const auto n = y.size() - start;
  const auto k = static_cast<Eigen::Index>(1 + own + cross);
  Eigen::MatrixXd design(static_cast<Eigen::Index>(n), k);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const auto t = start + r;
    const auto row = static_cast<Eigen::Index>(r);
    design(row, 0) = 1.0;
    for (int l = 1; l <= own; ++l) design(row, l) = y[t - static_cast<std::size_t>(l)];
    for (int l = 1; l <= cross; ++l) design(row, own + l) = x[t - static_cast<std::size_t>(l)];
    rhs(row) = y[t];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < k) throw Error(ErrorKind::Degenerate, "lagged regressors are collinear");
  return (rhs - design * qr.solve(rhs)).squaredNorm();
}

Series longest_run(const Series& s) {
  Series best;
  for (auto& run : split_runs(s))
    if (run.size() > best.size()) best = std::move(run);
  return best;
}

}  // namespace

GrangerResult granger_test(const Series& x, const Series& y, int max_lag, std::string source, std::string target) {
  if (max_lag < 1) throw Error(ErrorKind::Parameter, "max_lag must be >= 1");
  auto [ax, ay] = align(x, y);
  ax = longest_run(ax);
  ay = longest_run(ay);
  const auto need = static_cast<std::size_t>(3 * max_lag + 10);
  if (ax.size() < need)
    throw Error(ErrorKind::InsufficientData, "Granger test needs " + std::to_string(need) +
                                                 " consecutive overlapping years, got " + std::to_string(ax.size()));
  const auto xv = values_of(ax);
  const auto yv = values_of(ay);
  if (is_effectively_constant(xv)) throw Error(ErrorKind::Degenerate, source + " is constant on the overlap");
  if (is_effectively_constant(yv)) throw Error(ErrorKind::Degenerate, target + " is constant on the overlap");

  const auto start = static_cast<std::size_t>(max_lag);
  const auto n = yv.size() - start;
  const double dn = static_cast<double>(n);
  int best_lag = 1;
  double best_bic = std::numeric_limits<double>::infinity();
  double best_rss_u = 0.0;
  for (int p = 1; p <= max_lag; ++p) {
    const double rss = lagged_rss(xv, yv, start, p, p);
    const double bic = dn * std::log(std::max(rss, 1e-300) / dn) + (2.0 * p + 1.0) * std::log(dn);
    if (bic < best_bic) {
      best_bic = bic;
      best_lag = p;
      best_rss_u = rss;
    }
  }
  const double rss_r = lagged_rss(xv, yv, start, best_lag, 0);
  const double df2 = dn - 2.0 * best_lag - 1.0;

  GrangerResult res;
  res.source = std::move(source);
  res.target = std::move(target);
  res.lag = best_lag;
  res.n_effective = n;
  if (best_rss_u <= 1e-300 || best_rss_u <= 1e-15 * rss_r) {
    res.f_statistic = std::numeric_limits<double>::infinity();
    res.p_value = 0.0;
    return res;
  }
  res.f_statistic = std::max(0.0, ((rss_r - best_rss_u) / best_lag) / (best_rss_u / df2));
  res.p_value = std::clamp(f_distribution_sf(res.f_statistic, best_lag, df2), 0.0, 1.0);
  return res;
}

CausalGraph build_graph(const std::map<std::string, Series>& frame, const std::vector<std::string>& vars,
                        double alpha_level, int max_lag) {
  if (!(alpha_level > 0.0 && alpha_level < 1.0)) throw Error(ErrorKind::Parameter, "alpha_level must lie in (0, 1)");
  const std::set<std::string> unique(vars.begin(), vars.end());
  if (unique.size() < 2) throw Error(ErrorKind::Parameter, "causal graph needs at least two variables");
  for (const auto& v : unique)
    if (!frame.count(v)) throw Error(ErrorKind::Lookup, "no series named '" + v + "'");

  CausalGraph g;
  g.alpha_level = alpha_level;
  g.max_lag = max_lag;
  g.nodes.assign(unique.begin(), unique.end());
  for (const auto& src : g.nodes)
    for (const auto& dst : g.nodes) {
      if (src == dst) continue;
      try {
        auto r = granger_test(frame.at(src), frame.at(dst), max_lag, src, dst);
        if (r.p_value < alpha_level) g.edges.push_back({src, dst, r.p_value, r.lag, r.f_statistic});
        g.tests.push_back(std::move(r));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parameter) throw;
        g.untested.push_back({src, dst, std::string(to_string(e.kind())) + ": " + e.what()});
      }
    }
  return g;
}

namespace {

std::string dot_id(const std::string& name) {
  const bool plain = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                     std::all_of(name.begin(), name.end(), [](char c) {
                       return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                     });
  if (plain) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string export_graph(const CausalGraph& graph, std::string_view format) {
  if (format == "json") return io::to_json(graph).dump(2) + "\n";
  if (format != "dot") throw Error(ErrorKind::Parameter, "unknown graph format '" + std::string(format) + "'");
  std::vector<std::string> nodes = graph.nodes;
  std::sort(nodes.begin(), nodes.end());
  std::vector<CausalEdge> edges = graph.edges;
  std::sort(edges.begin(), edges.end(),
            [](const CausalEdge& a, const CausalEdge& b) { return std::tie(a.source, a.target) < std::tie(b.source, b.target); });
  std::string out = "digraph causality {\n";
  for (const auto& n : nodes) out += "  " + dot_id(n) + ";\n";
  for (const auto& e : edges) {
    char label[64];
    std::snprintf(label, sizeof label, "p=%.4g", e.p_value);
    out += "  " + dot_id(e.source) + " -> " + dot_id(e.target) + " [label=\"" + label + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace hoed
